//! Reader and writer for the DIMACS shortest-path `.gr` format.
//!
//! ```text
//! c comment
//! p sp <n> <m>
//! a <u> <v> <w>
//! ```
//!
//! Endpoints are 1-based and weights are non-negative integers. Parallel arcs
//! and self-loops are kept as given.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: arc before the problem line")]
    ArcBeforeProblem { line: usize },
    #[error("missing problem line")]
    MissingProblemLine,
    #[error("line {line}: duplicate problem line")]
    DuplicateProblemLine { line: usize },
    #[error("line {line}: arc ({u}, {v}) references a vertex outside 1..={n}")]
    VertexOutOfRange {
        line: usize,
        u: u64,
        v: u64,
        n: usize,
    },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: i64 },
    #[error("problem line declares {declared} arcs but {found} were read")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn malformed(line: usize, reason: impl Into<String>) -> DimacsError {
    DimacsError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn parse_field<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, DimacsError> {
    let token = token.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{token}`")))
}

/// Parses a `.gr` stream into a graph with exactly the declared vertex count.
pub fn parse_dimacs<R: BufRead>(mut reader: R) -> Result<Graph<u64>, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs: Vec<(u32, u32, u64)> = Vec::new();
    let mut buf = String::new();
    let mut line_no = 0usize;

    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let mut tokens = buf.split_ascii_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(DimacsError::DuplicateProblemLine { line: line_no });
                }
                match tokens.next() {
                    Some("sp") => {}
                    other => {
                        return Err(malformed(
                            line_no,
                            format!("expected problem type `sp`, found {other:?}"),
                        ))
                    }
                }
                let n: usize = parse_field(tokens.next(), line_no, "vertex count")?;
                let m: usize = parse_field(tokens.next(), line_no, "arc count")?;
                if tokens.next().is_some() {
                    return Err(malformed(line_no, "trailing tokens on problem line"));
                }
                if n > u32::MAX as usize {
                    return Err(malformed(line_no, "vertex count exceeds 32-bit ids"));
                }
                arcs.reserve(m);
                header = Some((n, m));
            }
            Some("a") => {
                let (n, _) = header.ok_or(DimacsError::ArcBeforeProblem { line: line_no })?;
                let u: u64 = parse_field(tokens.next(), line_no, "tail vertex")?;
                let v: u64 = parse_field(tokens.next(), line_no, "head vertex")?;
                let weight: i64 = parse_field(tokens.next(), line_no, "weight")?;
                if tokens.next().is_some() {
                    return Err(malformed(line_no, "trailing tokens on arc line"));
                }
                if u == 0 || v == 0 || u > n as u64 || v > n as u64 {
                    return Err(DimacsError::VertexOutOfRange {
                        line: line_no,
                        u,
                        v,
                        n,
                    });
                }
                if weight < 0 {
                    return Err(DimacsError::NegativeWeight {
                        line: line_no,
                        weight,
                    });
                }
                arcs.push(((u - 1) as u32, (v - 1) as u32, weight as u64));
            }
            Some(other) => {
                return Err(malformed(line_no, format!("unknown line type `{other}`")));
            }
        }
    }

    let (n, m) = header.ok_or(DimacsError::MissingProblemLine)?;
    if arcs.len() != m {
        return Err(DimacsError::ArcCountMismatch {
            declared: m,
            found: arcs.len(),
        });
    }
    Ok(Graph::from_indexed(n, &arcs))
}

pub fn parse_dimacs_str(text: &str) -> Result<Graph<u64>, DimacsError> {
    parse_dimacs(text.as_bytes())
}

pub fn read_dimacs_file(path: impl AsRef<Path>) -> Result<Graph<u64>, DimacsError> {
    let file = File::open(path)?;
    parse_dimacs(BufReader::with_capacity(1 << 20, file))
}

/// Writes `graph` in `.gr` form, arcs grouped by tail vertex.
pub fn write_dimacs<W: Write>(
    graph: &Graph<u64>,
    mut out: W,
    comment: Option<&str>,
) -> io::Result<()> {
    if let Some(comment) = comment {
        for line in comment.lines() {
            writeln!(out, "c {line}")?;
        }
    }
    writeln!(out, "p sp {} {}", graph.vertex_count(), graph.edge_count())?;
    for (u, v, w) in graph.edges() {
        writeln!(out, "a {u} {v} {w}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use proptest::prelude::*;

    #[test]
    fn minimal_file() {
        let g = parse_dimacs_str("p sp 2 1\na 1 2 5\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2, 5)]);
    }

    #[test]
    fn comments_skipped() {
        let g = parse_dimacs_str("c hello\np sp 1 0\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn keeps_parallel_arcs_and_self_loops() {
        let g = parse_dimacs_str("p sp 2 3\na 1 2 5\na 1 2 3\na 2 2 0\n").unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(1, 2, 5), (1, 2, 3), (2, 2, 0)]
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            parse_dimacs_str("c x\na 1 2 3\n"),
            Err(DimacsError::ArcBeforeProblem { line: 2 })
        ));
        assert!(matches!(
            parse_dimacs_str("c only comments\n"),
            Err(DimacsError::MissingProblemLine)
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 0\np sp 2 0\n"),
            Err(DimacsError::DuplicateProblemLine { line: 2 })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 3 1\n"),
            Err(DimacsError::VertexOutOfRange { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 2 -4\n"),
            Err(DimacsError::NegativeWeight {
                line: 2,
                weight: -4
            })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 2\na 1 2 1\n"),
            Err(DimacsError::ArcCountMismatch {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 x 1\n"),
            Err(DimacsError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p sp 2 1\na 1 2\n"),
            Err(DimacsError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p max 2 1\n"),
            Err(DimacsError::Malformed { line: 1, .. })
        ));
    }

    fn arb_graph() -> impl Strategy<Value = (usize, Vec<(u64, u64, u64)>)> {
        (1usize..40).prop_flat_map(|n| {
            let edge = (1..=n as u64, 1..=n as u64, 0u64..1_000_000);
            (Just(n), prop::collection::vec(edge, 0..120))
        })
    }

    proptest! {
        #[test]
        fn write_then_parse_preserves_graph((n, edges) in arb_graph()) {
            let g = build_graph(n, &edges).unwrap();
            let mut out = Vec::new();
            write_dimacs(&g, &mut out, Some("roundtrip")).unwrap();
            let back = parse_dimacs(out.as_slice()).unwrap();
            prop_assert_eq!(back.vertex_count(), n);
            let mut a: Vec<_> = edges.clone();
            let mut b: Vec<_> = back.edges().collect();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            prop_assert_eq!(back, g);
        }
    }
}
