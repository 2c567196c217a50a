//! Repeated, interleaved timing of both algorithms on a list of instances.

use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use bmssp_core::{
    generate_sparse_random, read_dimacs_file, Dijkstra, DimacsError, DistanceState, GeneratorError,
    Graph, Solver, SourceError,
};
use thiserror::Error;

use crate::record::{BenchRecord, ChecksumMismatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    Dijkstra,
    Bmssp,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::Bmssp => "bmssp",
        })
    }
}

/// Where an instance comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSource {
    Dimacs(PathBuf),
    Generated {
        n: usize,
        seed: u64,
        max_weight: u64,
    },
}

impl GraphSource {
    pub fn label(&self) -> String {
        match self {
            GraphSource::Dimacs(path) => path.file_name().map_or_else(
                || path.display().to_string(),
                |f| f.to_string_lossy().into_owned(),
            ),
            GraphSource::Generated { n, seed, .. } => format!("random-n{n}-s{seed}"),
        }
    }

    pub fn load(&self) -> Result<Graph<u64>, BenchError> {
        match self {
            GraphSource::Dimacs(path) => {
                read_dimacs_file(path).map_err(|source| BenchError::Dimacs {
                    path: path.clone(),
                    source,
                })
            }
            GraphSource::Generated {
                n,
                seed,
                max_weight,
            } => Ok(generate_sparse_random(*n, *seed, *max_weight)?),
        }
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Dimacs { path: PathBuf, source: DimacsError },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error("repetitions must be at least 1")]
    NoRepetitions,
}

impl BenchError {
    /// True for failures to read an input file.
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            BenchError::Dimacs {
                source: DimacsError::Io(_),
                ..
            }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchOptions {
    pub repetitions: u32,
    /// 1-based source vertex.
    pub source: usize,
    /// Run each algorithm once, untimed, before the timed runs.
    pub warmup: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            repetitions: 5,
            source: 1,
            warmup: false,
        }
    }
}

/// Runs `algorithm` once. Working memory is allocated before the clock
/// starts; the returned duration covers the search only.
pub fn time_once(
    graph: &Graph<u64>,
    algorithm: Algorithm,
    source: usize,
) -> Result<(Duration, DistanceState<u64>), SourceError> {
    Ok(match algorithm {
        Algorithm::Dijkstra => {
            let prepared = Dijkstra::new(graph, source)?;
            let start = Instant::now();
            let state = prepared.run();
            (start.elapsed(), state)
        }
        Algorithm::Bmssp => {
            let prepared = Solver::new(graph, source)?;
            let start = Instant::now();
            let (state, _) = prepared.run();
            (start.elapsed(), state)
        }
    })
}

/// Times both algorithms on one loaded graph, alternating runs.
pub fn bench_graph(
    instance: &str,
    graph: &Graph<u64>,
    options: &BenchOptions,
) -> Result<BenchRecord, BenchError> {
    if options.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    if options.warmup {
        time_once(graph, Algorithm::Dijkstra, options.source)?;
        time_once(graph, Algorithm::Bmssp, options.source)?;
    }
    let mut total = [Duration::ZERO; 2];
    let mut checksum = None;
    let mut mismatch = None;
    for _ in 0..options.repetitions {
        let (td, dijkstra) = time_once(graph, Algorithm::Dijkstra, options.source)?;
        let (tb, bmssp) = time_once(graph, Algorithm::Bmssp, options.source)?;
        total[0] += td;
        total[1] += tb;
        let (cd, cb) = (dijkstra.checksum(), bmssp.checksum());
        if cd != cb && mismatch.is_none() {
            mismatch = Some(ChecksumMismatch {
                dijkstra: cd,
                bmssp: cb,
            });
        }
        checksum.get_or_insert(cd);
    }
    let mean_ms = |d: Duration| d.as_secs_f64() * 1e3 / f64::from(options.repetitions);
    Ok(BenchRecord::new(
        instance,
        graph.vertex_count(),
        graph.edge_count(),
        mean_ms(total[0]),
        mean_ms(total[1]),
        options.repetitions,
        checksum.unwrap_or(0),
        mismatch,
    ))
}

/// One record per source, in order. A failing instance yields an error in
/// its slot and the batch continues.
pub fn run_benchmark(
    sources: &[GraphSource],
    options: &BenchOptions,
) -> Vec<Result<BenchRecord, BenchError>> {
    sources
        .iter()
        .map(|source| {
            let graph = source.load()?;
            bench_graph(&source.label(), &graph, options)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generated(n: usize, seed: u64) -> GraphSource {
        GraphSource::Generated {
            n,
            seed,
            max_weight: bmssp_core::DEFAULT_MAX_WEIGHT,
        }
    }

    #[test]
    fn generated_instance_checksums_agree() {
        let records = run_benchmark(&[generated(1 << 10, 3)], &BenchOptions::default());
        let r = records[0].as_ref().unwrap();
        assert!(r.is_valid());
        assert_eq!((r.n, r.repetitions), (1024, 5));
        assert!(r.ratio > 0.0);
        let g = generated(1 << 10, 3).load().unwrap();
        assert_eq!(r.checksum, bmssp_core::dijkstra(&g, 1).unwrap().checksum());
        assert_eq!(r.m, g.edge_count());
    }

    #[test]
    fn missing_file_does_not_abort_batch() {
        let sources = [
            GraphSource::Dimacs("/nonexistent/x.gr".into()),
            generated(128, 1),
        ];
        let out = run_benchmark(
            &sources,
            &BenchOptions {
                repetitions: 1,
                ..Default::default()
            },
        );
        assert!(out[0].as_ref().unwrap_err().is_io());
        assert!(out[1].is_ok());
    }

    #[test]
    fn zero_repetitions_rejected() {
        let out = run_benchmark(
            &[generated(8, 1)],
            &BenchOptions {
                repetitions: 0,
                ..Default::default()
            },
        );
        assert!(matches!(out[0], Err(BenchError::NoRepetitions)));
    }

    #[test]
    fn bad_source_vertex() {
        let out = run_benchmark(
            &[generated(8, 1)],
            &BenchOptions {
                source: 9,
                ..Default::default()
            },
        );
        assert!(matches!(out[0], Err(BenchError::Source(_))));
    }

    #[test]
    fn warmup_and_labels() {
        let opts = BenchOptions {
            repetitions: 2,
            source: 1,
            warmup: true,
        };
        let r = run_benchmark(&[generated(64, 9)], &opts)
            .pop()
            .unwrap()
            .unwrap();
        assert_eq!(r.instance, "random-n64-s9");
        assert_eq!(
            GraphSource::Dimacs("data/USA-road-d.NY.gr".into()).label(),
            "USA-road-d.NY.gr"
        );
    }
}
