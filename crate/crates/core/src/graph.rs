//! Immutable directed graphs in compressed sparse row form.
//!
//! Vertices are numbered `1..=n` at every external boundary (edge lists,
//! DIMACS files, algorithm sources). Internally a vertex is stored at index
//! `v - 1`; [`Graph::out_edges`] and the other index-based accessors use that
//! zero-based index.

use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index}: endpoint ({u}, {v}) outside 1..={n}")]
    EndpointOutOfRange {
        index: usize,
        u: u64,
        v: u64,
        n: usize,
    },
    #[error("edge {index}: negative weight")]
    NegativeWeight { index: usize },
    #[error("vertex count {0} does not fit in 32-bit vertex ids")]
    TooManyVertices(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph<W = u64> {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<W>,
}

impl<W: Weight> Graph<W> {
    /// Builds a graph from 1-based `(u, v, w)` triples.
    ///
    /// Out-edges are grouped by source; the relative order of each vertex's
    /// out-edges follows the input order.
    pub fn from_edges(n: usize, edges: &[(u64, u64, W)]) -> Result<Self, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut zero_based = Vec::with_capacity(edges.len());
        for (index, &(u, v, w)) in edges.iter().enumerate() {
            let in_range = |x: u64| x >= 1 && x <= n as u64;
            if !in_range(u) || !in_range(v) {
                return Err(GraphError::EndpointOutOfRange { index, u, v, n });
            }
            if w < W::ZERO {
                return Err(GraphError::NegativeWeight { index });
            }
            zero_based.push(((u - 1) as u32, (v - 1) as u32, w));
        }
        Ok(Self::from_indexed(n, &zero_based))
    }

    /// Builds from already validated zero-based triples with a stable counting sort.
    pub(crate) fn from_indexed(n: usize, edges: &[(u32, u32, W)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in edges {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; edges.len()];
        let mut weights = vec![W::ZERO; edges.len()];
        for &(u, v, w) in edges {
            let slot = &mut cursor[u as usize];
            targets[*slot] = v;
            weights[*slot] = w;
            *slot += 1;
        }
        Self {
            offsets,
            targets,
            weights,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Out-edges of the vertex at zero-based `index`, as `(target index, weight)`.
    #[inline]
    pub fn out_edges(&self, index: usize) -> impl ExactSizeIterator<Item = (usize, W)> + '_ {
        let range = self.offsets[index]..self.offsets[index + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.weights[range])
            .map(|(&v, &w)| (v as usize, w))
    }

    #[inline]
    pub fn out_degree(&self, index: usize) -> usize {
        self.offsets[index + 1] - self.offsets[index]
    }

    /// All edges as 1-based `(u, v, w)` triples, grouped by source.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64, W)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.out_edges(u)
                .map(move |(v, w)| (u as u64 + 1, v as u64 + 1, w))
        })
    }

    /// Checks a 1-based vertex id and converts it to an index.
    pub fn index_of(&self, vertex: usize) -> Option<usize> {
        (1..=self.vertex_count())
            .contains(&vertex)
            .then(|| vertex - 1)
    }
}

/// Builds a graph from 1-based `(u, v, w)` edges.
pub fn build_graph<W: Weight>(n: usize, edges: &[(u64, u64, W)]) -> Result<Graph<W>, GraphError> {
    Graph::from_edges(n, edges)
}
