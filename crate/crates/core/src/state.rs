use thiserror::Error;

use crate::weight::{Dist, Weight};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SourceError {
    #[error("source vertex {vertex} outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
}

/// Per-vertex tentative distances and completion flags from one source.
///
/// Vertex ids are 1-based in the accessors; [`DistanceState::distances`]
/// exposes the underlying zero-based slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceState<W> {
    pub(crate) dist: Vec<Dist<W>>,
    pub(crate) complete: Vec<bool>,
    source: usize,
}

impl<W: Weight> DistanceState<W> {
    /// Fresh state for a graph of `n` vertices; `source` must be in `1..=n`.
    pub fn new(n: usize, source: usize) -> Result<Self, SourceError> {
        if source == 0 || source > n {
            return Err(SourceError::OutOfRange { vertex: source, n });
        }
        let mut dist = vec![Dist::Infinite; n];
        dist[source - 1] = Dist::Finite(W::ZERO);
        Ok(Self {
            dist,
            complete: vec![false; n],
            source,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn dist(&self, vertex: usize) -> Dist<W> {
        self.dist[vertex - 1]
    }

    pub fn is_complete(&self, vertex: usize) -> bool {
        self.complete[vertex - 1]
    }

    pub fn distances(&self) -> &[Dist<W>] {
        &self.dist
    }

    pub fn reached(&self) -> usize {
        self.dist.iter().filter(|d| d.is_finite()).count()
    }
}

impl DistanceState<u64> {
    /// Wrapping sum of all finite distances.
    pub fn checksum(&self) -> u64 {
        self.dist
            .iter()
            .filter_map(|d| d.finite())
            .fold(0u64, |acc, d| acc.wrapping_add(d))
    }
}
