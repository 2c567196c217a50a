//! Bounded multi-source shortest paths.
//!
//! A call `bmssp(l, B, S)` completes every vertex whose shortest path from
//! the source set `S` is below `B`, or, if level `l` has already completed
//! `k * 2^(l t)` vertices, stops at a tighter bound `B' < B`. Each level
//! shrinks `S` to a pivot set with `k` Bellman-Ford style rounds, feeds the
//! pivots into a [`BoundedQueue`](crate::bounded_queue::BoundedQueue), and
//! recurses on batches pulled from it. Level 0 is a truncated Dijkstra.
//!
//! Paths are compared in a strict total order: length, then hop count, then
//! endpoint, then predecessor (see [`PathKey`]). With that order no two
//! vertices ever share a label, so pivot forests and separating bounds are
//! well defined even with zero-weight edges and equal path lengths. All
//! bounds are labels in this order; [`weight_bound`] converts a plain
//! distance bound.
//!
//! Membership and dedup sets are hash-based, so running time bounds hold in
//! expectation.

mod params;
mod solver;

pub use params::{compute_params, EmptyGraph, Params};
pub use solver::Solver;

use crate::graph::Graph;
use crate::state::{DistanceState, SourceError};
use crate::weight::{Dist, Weight};

pub(crate) const NO_PRED: u32 = u32::MAX;

/// Label of the best known path to `vertex`, ordered lexicographically by
/// `(dist, hops, vertex, pred)`. `pred` is `u32::MAX` for the source.
/// Vertex indices here are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey<W> {
    pub dist: W,
    pub hops: u32,
    pub vertex: u32,
    pub pred: u32,
}

/// An upper bound on path labels; `Infinite` is unbounded.
pub type PathBound<W> = Dist<PathKey<W>>;

/// The label bound equivalent to "distance `< w`".
pub fn weight_bound<W: Weight>(w: Dist<W>) -> PathBound<W> {
    match w {
        Dist::Finite(dist) => Dist::Finite(PathKey {
            dist,
            hops: 0,
            vertex: 0,
            pred: 0,
        }),
        Dist::Infinite => Dist::Infinite,
    }
}

/// Outcome of a bounded call: every vertex in `completed` has its true
/// distance and a label below `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedResult<W> {
    pub bound: PathBound<W>,
    /// 1-based vertex ids.
    pub completed: Vec<usize>,
}

impl<W: Weight> BoundedResult<W> {
    fn from_indices(bound: PathBound<W>, completed: Vec<u32>) -> Self {
        Self {
            bound,
            completed: completed.into_iter().map(|v| v as usize + 1).collect(),
        }
    }

    /// Path length of the returned bound.
    pub fn bound_distance(&self) -> Dist<W> {
        match self.bound {
            Dist::Finite(key) => Dist::Finite(key.dist),
            Dist::Infinite => Dist::Infinite,
        }
    }
}

/// Outcome of pivot finding (1-based vertex ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotResult {
    pub pivots: Vec<usize>,
    pub working: Vec<usize>,
    /// The working set outgrew `k * |S|` and every source was kept.
    pub early_exit: bool,
}

/// Work counters for one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SsspStats {
    /// Edge relaxations attempted, across every phase.
    pub relaxations: u64,
    pub find_pivots_calls: u64,
    pub base_cases: u64,
    pub pulls: u64,
    /// Recursion depth below the top-level call.
    pub max_depth: usize,
    /// Calls that stopped at the completion limit with a tightened bound.
    pub partial_returns: u64,
    /// Extra top-level calls after a partial top-level result.
    pub restarts: u64,
}

/// Single-source distances from `source` (1-based).
pub fn sssp<W: Weight>(graph: &Graph<W>, source: usize) -> Result<DistanceState<W>, SourceError> {
    sssp_with_stats(graph, source).map(|(state, _)| state)
}

pub fn sssp_with_stats<W: Weight>(
    graph: &Graph<W>,
    source: usize,
) -> Result<(DistanceState<W>, SsspStats), SourceError> {
    Ok(Solver::new(graph, source)?.run())
}
