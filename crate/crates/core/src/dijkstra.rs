//! Binary-heap Dijkstra baseline and a Bellman-Ford reference.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Graph;
use crate::state::{DistanceState, SourceError};
use crate::weight::{Dist, Weight};

/// Dijkstra with a binary heap and lazy deletion: an improved vertex is pushed
/// again and stale heap entries are skipped when popped.
pub fn dijkstra<W: Weight>(
    graph: &Graph<W>,
    source: usize,
) -> Result<DistanceState<W>, SourceError> {
    Ok(Dijkstra::new(graph, source)?.run())
}

/// Like [`dijkstra`], calling `on_settle(vertex, distance)` as each vertex is
/// finalized (1-based vertex ids).
pub fn dijkstra_traced<W: Weight>(
    graph: &Graph<W>,
    source: usize,
    on_settle: impl FnMut(usize, W),
) -> Result<DistanceState<W>, SourceError> {
    Ok(Dijkstra::new(graph, source)?.run_traced(on_settle))
}

/// A Dijkstra run with its working memory allocated up front, so that
/// [`Dijkstra::run`] measures only the search.
pub struct Dijkstra<'g, W> {
    graph: &'g Graph<W>,
    state: DistanceState<W>,
    dist: Vec<Option<W>>,
    heap: BinaryHeap<Reverse<(W, u32)>>,
}

impl<'g, W: Weight> Dijkstra<'g, W> {
    pub fn new(graph: &'g Graph<W>, source: usize) -> Result<Self, SourceError> {
        let n = graph.vertex_count();
        let state = DistanceState::new(n, source)?;
        let mut dist = vec![None; n];
        dist[source - 1] = Some(W::ZERO);
        let mut heap = BinaryHeap::with_capacity(n);
        heap.push(Reverse((W::ZERO, (source - 1) as u32)));
        Ok(Self {
            graph,
            state,
            dist,
            heap,
        })
    }

    pub fn run(self) -> DistanceState<W> {
        self.run_traced(|_, _| {})
    }

    pub fn run_traced(self, mut on_settle: impl FnMut(usize, W)) -> DistanceState<W> {
        let Self {
            graph,
            mut state,
            mut dist,
            mut heap,
        } = self;
        while let Some(Reverse((d, u))) = heap.pop() {
            let u = u as usize;
            if state.complete[u] {
                continue;
            }
            state.complete[u] = true;
            on_settle(u + 1, d);
            for (v, w) in graph.out_edges(u) {
                let candidate = d.add(w);
                if dist[v].is_none_or(|old| candidate < old) {
                    dist[v] = Some(candidate);
                    heap.push(Reverse((candidate, v as u32)));
                }
            }
        }

        for (slot, d) in state.dist.iter_mut().zip(dist) {
            *slot = d.map_or(Dist::Infinite, Dist::Finite);
        }
        state
    }
}

/// Reference distances from `n - 1` rounds of relaxing every edge. Quadratic;
/// meant for checking other implementations on small graphs.
pub fn bellman_ford_oracle<W: Weight>(
    graph: &Graph<W>,
    source: usize,
) -> Result<DistanceState<W>, SourceError> {
    let n = graph.vertex_count();
    let mut state = DistanceState::<W>::new(n, source)?;
    for _ in 1..n {
        let mut changed = false;
        for u in 0..n {
            let Dist::Finite(du) = state.dist[u] else {
                continue;
            };
            for (v, w) in graph.out_edges(u) {
                let candidate = Dist::Finite(du.add(w));
                if candidate < state.dist[v] {
                    state.dist[v] = candidate;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (flag, d) in state.complete.iter_mut().zip(&state.dist) {
        *flag = d.is_finite();
    }
    Ok(state)
}
