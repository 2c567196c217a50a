use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::bounded_queue::BoundedQueue;
use crate::graph::Graph;
use crate::select::Selection;
use crate::state::{DistanceState, SourceError};
use crate::weight::{Dist, Weight};

use super::params::Params;
use super::{BoundedResult, PathBound, PathKey, PivotResult, SsspStats, NO_PRED};

/// Mutable state of one BMSSP run over a borrowed graph.
///
/// Public methods take and return 1-based vertex ids; everything else works on
/// zero-based `u32` indices.
#[derive(Debug)]
pub struct Solver<'g, W> {
    graph: &'g Graph<W>,
    params: Params,
    selection: Selection,
    dist: Vec<Option<W>>,
    hops: Vec<u32>,
    pred: Vec<u32>,
    complete: Vec<bool>,
    source: usize,
    stats: SsspStats,
}

impl<'g, W: Weight> Solver<'g, W> {
    /// A solver with only `source` (1-based) reached, at distance zero.
    pub fn new(graph: &'g Graph<W>, source: usize) -> Result<Self, SourceError> {
        let n = graph.vertex_count();
        let Some(index) = graph.index_of(source) else {
            return Err(SourceError::OutOfRange { vertex: source, n });
        };
        let params = super::compute_params(n).expect("source exists, so n >= 1");
        let mut dist = vec![None; n];
        dist[index] = Some(W::ZERO);
        Ok(Self {
            graph,
            params,
            selection: Selection::default(),
            dist,
            hops: vec![0; n],
            pred: vec![NO_PRED; n],
            complete: vec![false; n],
            source,
            stats: SsspStats::default(),
        })
    }

    /// Overrides the derived parameters (for tests and experiments).
    pub fn with_params(mut self, k: usize, t: usize, l_max: usize) -> Self {
        assert!(
            k >= 1 && t >= 1 && l_max >= 1,
            "parameters must be positive"
        );
        self.params = Params {
            n: self.params.n,
            k,
            t,
            l_max,
        };
        self
    }

    pub fn with_selection(mut self, selection: Selection) -> Self {
        self.selection = selection;
        self
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn stats(&self) -> SsspStats {
        self.stats
    }

    /// Label of a 1-based vertex, if reached.
    pub fn key_of(&self, vertex: usize) -> Option<PathKey<W>> {
        self.key(vertex as u32 - 1)
    }

    pub fn distance(&self, vertex: usize) -> Dist<W> {
        self.dist[vertex - 1].map_or(Dist::Infinite, Dist::Finite)
    }

    pub fn is_complete(&self, vertex: usize) -> bool {
        self.complete[vertex - 1]
    }

    /// Runs the full single-source computation and returns the final state.
    ///
    /// The top-level call uses level `l_max`, bound infinity and the source.
    /// Should it stop early, it is re-invoked on every reached but incomplete
    /// vertex until it returns an infinite bound.
    pub fn run(mut self) -> (DistanceState<W>, SsspStats) {
        let l_max = self.params.l_max;
        let mut frontier = vec![self.source as u32 - 1];
        loop {
            let (bound, _) = self.bmssp_at(l_max, Dist::Infinite, &frontier, 0);
            if bound == Dist::Infinite {
                break;
            }
            self.stats.restarts += 1;
            frontier = (0..self.dist.len() as u32)
                .filter(|&v| self.dist[v as usize].is_some() && !self.complete[v as usize])
                .collect();
            if frontier.is_empty() {
                break;
            }
        }
        self.into_state()
    }

    fn into_state(self) -> (DistanceState<W>, SsspStats) {
        let mut state = DistanceState::new(self.dist.len(), self.source).expect("validated source");
        for (slot, d) in state.dist.iter_mut().zip(&self.dist) {
            *slot = d.map_or(Dist::Infinite, Dist::Finite);
        }
        state.complete = self.complete;
        (state, self.stats)
    }

    /// Pivot finding with bound `bound` from 1-based `sources`.
    pub fn find_pivots(&mut self, bound: PathBound<W>, sources: &[usize]) -> PivotResult {
        let sources: Vec<u32> = sources.iter().map(|&v| v as u32 - 1).collect();
        let (pivots, working, early_exit) = self.pivots(bound, &sources);
        PivotResult {
            pivots: pivots.into_iter().map(|v| v as usize + 1).collect(),
            working: working.into_iter().map(|v| v as usize + 1).collect(),
            early_exit,
        }
    }

    /// Truncated Dijkstra from the single 1-based vertex `x`.
    pub fn base_case(&mut self, bound: PathBound<W>, x: usize) -> BoundedResult<W> {
        assert!(
            self.bound_of(x as u32 - 1) < bound,
            "source must be reached and below the bound"
        );
        let (bound, completed) = self.base(bound, x as u32 - 1);
        BoundedResult::from_indices(bound, completed)
    }

    /// One bounded multi-source call at `level` from 1-based `sources`.
    pub fn bmssp(
        &mut self,
        level: usize,
        bound: PathBound<W>,
        sources: &[usize],
    ) -> BoundedResult<W> {
        assert!(level <= self.params.l_max, "level above l_max");
        assert!(
            sources.len() <= self.params.level_capacity(level),
            "too many sources for level {level}"
        );
        let sources: Vec<u32> = sources.iter().map(|&v| v as u32 - 1).collect();
        assert!(
            sources.iter().all(|&s| self.bound_of(s) < bound),
            "every source must be reached and below the bound"
        );
        let (bound, completed) = self.bmssp_at(level, bound, &sources, 0);
        BoundedResult::from_indices(bound, completed)
    }

    #[inline]
    fn key(&self, v: u32) -> Option<PathKey<W>> {
        let i = v as usize;
        self.dist[i].map(|dist| PathKey {
            dist,
            hops: self.hops[i],
            vertex: v,
            pred: self.pred[i],
        })
    }

    #[inline]
    fn bound_of(&self, v: u32) -> PathBound<W> {
        self.key(v).map_or(Dist::Infinite, Dist::Finite)
    }

    /// Relaxes `u -> v`. Accepts when the extended path is no worse than the
    /// current label of `v` in the path order (equal labels are re-accepted),
    /// and returns the candidate label if so.
    #[inline]
    fn relax(&mut self, u: u32, v: u32, w: W) -> Option<PathKey<W>> {
        self.stats.relaxations += 1;
        let ui = u as usize;
        let du = self.dist[ui].expect("relaxing from an unreached vertex");
        let candidate = PathKey {
            dist: du.add(w),
            hops: self.hops[ui] + 1,
            vertex: v,
            pred: u,
        };
        if Dist::Finite(candidate) <= self.bound_of(v) {
            debug_assert!(!self.complete[v as usize] || self.key(v) == Some(candidate));
            let vi = v as usize;
            self.dist[vi] = Some(candidate.dist);
            self.hops[vi] = candidate.hops;
            self.pred[vi] = u;
            Some(candidate)
        } else {
            None
        }
    }

    fn pivots(&mut self, bound: PathBound<W>, sources: &[u32]) -> (Vec<u32>, Vec<u32>, bool) {
        self.stats.find_pivots_calls += 1;
        debug_assert!(sources.iter().all(|&s| self.bound_of(s) < bound));
        let k = self.params.k;
        let mut in_working: HashSet<u32> = sources.iter().copied().collect();
        let mut working: Vec<u32> = sources.to_vec();
        let mut layer: Vec<u32> = sources.to_vec();

        for _ in 0..k {
            let mut next_set: HashSet<u32> = HashSet::new();
            let mut next = Vec::new();
            for &u in &layer {
                for (v, w) in self.graph.out_edges(u as usize) {
                    let v = v as u32;
                    if let Some(c) = self.relax(u, v, w) {
                        if Dist::Finite(c) < bound && next_set.insert(v) {
                            next.push(v);
                        }
                    }
                }
            }
            for &v in &next {
                if in_working.insert(v) {
                    working.push(v);
                }
            }
            if working.len() > k * sources.len() {
                return (sources.to_vec(), working, true);
            }
            layer = next;
        }

        // Forest of tight edges inside the working set: v hangs below u when
        // its current label was produced by the edge u -> v.
        let mut children: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut has_parent: HashSet<u32> = HashSet::new();
        for &u in &working {
            let Some(ku) = self.key(u) else { continue };
            for (v, w) in self.graph.out_edges(u as usize) {
                let v = v as u32;
                if self.pred[v as usize] != u || !in_working.contains(&v) || has_parent.contains(&v)
                {
                    continue;
                }
                let kv = self.key(v).expect("in working set");
                if kv.dist == ku.dist.add(w) && kv.hops == ku.hops + 1 {
                    has_parent.insert(v);
                    children.entry(u).or_default().push(v);
                }
            }
        }

        let mut pivots = Vec::new();
        for &s in sources {
            if has_parent.contains(&s) {
                continue;
            }
            let mut size = 0usize;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                size += 1;
                if size >= k {
                    break;
                }
                if let Some(cs) = children.get(&x) {
                    stack.extend_from_slice(cs);
                }
            }
            if size >= k {
                pivots.push(s);
            }
        }
        (pivots, working, false)
    }

    fn base(&mut self, bound: PathBound<W>, x: u32) -> (PathBound<W>, Vec<u32>) {
        self.stats.base_cases += 1;
        let start = self.key(x).expect("base case source must be reached");
        debug_assert!(Dist::Finite(start) < bound);
        let budget = self.params.k + 1;
        let mut settled: Vec<u32> = Vec::with_capacity(budget);
        let mut heap = BinaryHeap::from([Reverse(start)]);

        while settled.len() < budget {
            let Some(Reverse(top)) = heap.pop() else {
                break;
            };
            let u = top.vertex;
            if self.key(u) != Some(top) || settled.contains(&u) {
                continue;
            }
            settled.push(u);
            let ku = self.key(u).expect("settled vertex reached");
            for (v, w) in self.graph.out_edges(u as usize) {
                let v = v as u32;
                let candidate = Dist::Finite(PathKey {
                    dist: ku.dist.add(w),
                    hops: ku.hops + 1,
                    vertex: v,
                    pred: u,
                });
                if candidate >= bound {
                    self.stats.relaxations += 1;
                    continue;
                }
                if let Some(c) = self.relax(u, v, w) {
                    if !settled.contains(&v) {
                        heap.push(Reverse(c));
                    }
                }
            }
        }

        let (bound, completed) = if settled.len() < budget {
            (bound, settled)
        } else {
            let top = settled
                .iter()
                .map(|&v| self.key(v).expect("settled"))
                .max()
                .expect("non-empty");
            let below: Vec<u32> = settled
                .into_iter()
                .filter(|&v| self.key(v).expect("settled") < top)
                .collect();
            (Dist::Finite(top), below)
        };
        for &v in &completed {
            self.complete[v as usize] = true;
        }
        (bound, completed)
    }

    fn bmssp_at(
        &mut self,
        level: usize,
        bound: PathBound<W>,
        sources: &[u32],
        depth: usize,
    ) -> (PathBound<W>, Vec<u32>) {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if sources.is_empty() {
            return (bound, Vec::new());
        }
        if level == 0 {
            debug_assert_eq!(sources.len(), 1);
            return self.base(bound, sources[0]);
        }

        let (pivots, working, _) = self.pivots(bound, sources);
        let mut queue =
            BoundedQueue::with_selection(self.params.batch_size(level), bound, self.selection)
                .expect("batch size is positive");
        let mut last_inner = Dist::Infinite;
        for &p in &pivots {
            let kp = self.key(p).expect("pivot reached");
            last_inner = last_inner.min(Dist::Finite(kp));
            queue.insert(p, kp).expect("pivot below bound");
        }

        let limit = self.params.completion_limit(level);
        let mut completed: Vec<u32> = Vec::new();
        let mut in_completed: HashSet<u32> = HashSet::new();

        while completed.len() < limit && !queue.is_empty() {
            self.stats.pulls += 1;
            let pulled = queue.pull();
            let pulled_bound = pulled.bound;
            let (inner_bound, inner) =
                self.bmssp_at(level - 1, pulled_bound, &pulled.keys, depth + 1);
            last_inner = inner_bound;

            let mut prepend = Vec::new();
            for &u in &inner {
                if in_completed.insert(u) {
                    completed.push(u);
                }
                for (v, w) in self.graph.out_edges(u as usize) {
                    let Some(c) = self.relax(u, v as u32, w) else {
                        continue;
                    };
                    let cb = Dist::Finite(c);
                    if cb >= pulled_bound && cb < bound {
                        queue.insert(c.vertex, c).expect("checked below bound");
                    } else if cb >= inner_bound && cb < pulled_bound {
                        prepend.push((c.vertex, c));
                    }
                }
            }
            for &x in &pulled.keys {
                let kx = self.key(x).expect("pulled vertex reached");
                let bx = Dist::Finite(kx);
                if bx >= inner_bound && bx < pulled_bound {
                    prepend.push((x, kx));
                }
            }
            queue.batch_prepend(prepend);
        }

        if completed.len() >= limit {
            self.stats.partial_returns += 1;
        }
        let result_bound = last_inner.min(bound);
        for &w in &working {
            if self.bound_of(w) < result_bound && in_completed.insert(w) {
                completed.push(w);
            }
        }
        for &v in &completed {
            self.complete[v as usize] = true;
        }
        (result_bound, completed)
    }
}
