//! Sparse random digraphs with bounded out-degree, all reachable from vertex 1.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

pub const MAX_OUT_DEGREE: usize = 4;
pub const TARGET_MEAN_OUT_DEGREE: usize = 3;
pub const DEFAULT_MAX_WEIGHT: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex count {0} does not fit in 32-bit vertex ids")]
    TooManyVertices(usize),
    #[error("max weight must be positive")]
    ZeroMaxWeight,
}

/// Generates a digraph on `n` vertices with out-degree at most 4 and about
/// `3n` edges, in which vertex 1 reaches every vertex.
///
/// A random arborescence rooted at vertex 1 is laid down first (every other
/// vertex, in random order, hangs off an earlier vertex with spare capacity),
/// then random extra edges are added until `3n` edges exist or no vertex has
/// capacity left. Self-loops and parallel edges are never produced. Weights are
/// uniform on `1..=max_weight`. The result depends only on the arguments.
pub fn generate_sparse_random(
    n: usize,
    seed: u64,
    max_weight: u64,
) -> Result<Graph<u64>, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::NoVertices);
    }
    if n > u32::MAX as usize {
        return Err(GeneratorError::TooManyVertices(n));
    }
    if max_weight == 0 {
        return Err(GeneratorError::ZeroMaxWeight);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = MAX_OUT_DEGREE.min(n - 1);
    let target_m = TARGET_MEAN_OUT_DEGREE * n;

    let mut heads = vec![[0u32; MAX_OUT_DEGREE]; n];
    let mut degree = vec![0u8; n];
    let mut edges: Vec<(u32, u32, u64)> = Vec::with_capacity(target_m);

    // Vertices with residual out-degree capacity.
    let mut open: Vec<u32> = Vec::with_capacity(n);

    let mut order: Vec<u32> = (1..n as u32).collect();
    order.shuffle(&mut rng);
    if cap > 0 {
        open.push(0);
    }
    for &child in &order {
        let slot = rng.random_range(0..open.len());
        let parent = open[slot] as usize;
        heads[parent][degree[parent] as usize] = child;
        degree[parent] += 1;
        edges.push((parent as u32, child, rng.random_range(1..=max_weight)));
        if degree[parent] as usize == cap {
            open.swap_remove(slot);
        }
        open.push(child);
    }

    while edges.len() < target_m && !open.is_empty() {
        let slot = rng.random_range(0..open.len());
        let u = open[slot] as usize;
        let v = rng.random_range(0..n as u32);
        let d = degree[u] as usize;
        if v as usize == u || heads[u][..d].contains(&v) {
            continue;
        }
        heads[u][d] = v;
        degree[u] += 1;
        edges.push((u as u32, v, rng.random_range(1..=max_weight)));
        if degree[u] as usize == cap {
            open.swap_remove(slot);
        }
    }

    Ok(Graph::from_indexed(n, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn reached_from_first(g: &Graph<u64>) -> usize {
        let mut seen = vec![false; g.vertex_count()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.out_edges(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count
    }

    #[test]
    fn single_vertex() {
        let g = generate_sparse_random(1, 99, 10).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(
            generate_sparse_random(0, 1, 10),
            Err(GeneratorError::NoVertices)
        );
        assert_eq!(
            generate_sparse_random(5, 1, 0),
            Err(GeneratorError::ZeroMaxWeight)
        );
    }

    #[test]
    fn n128_statistics() {
        let g = generate_sparse_random(128, 42, DEFAULT_MAX_WEIGHT).unwrap();
        assert!(
            (346..=410).contains(&g.edge_count()),
            "m = {}",
            g.edge_count()
        );
        assert_eq!(reached_from_first(&g), 128);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_sparse_random(1024, 7, 1000).unwrap();
        let b = generate_sparse_random(1024, 7, 1000).unwrap();
        assert_eq!(a, b);
        let c = generate_sparse_random(1024, 8, 1000).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn tiny_graphs_stay_simple_and_connected() {
        for n in 1..12 {
            for seed in 0..10 {
                let g = generate_sparse_random(n, seed, 5).unwrap();
                assert_eq!(reached_from_first(&g), n);
                let mut seen = HashSet::new();
                for (u, v, w) in g.edges() {
                    assert_ne!(u, v);
                    assert!(seen.insert((u, v)));
                    assert!((1..=5).contains(&w));
                }
                assert!((0..n).all(|v| g.out_degree(v) <= MAX_OUT_DEGREE));
            }
        }
    }

    #[test]
    fn postconditions_over_sizes_and_seeds() {
        for p in 7..=14 {
            let n = 1usize << p;
            for seed in 0..20 {
                let g = generate_sparse_random(n, seed, DEFAULT_MAX_WEIGHT).unwrap();
                assert!((0..n).all(|v| g.out_degree(v) <= MAX_OUT_DEGREE));
                assert!(g.edge_count().abs_diff(3 * n) <= n / 10);
                assert_eq!(reached_from_first(&g), n);
            }
        }
    }
}
