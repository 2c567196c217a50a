//! Single-source shortest paths: a bounded multi-source recursion running in
//! `O(m log^(2/3) n)` expected time, a binary-heap Dijkstra baseline, and the
//! graph plumbing (CSR graphs, DIMACS `.gr` files, sparse random instances)
//! used to compare them.

pub mod bmssp;
pub mod bounded_queue;
pub mod dijkstra;
pub mod dimacs;
pub mod generator;
pub mod graph;
pub mod select;
pub mod state;
pub mod weight;

pub use bmssp::{compute_params, sssp, sssp_with_stats, Params, Solver, SsspStats};
pub use bounded_queue::{BoundedQueue, Pulled, QueueError};
pub use dijkstra::{bellman_ford_oracle, dijkstra, dijkstra_traced, Dijkstra};
pub use dimacs::{parse_dimacs, read_dimacs_file, write_dimacs, DimacsError};
pub use generator::{generate_sparse_random, GeneratorError, DEFAULT_MAX_WEIGHT};
pub use graph::{build_graph, Graph, GraphError};
pub use select::Selection;
pub use state::{DistanceState, SourceError};
pub use weight::{Dist, TotalF64, Weight};
