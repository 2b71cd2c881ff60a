//! Closeness-centrality rank estimation.
//!
//! The classical way to rank a node by closeness computes every node's
//! closeness (one BFS per node, O(n·m)) and compares. This crate also
//! estimates the rank from the node's own closeness plus a logistic model of
//! rank versus closeness whose midpoint is estimated with a handful of
//! traversals:
//!
//! - [`ranking::heuristic_estimate`]: three traversals, midpoint between the
//!   hub's closeness and that of a node on the hub's outermost BFS level.
//! - [`ranking::randomized_estimate`]: `k + 1` traversals, midpoint as the
//!   mean closeness of `k` sampled nodes.
//! - [`curvefit::fit_logistic`]: the least-squares curve, as a baseline.
//!
//! [`eval`] measures all of them against the exact ranking.

pub mod cli;
pub mod curvefit;
pub mod error;
pub mod eval;
pub mod graph;
pub mod ranking;
pub mod rng;
pub mod synth;
pub mod traversal;

pub use error::{Error, Result};
pub use graph::{largest_connected_component, parse_edge_list, read_edge_list_file, Graph};
pub use ranking::{LogisticParams, Method, RankEstimate, DEFAULT_SLOPE};
