//! Multiobjective shortest paths by label correcting, with tree-deletion
//! pruning, plus everything needed to benchmark it: seeded instance
//! generators, a plain-text graph format, a brute-force verification
//! oracle, and paired statistics.
//!
//! The solver enumerates the full Pareto front of an s-t query: every cost
//! vector that no other path beats componentwise, with one representative
//! path each. Two search strategies are implemented — label selection (a
//! FIFO queue of labels) and node selection (a FIFO ring of nodes whose
//! label batches move together) — and each can optionally delete the whole
//! descendant tree of a dominated label instead of leaving the obsolete
//! subtree to be discovered one label at a time.
//!
//! ```
//! use mosp::{solve, Graph, SolverOptions};
//!
//! // Two routes from 0 to 2: direct (2,2), or via 1 totalling (3,1).
//! let graph = Graph::build(
//!     3,
//!     2,
//!     &[
//!         (0, 2, vec![2, 2]),
//!         (0, 1, vec![1, 1]),
//!         (1, 2, vec![2, 0]),
//!     ],
//! )
//! .unwrap();
//! let (front, metrics) = solve(&graph, 0, 2, &SolverOptions::label_selection()).unwrap();
//! let costs: Vec<_> = front.points.iter().map(|p| p.cost.clone()).collect();
//! assert_eq!(costs, vec![vec![2, 2], vec![3, 1]]);
//! assert_eq!(metrics.front_size, 2);
//! ```
//!
//! The `examples/` directory walks through each capability: solving and
//! inspecting fronts, generating instance families, verifying against the
//! oracle, correlated cost sampling, obsolete-work measurement, the
//! Wilcoxon test, and the full manifest-driven benchmark pipeline. The
//! same pipeline is scriptable through the `mosp-bench` binary.

pub mod bench;
pub mod gen;
pub mod graph;
pub mod io;
pub mod labeling;
mod numeric;
pub mod oracle;
pub mod stats;

pub use graph::{Cost, Graph, GraphError};
pub use labeling::{
    solve, ParetoPoint, ParetoResult, QueuePolicy, RunMetrics, SolveError, SolverOptions,
    Strategy,
};
