//! Label-correcting search for the full set of Pareto-optimal s-t paths.
//!
//! Two selection strategies are provided. Label selection keeps a FIFO queue
//! of individual labels; node selection keeps a FIFO ring of nodes and, when
//! a node is selected, propagates every label of that node that has not been
//! pushed before, so the cost values pushed along one arc sit in one
//! contiguous chunk of the arena. Both support tree-deletion pruning: when a
//! label dies to dominance, its whole descendant tree is removed instead of
//! lingering as queued-but-useless work.

mod arena;
mod ring;
mod solver;

pub use arena::{CostOverflow, LabelArena, LabelId, ObsoleteMeasure};
pub use solver::{run_label_selection, run_node_selection, solve};

use crate::graph::Cost;
use std::collections::BTreeSet;
use std::time::Duration;
use thiserror::Error;

/// `a` dominates `b`: no component worse, at least one strictly better.
///
/// Panics if the dimensions differ; vectors compared here always come from
/// one graph.
pub fn dominates(a: &[Cost], b: &[Cost]) -> bool {
    assert_eq!(a.len(), b.len(), "dominance needs equal dimensions");
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Componentwise `a <= b` (dominates or equal).
pub(crate) fn weakly_dominates(a: &[Cost], b: &[Cost]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lex_less(a: &[Cost], b: &[Cost]) -> bool {
    a < b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    LabelSelection,
    NodeSelection,
}

/// Queue discipline for label selection. `LexFrontBack` pushes a surviving
/// label to the front of the deque when its cost is lexicographically
/// smaller than the current front label's cost, otherwise (ties included)
/// to the back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum QueuePolicy {
    #[default]
    Fifo,
    LexFrontBack,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub strategy: Strategy,
    pub tree_deletion: bool,
    /// Label selection only; node selection always drains its ring in FIFO
    /// order.
    pub queue_policy: QueuePolicy,
    /// In runs without tree deletion, count for every dominance deletion how
    /// many descendants of the dead label were already processed. Purely
    /// observational: search behavior and all other counters are unchanged.
    /// Ignored when `tree_deletion` is set (the trees are actually deleted).
    pub measure_obsolete: bool,
    /// Abort with [`SolveError::Timeout`] once exceeded. Polled every few
    /// hundred queue operations.
    pub time_limit: Option<Duration>,
}

impl SolverOptions {
    pub fn label_selection() -> Self {
        SolverOptions {
            strategy: Strategy::LabelSelection,
            tree_deletion: false,
            queue_policy: QueuePolicy::Fifo,
            measure_obsolete: false,
            time_limit: None,
        }
    }

    pub fn node_selection() -> Self {
        SolverOptions {
            strategy: Strategy::NodeSelection,
            ..Self::label_selection()
        }
    }

    pub fn with_tree_deletion(mut self, on: bool) -> Self {
        self.tree_deletion = on;
        self
    }

    pub fn with_queue_policy(mut self, policy: QueuePolicy) -> Self {
        self.queue_policy = policy;
        self
    }

    pub fn with_measure_obsolete(mut self, on: bool) -> Self {
        self.measure_obsolete = on;
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if self.queue_policy == QueuePolicy::LexFrontBack && self.strategy != Strategy::LabelSelection
        {
            return Err(SolveError::PolicyNeedsLabelSelection);
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("node {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: u32, node_count: usize },
    #[error("cost overflow while extending a path; component sums must fit in 64 bits")]
    CostOverflow,
    #[error("time limit exceeded")]
    Timeout,
    #[error("queue policy lex-front-back requires the label-selection strategy")]
    PolicyNeedsLabelSelection,
    #[error("options request {expected:?} but this entry point runs {actual:?}")]
    StrategyMismatch { expected: Strategy, actual: Strategy },
}

/// One Pareto-optimal point: a representative path and its cost vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoPoint {
    /// Node sequence from source to target; a single node for s = t.
    pub path: Vec<u32>,
    pub cost: Vec<Cost>,
}

/// The Pareto front at the target: pairwise nondominated, pairwise distinct
/// cost vectors, one representative path each.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParetoResult {
    pub points: Vec<ParetoPoint>,
}

impl ParetoResult {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The cost vectors as an ordered set, for order-insensitive comparison
    /// across strategies.
    pub fn cost_set(&self) -> BTreeSet<Vec<Cost>> {
        self.points.iter().map(|p| p.cost.clone()).collect()
    }
}

/// Deterministic work counters plus the one nondeterministic field,
/// `wall_time`. Everything else is reproducible bit for bit given the same
/// graph, query and options.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunMetrics {
    /// Measured around the whole solve including path reconstruction.
    pub wall_time: Duration,
    /// Labels allocated in the arena, the root included.
    pub labels_created: u64,
    /// Labels marked deleted for any reason: dominated, duplicate cost, or
    /// swept by tree deletion.
    pub labels_deleted: u64,
    /// Label-along-arc propagation events.
    pub label_pushes: u64,
    /// Label selection: labels actually selected (skipped deleted entries do
    /// not count). Node selection: node selections, including ones that find
    /// no unpushed label.
    pub queue_pops: u64,
    /// Labels removed by tree deletion (subset of `labels_deleted`).
    pub td_subtree_deleted: u64,
    /// Only with `measure_obsolete`: already-processed descendants of
    /// dominance-deleted labels (popped under label selection, pushed under
    /// node selection), summed per deletion event.
    pub obsolete_touched: u64,
    /// Only with `measure_obsolete`: total descendant-tree size of
    /// dominance-deleted labels, summed per deletion event.
    pub obsolete_subtree: u64,
    pub front_size: u64,
}

impl RunMetrics {
    /// Equality ignoring `wall_time`, for determinism checks.
    pub fn same_counters(&self, other: &RunMetrics) -> bool {
        let a = (
            self.labels_created,
            self.labels_deleted,
            self.label_pushes,
            self.queue_pops,
            self.td_subtree_deleted,
            self.obsolete_touched,
            self.obsolete_subtree,
            self.front_size,
        );
        let b = (
            other.labels_created,
            other.labels_deleted,
            other.label_pushes,
            other.queue_pops,
            other.td_subtree_deleted,
            other.obsolete_touched,
            other.obsolete_subtree,
            other.front_size,
        );
        a == b
    }

    /// Like [`same_counters`](Self::same_counters) but also ignoring the
    /// purely observational `obsolete_*` fields, so a run with the
    /// obsolete-work probe can be checked against one without it.
    pub fn same_search_counters(&self, other: &RunMetrics) -> bool {
        let a = (
            self.labels_created,
            self.labels_deleted,
            self.label_pushes,
            self.queue_pops,
            self.td_subtree_deleted,
            self.front_size,
        );
        let b = (
            other.labels_created,
            other.labels_deleted,
            other.label_pushes,
            other.queue_pops,
            other.td_subtree_deleted,
            other.front_size,
        );
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1, 2], &[1, 3]));
        assert!(!dominates(&[1, 2], &[1, 2]));
        assert!(!dominates(&[2, 1], &[1, 2]));
        assert!(!dominates(&[1, 3], &[1, 2]));
        assert!(dominates(&[0, 0], &[0, 1]));
    }

    #[test]
    #[should_panic(expected = "equal dimensions")]
    fn dominance_rejects_mixed_dimensions() {
        dominates(&[1], &[1, 2]);
    }

    #[test]
    fn weak_dominance_includes_equality() {
        assert!(weakly_dominates(&[1, 2], &[1, 2]));
        assert!(weakly_dominates(&[1, 2], &[2, 2]));
        assert!(!weakly_dominates(&[3, 2], &[2, 2]));
    }

    #[test]
    fn lex_order() {
        assert!(lex_less(&[1, 9], &[2, 0]));
        assert!(!lex_less(&[2, 0], &[2, 0]));
        assert!(lex_less(&[2, 0], &[2, 1]));
    }

    #[test]
    fn lex_policy_requires_label_selection() {
        let opts = SolverOptions::node_selection().with_queue_policy(QueuePolicy::LexFrontBack);
        assert_eq!(opts.validate(), Err(SolveError::PolicyNeedsLabelSelection));
        let opts = SolverOptions::label_selection().with_queue_policy(QueuePolicy::LexFrontBack);
        assert_eq!(opts.validate(), Ok(()));
    }
}
