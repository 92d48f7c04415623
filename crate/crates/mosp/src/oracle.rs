//! Exhaustive reference solver for cross-checking the labeling algorithms.
//!
//! Enumerates every simple source-target path by depth-first search and
//! keeps the non-dominated cost vectors. This is exponential and guarded to
//! tiny graphs, but it shares no code with the label-correcting machinery:
//! dominance and path accumulation are reimplemented from scratch, so a bug
//! would have to appear twice, independently, to slip through a comparison.
//!
//! Restricting to simple paths loses nothing: arc costs are non-negative,
//! so removing a cycle from any walk yields a simple path whose cost vector
//! is componentwise at most the original. Every minimal vector of the walk
//! space is therefore already attained among simple paths.

use crate::graph::{Cost, Graph};
use std::collections::BTreeSet;
use thiserror::Error;

/// Per-query cap on `pareto_front`; raise explicitly via
/// [`pareto_front_with_limit`] when you know what you are asking for.
pub const MAX_ORACLE_NODES: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} nodes, oracle limit is {max}; use pareto_front_with_limit to override")]
    TooLarge { n: usize, max: usize },
    #[error("node {node} out of range for {node_count} nodes")]
    NodeOutOfRange { node: u32, node_count: usize },
    #[error("path cost overflowed u64")]
    CostOverflow,
}

/// `b` is componentwise no worse and strictly better somewhere.
fn strictly_dominates(b: &[Cost], a: &[Cost]) -> bool {
    let mut better = false;
    for (x, y) in b.iter().zip(a) {
        if x > y {
            return false;
        }
        if x < y {
            better = true;
        }
    }
    better
}

pub fn pareto_front(
    graph: &Graph,
    source: u32,
    target: u32,
) -> Result<BTreeSet<Vec<Cost>>, OracleError> {
    pareto_front_with_limit(graph, source, target, MAX_ORACLE_NODES)
}

pub fn pareto_front_with_limit(
    graph: &Graph,
    source: u32,
    target: u32,
    max_nodes: usize,
) -> Result<BTreeSet<Vec<Cost>>, OracleError> {
    let n = graph.node_count();
    if n > max_nodes {
        return Err(OracleError::TooLarge { n, max: max_nodes });
    }
    for node in [source, target] {
        if node as usize >= n {
            return Err(OracleError::NodeOutOfRange {
                node,
                node_count: n,
            });
        }
    }

    let mut all_costs: Vec<Vec<Cost>> = Vec::new();
    let mut on_path = vec![false; n];
    let mut acc = vec![0; graph.dimension()];
    on_path[source as usize] = true;
    dfs(graph, source, target, &mut on_path, &mut acc, &mut all_costs)?;

    let mut front = BTreeSet::new();
    'outer: for (i, cand) in all_costs.iter().enumerate() {
        for (j, other) in all_costs.iter().enumerate() {
            if i != j && strictly_dominates(other, cand) {
                continue 'outer;
            }
        }
        front.insert(cand.clone());
    }
    Ok(front)
}

fn dfs(
    graph: &Graph,
    at: u32,
    target: u32,
    on_path: &mut [bool],
    acc: &mut Vec<Cost>,
    out: &mut Vec<Vec<Cost>>,
) -> Result<(), OracleError> {
    if at == target {
        out.push(acc.clone());
        // The trivial source==target path is the zero vector and dominates
        // everything, so not extending past the target is also exact there.
        return Ok(());
    }
    for (next, cost) in graph.out_arcs(at) {
        if on_path[next as usize] {
            continue;
        }
        for (a, &c) in acc.iter_mut().zip(cost) {
            *a = a.checked_add(c).ok_or(OracleError::CostOverflow)?;
        }
        on_path[next as usize] = true;
        dfs(graph, next, target, on_path, acc, out)?;
        on_path[next as usize] = false;
        for (a, &c) in acc.iter_mut().zip(cost) {
            *a -= c;
        }
    }
    Ok(())
}
