//! Builds a nine-node graph by hand and runs all four solver variants on
//! it, printing the Pareto front with its witness paths and the work
//! counters side by side.
//!
//!     cargo run --example solve_small

use mosp::{solve, Graph, QueuePolicy, SolverOptions};

fn main() {
    // Two corridors from 0 to 8: a short expensive one across the top and
    // a long cheap one along the bottom, plus cross links that create
    // dominated detours for the pruning variants to throw away.
    let arcs = vec![
        (0, 1, vec![1, 9]),
        (1, 2, vec![1, 9]),
        (2, 8, vec![1, 9]),
        (0, 3, vec![4, 2]),
        (3, 4, vec![4, 2]),
        (4, 5, vec![4, 2]),
        (5, 8, vec![4, 2]),
        (1, 4, vec![6, 6]),
        (4, 2, vec![6, 6]),
        (3, 6, vec![2, 4]),
        (6, 7, vec![2, 4]),
        (7, 8, vec![2, 4]),
        (6, 5, vec![5, 5]),
    ];
    let graph = Graph::build(9, 2, &arcs).expect("valid arc list");

    let variants = [
        ("label selection", SolverOptions::label_selection()),
        (
            "label selection + tree deletion",
            SolverOptions::label_selection().with_tree_deletion(true),
        ),
        (
            "label selection, lex deque",
            SolverOptions::label_selection().with_queue_policy(QueuePolicy::LexFrontBack),
        ),
        ("node selection", SolverOptions::node_selection()),
        (
            "node selection + tree deletion",
            SolverOptions::node_selection().with_tree_deletion(true),
        ),
    ];

    for (name, opts) in variants {
        let (front, metrics) = solve(&graph, 0, 8, &opts).expect("solve");
        println!("{name}:");
        for point in &front.points {
            let path: Vec<String> = point.path.iter().map(u32::to_string).collect();
            println!("  cost {:?} via {}", point.cost, path.join("-"));
        }
        println!(
            "  created {} labels, deleted {}, {} queue pops, {} subtree casualties\n",
            metrics.labels_created,
            metrics.labels_deleted,
            metrics.queue_pops,
            metrics.td_subtree_deleted,
        );
    }
}
