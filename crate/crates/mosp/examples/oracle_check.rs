//! Cross-checks every solver variant against the brute-force path
//! enumerator on a stream of small random instances. This is the same
//! idea as the oracle test suite, shrunk to a demo that prints what it
//! finds.
//!
//!     cargo run --example oracle_check

use mosp::gen::{gen_random, CostRange};
use mosp::oracle::pareto_front;
use mosp::{solve, QueuePolicy, SolverOptions};

fn main() {
    let costs = CostRange { lo: 1, hi: 20 };
    let mut checked = 0;
    for seed in 0..60u64 {
        let dim = 2 + (seed % 3) as usize;
        let inst = gen_random(9, 25, dim, costs, seed).expect("gen");
        let want = pareto_front(&inst.graph, inst.source, inst.target).expect("oracle");

        for opts in [
            SolverOptions::label_selection(),
            SolverOptions::label_selection().with_tree_deletion(true),
            SolverOptions::label_selection().with_queue_policy(QueuePolicy::LexFrontBack),
            SolverOptions::node_selection(),
            SolverOptions::node_selection().with_tree_deletion(true),
        ] {
            let (front, _) = solve(&inst.graph, inst.source, inst.target, &opts).expect("solve");
            assert_eq!(
                front.cost_set(),
                want,
                "variant disagrees with the oracle on seed {seed}"
            );
            checked += 1;
        }
        if seed % 12 == 0 {
            match want.iter().next() {
                Some(point) => println!(
                    "seed {seed:>2}: {dim} objectives, front of {} (e.g. {point:?})",
                    want.len()
                ),
                None => println!("seed {seed:>2}: {dim} objectives, target unreachable"),
            }
        }
    }
    println!("\n{checked} variant runs matched the brute-force front exactly");
}
