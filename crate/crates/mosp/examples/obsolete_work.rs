//! Measures how much of the search's expansion work is obsolete: labels
//! that were extended before a later arrival dominated them. The probe
//! piggybacks on a normal run without changing it, so the table below is
//! the honest answer to "how much would perfect pruning have saved".
//!
//!     cargo run --release --example obsolete_work

use mosp::gen::{gen_random, CostRange};
use mosp::stats::Summary;
use mosp::{solve, SolverOptions};

fn main() {
    let costs = CostRange { lo: 1, hi: 1000 };
    println!("objectives | touched/created (median over 8 seeds) | subtree/created");
    println!("-----------+---------------------------------------+----------------");
    for dim in [2usize, 3, 5, 7, 9] {
        let mut touched = Vec::new();
        let mut subtree = Vec::new();
        for seed in 0..8u64 {
            let inst = gen_random(400, 4000, dim, costs, seed).expect("gen");
            let opts = SolverOptions::node_selection().with_measure_obsolete(true);
            let (_, m) = solve(&inst.graph, inst.source, inst.target, &opts).expect("solve");
            touched.push(m.obsolete_touched as f64 / m.labels_created as f64);
            subtree.push(m.obsolete_subtree as f64 / m.labels_created as f64);
        }
        println!(
            "{dim:>10} | {:>37.5} | {:.5}",
            Summary::from_samples(&touched).unwrap().median,
            Summary::from_samples(&subtree).unwrap().median,
        );
    }
    println!("\nthe ratio collapses as objectives grow: with more dimensions fewer");
    println!("labels are ever dominated, so tree deletion has less to reclaim");
}
