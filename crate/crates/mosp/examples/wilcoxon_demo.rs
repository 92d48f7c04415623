//! Runs the paired Wilcoxon signed-rank test on real solver timings:
//! node selection versus label selection over a batch of random
//! instances, the same comparison the benchmark harness makes.
//!
//!     cargo run --release --example wilcoxon_demo

use std::time::Instant;

use mosp::gen::{gen_random, CostRange};
use mosp::stats::{wilcoxon_signed_rank, Alternative, Summary};
use mosp::{solve, SolverOptions};

fn main() {
    let costs = CostRange { lo: 1, hi: 1000 };
    let mut ls_times = Vec::new();
    let mut ns_times = Vec::new();
    for seed in 0..20u64 {
        let inst = gen_random(400, 4000, 4, costs, seed).expect("gen");
        for (opts, bucket) in [
            (SolverOptions::label_selection(), &mut ls_times),
            (SolverOptions::node_selection(), &mut ns_times),
        ] {
            let start = Instant::now();
            solve(&inst.graph, inst.source, inst.target, &opts).expect("solve");
            bucket.push(start.elapsed().as_secs_f64());
        }
    }

    let ls = Summary::from_samples(&ls_times).unwrap();
    let ns = Summary::from_samples(&ns_times).unwrap();
    println!(
        "label selection: median {:.4}s  (min {:.4}, max {:.4})",
        ls.median, ls.min, ls.max
    );
    println!(
        "node selection:  median {:.4}s  (min {:.4}, max {:.4})",
        ns.median, ns.min, ns.max
    );

    // One-sided: is node selection faster than label selection?
    let test = wilcoxon_signed_rank(&ns_times, &ls_times, Alternative::Less).unwrap();
    println!(
        "\nwilcoxon signed-rank (ns < ls): W+ = {:.1}, p = {:.2e} ({:?} on {} pairs)",
        test.w_plus, test.p_value, test.method, test.n_used
    );
    if test.p_value < 0.05 {
        println!("node selection is significantly faster on this batch");
    } else {
        println!("no significant difference on this batch");
    }
}
