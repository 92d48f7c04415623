//! Generates one instance from each family, prints its shape, and writes
//! it to `target/examples-out/` in the text format together with a query
//! file.
//!
//!     cargo run --example generate_instances

use std::path::Path;

use mosp::gen::{
    gen_complete, gen_correlated_random, gen_grid, gen_queries, gen_random, CostRange, Instance,
};
use mosp::io::{write_instance_to_path, write_queries_to_path};

fn main() {
    let costs = CostRange { lo: 1, hi: 1000 };
    let seed = 7;
    let families: Vec<(&str, Instance)> = vec![
        ("random", gen_random(200, 1200, 3, costs, seed).unwrap()),
        ("complete", gen_complete(40, 3, costs, seed).unwrap()),
        ("grid", gen_grid(12, 3, costs, seed).unwrap()),
        (
            "correlated",
            gen_correlated_random(200, 0.2, 3, 0.7, costs, seed).unwrap(),
        ),
    ];

    let out_dir = Path::new("target/examples-out");
    std::fs::create_dir_all(out_dir).unwrap();

    for (name, inst) in families {
        let path = out_dir.join(format!("{name}.mosp"));
        write_instance_to_path(&path, &inst.graph, &[(inst.source, inst.target)]).unwrap();
        println!(
            "{name:<10} {:>6} nodes {:>7} arcs, canonical query {} -> {}, wrote {}",
            inst.graph.node_count(),
            inst.graph.arc_count(),
            inst.source,
            inst.target,
            path.display()
        );

        let queries = gen_queries(inst.graph.node_count(), 10, seed).unwrap();
        let qpath = out_dir.join(format!("{name}.queries"));
        write_queries_to_path(&qpath, &queries).unwrap();
        println!("{:<10} 10 extra query pairs in {}", "", qpath.display());
    }
}
