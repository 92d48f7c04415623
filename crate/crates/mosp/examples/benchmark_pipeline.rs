//! Drives the whole benchmark harness in process: builds a manifest,
//! materializes the instances, runs the algorithm matrix, verifies
//! against the brute-force oracle, and summarizes with the Wilcoxon
//! comparison. This is exactly what the `mosp-bench` binary does with
//! `gen` / `run` / `oracle` / `stats`, minus the argument parsing.
//!
//!     cargo run --release --example benchmark_pipeline

use mosp::bench::{
    cmd_gen, cmd_oracle, cmd_run, cmd_stats, load_instance, Algo, FamilyName, InstanceEntry,
    Manifest, Overrides,
};

fn main() {
    let manifest = Manifest {
        name: Some("demo".into()),
        base_seed: 11,
        repetitions: 3,
        algos: vec![Algo::Ls, Algo::LsTd, Algo::Ns, Algo::NsTd],
        instances: vec![
            InstanceEntry {
                family: Some(FamilyName::Random),
                n: Some(12),
                m: Some(40),
                dim: Some(2),
                seed_count: Some(2),
                query_count: Some(4),
                ..InstanceEntry::default()
            },
            InstanceEntry {
                family: Some(FamilyName::Grid),
                side: Some(3),
                dim: Some(3),
                seed_count: Some(1),
                ..InstanceEntry::default()
            },
        ],
        ..Manifest::default()
    };
    let resolved = manifest.resolve(&Overrides::default()).expect("resolve");

    // `gen`: write the instances out as text files plus an echo manifest.
    let dir = std::env::temp_dir().join("mosp-pipeline-demo");
    let written = cmd_gen(&resolved, &dir).expect("gen");
    println!("gen: wrote {} files under {}", written.len(), dir.display());

    // `run`: the full (instance x query x algo x repetition) matrix.
    let rows = cmd_run(&resolved, 1).expect("run");
    println!("run: {} result rows, e.g.:", rows.len());
    for row in rows.iter().take(3) {
        println!(
            "  {} q({}->{}) {} rep{}: front {} in {:.4}s, {} labels",
            row.instance,
            row.source,
            row.target,
            row.algorithm,
            row.repetition,
            row.front_size.unwrap_or_default(),
            row.time_sec.unwrap_or_default(),
            row.labels_created.unwrap_or_default(),
        );
    }

    // `oracle`: brute-force verification of every query on small instances.
    let mut failures = 0;
    for inst in &resolved.instances {
        let loaded = load_instance(inst).expect("load");
        let (rows, bad) =
            cmd_oracle(&loaded.graph, &loaded.queries, &resolved.matrix, None).expect("oracle");
        failures += bad;
        println!("oracle: {} checks on {} ({bad} mismatches)", rows.len(), inst.label);
    }
    assert_eq!(failures, 0, "oracle found mismatches");

    // `stats`: per-algorithm summaries and the paired ns-vs-ls test.
    let stats = cmd_stats(&rows, Some((Algo::Ns, Algo::Ls)), None).expect("stats");
    for s in &stats {
        match s.kind.as_str() {
            "summary" => println!(
                "stats: summary {:>5} ({}) median {:.6}s over {} runs",
                s.algorithm,
                s.queue_policy,
                s.median.unwrap_or_default(),
                s.count.unwrap_or_default(),
            ),
            _ => println!(
                "stats: wilcoxon {} vs {}: p = {:.2e} ({}, {} pairs)",
                s.algorithm,
                s.versus,
                s.p_value.unwrap_or_default(),
                s.method,
                s.n_used.unwrap_or_default(),
            ),
        }
    }
}
