//! Benchmark harness: TOML manifests, the run matrix over instances and
//! queries, CSV emission, and the brute-force verification front end. The
//! `mosp-bench` binary is a thin argument parser over these functions.

pub mod manifest;
pub mod runner;

pub use manifest::{
    builtin_suite, Algo, FamilyName, InstanceEntry, InstanceSource, Manifest, ManifestError,
    Overrides, PolicyName, QuerySource, Resolved, ResolvedInstance, BUILTIN_SUITES,
};
pub use runner::{
    cmd_gen, cmd_oracle, cmd_run, cmd_stats, format_front, front_diff, load_instance, read_rows,
    write_rows, BenchError, LoadedInstance, OracleRow, RunRow, StatRow,
};
