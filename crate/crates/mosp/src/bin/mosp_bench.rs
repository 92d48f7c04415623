//! Thin command-line front end over `mosp::bench`.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification mismatch (oracle
//! FAIL), 3 runtime failure.

use clap::{Parser, Subcommand};
use mosp::bench::{
    cmd_gen, cmd_oracle, cmd_run, cmd_stats, read_rows, write_rows, Algo, BenchError, Manifest,
    Overrides, PolicyName,
};
use mosp::io::{read_instance_from_path, read_queries_from_path};
use serde::Serialize;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mosp-bench",
    version,
    about = "Benchmark harness for multiobjective shortest-path solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write instance files (plus a manifest echo) from a manifest
    Gen {
        #[arg(long)]
        manifest: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Override the manifest's base seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the algorithm matrix and emit a results CSV
    Run {
        #[arg(long)]
        manifest: PathBuf,
        /// Results CSV path (defaults to the manifest's `out`, else stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 1 (the default) runs sequentially for clean timing
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Per-run time limit in seconds
        #[arg(long)]
        time_limit: Option<f64>,
        /// Override the manifest's base seed
        #[arg(long)]
        seed: Option<u64>,
        /// Count the obsolete descendants non-TD runs left queued
        #[arg(long)]
        measure_obsolete: bool,
        /// Comma-separated subset of ls,ls-td,ns,ns-td
        #[arg(long, value_delimiter = ',')]
        algos: Option<Vec<String>>,
        /// fifo or lexdeque (applies to label-selection variants)
        #[arg(long)]
        queue_policy: Option<String>,
    },
    /// Summaries and a paired Wilcoxon comparison from a results CSV
    Stats {
        /// Results CSV produced by `run`
        input: PathBuf,
        /// Exactly two algorithms to compare: candidate,baseline. The
        /// Wilcoxon alternative is "candidate is faster".
        #[arg(long, value_delimiter = ',')]
        algos: Option<Vec<String>>,
        /// Restrict to one queue policy before grouping and pairing
        #[arg(long)]
        queue_policy: Option<String>,
        /// Output CSV (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every solver variant against the brute-force oracle
    Oracle {
        /// Instance file
        graph: PathBuf,
        /// Optional query file; defaults to the instance's q lines
        queries: Option<PathBuf>,
        /// Comma-separated subset of ls,ls-td,ns,ns-td
        #[arg(long, value_delimiter = ',')]
        algos: Option<Vec<String>>,
        /// fifo or lexdeque (applies to label-selection variants)
        #[arg(long)]
        queue_policy: Option<String>,
        /// Raise the oracle's node-count guard (default 14)
        #[arg(long)]
        max_nodes: Option<usize>,
        /// Output CSV (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here; keep their success status.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn parse_algos(raw: Option<Vec<String>>) -> Result<Option<Vec<Algo>>, BenchError> {
    raw.map(|list| {
        list.iter()
            .map(|s| s.parse::<Algo>().map_err(BenchError::from))
            .collect()
    })
    .transpose()
}

fn parse_policy(raw: Option<String>) -> Result<Option<PolicyName>, BenchError> {
    raw.map(|s| s.parse::<PolicyName>().map_err(BenchError::from))
        .transpose()
}

fn emit<S: Serialize>(rows: &[S], out: Option<&Path>) -> Result<(), BenchError> {
    match out {
        Some(path) => write_rows(BufWriter::new(File::create(path)?), rows),
        None => write_rows(std::io::stdout().lock(), rows),
    }
}

fn dispatch(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Gen { manifest, out, seed } => {
            let overrides = Overrides {
                seed,
                ..Overrides::default()
            };
            let resolved = Manifest::load(&manifest)?.resolve(&overrides)?;
            let written = cmd_gen(&resolved, &out)?;
            for path in &written {
                println!("wrote {}", path.display());
            }
            println!("wrote {}", out.join("manifest.toml").display());
            Ok(())
        }
        Command::Run {
            manifest,
            out,
            jobs,
            time_limit,
            seed,
            measure_obsolete,
            algos,
            queue_policy,
        } => {
            let overrides = Overrides {
                seed,
                time_limit_sec: time_limit,
                measure_obsolete,
                algos: parse_algos(algos)?,
                queue_policy: parse_policy(queue_policy)?,
                out,
            };
            let resolved = Manifest::load(&manifest)?.resolve(&overrides)?;
            let rows = cmd_run(&resolved, jobs)?;
            emit(&rows, resolved.out.as_deref())?;
            if let Some(path) = &resolved.out {
                println!("{} rows -> {}", rows.len(), path.display());
            }
            Ok(())
        }
        Command::Stats {
            input,
            algos,
            queue_policy,
            out,
        } => {
            let compare = match parse_algos(algos)? {
                None => None,
                Some(pair) if pair.len() == 2 => Some((pair[0], pair[1])),
                Some(other) => return Err(BenchError::BadComparison(other.len())),
            };
            let rows = read_rows(&input)?;
            let stats = cmd_stats(&rows, compare, parse_policy(queue_policy)?)?;
            emit(&stats, out.as_deref())
        }
        Command::Oracle {
            graph,
            queries,
            algos,
            queue_policy,
            max_nodes,
            out,
        } => {
            let parsed = read_instance_from_path(&graph)?;
            let pairs = match queries {
                Some(path) => read_queries_from_path(&path)?.pairs,
                None => parsed.queries,
            };
            if pairs.is_empty() {
                return Err(BenchError::NoQueries {
                    label: graph.display().to_string(),
                });
            }
            let algos = parse_algos(algos)?.unwrap_or_else(|| Algo::ALL.to_vec());
            let policy = parse_policy(queue_policy)?.unwrap_or(PolicyName::Fifo);
            let matrix: Vec<(Algo, PolicyName)> = algos
                .iter()
                .map(|&a| {
                    (
                        a,
                        if a.is_label_selection() {
                            policy
                        } else {
                            PolicyName::Fifo
                        },
                    )
                })
                .collect();
            let (rows, failures) = cmd_oracle(&parsed.graph, &pairs, &matrix, max_nodes)?;
            emit(&rows, out.as_deref())?;
            if failures > 0 {
                return Err(BenchError::OracleMismatch { failures });
            }
            Ok(())
        }
    }
}
