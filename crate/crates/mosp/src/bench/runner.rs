//! Executes resolved manifests: instance loading, the run matrix, and the
//! CSV-emitting `gen` / `run` / `stats` / `oracle` commands.

use super::manifest::{
    entry_for, Algo, Manifest, ManifestError, PolicyName, QuerySource, Resolved,
    ResolvedInstance,
};
use crate::gen::{gen_queries, GenError};
use crate::graph::{Cost, Graph};
use crate::io::{
    read_instance_from_path, read_queries_from_path, write_instance_to_path, FormatError,
};
use crate::labeling::{solve, RunMetrics, SolveError};
use crate::oracle::{pareto_front_with_limit, OracleError, MAX_ORACLE_NODES};
use crate::stats::{wilcoxon_signed_rank, Alternative, StatsError, Summary};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("manifest echo: {0}")]
    TomlSer(#[from] toml::ser::Error),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("{label}: no queries (file has no q lines and none were requested)")]
    NoQueries { label: String },
    #[error("{label}: query {src}->{dst} out of range for {nodes} nodes")]
    QueryOutOfRange {
        label: String,
        src: u32,
        dst: u32,
        nodes: usize,
    },
    #[error("{label} {src}->{dst} [{algo}]: {err}")]
    Solve {
        label: String,
        src: u32,
        dst: u32,
        algo: Algo,
        #[source]
        err: SolveError,
    },
    #[error("every configured run failed")]
    AllRunsFailed,
    #[error("stats needs exactly two --algos to compare, got {0}")]
    BadComparison(usize),
    #[error("no ok rows for algorithm {0}")]
    EmptyGroup(String),
    #[error("run key {key} appears {count} times under {algo}; narrow with --queue-policy")]
    AmbiguousPairs {
        algo: String,
        key: String,
        count: usize,
    },
    #[error("algorithms {a} and {b} pair on {matched} keys but {a} has {only_a} unmatched and {b} has {only_b}")]
    UnmatchedPairs {
        a: String,
        b: String,
        matched: usize,
        only_a: usize,
        only_b: usize,
    },
    #[error("{failures} oracle comparison(s) failed")]
    OracleMismatch { failures: usize },
}

impl BenchError {
    /// Process exit code: 1 usage, 2 verification mismatch, 3 runtime.
    pub fn exit_code(&self) -> u8 {
        match self {
            BenchError::Manifest(_) | BenchError::BadComparison(_) => 1,
            BenchError::OracleMismatch { .. } => 2,
            _ => 3,
        }
    }
}

/// An instance ready to run: graph in memory plus concrete query pairs.
pub struct LoadedInstance {
    pub label: String,
    pub graph: Graph,
    pub queries: Vec<(u32, u32)>,
}

pub fn load_instance(inst: &ResolvedInstance) -> Result<LoadedInstance, BenchError> {
    let (graph, inline, canonical) = match &inst.source {
        super::manifest::InstanceSource::Generated(spec) => {
            let gen = spec.generate()?;
            (gen.graph, Vec::new(), Some((gen.source, gen.target)))
        }
        super::manifest::InstanceSource::External(path) => {
            let parsed = read_instance_from_path(path)?;
            (parsed.graph, parsed.queries, None)
        }
    };
    let queries = match &inst.queries {
        QuerySource::Canonical => match canonical {
            Some(pair) => vec![pair],
            None => {
                return Err(BenchError::NoQueries {
                    label: inst.label.clone(),
                })
            }
        },
        QuerySource::Seeded { k, seed } => gen_queries(graph.node_count(), *k, *seed)?.pairs,
        QuerySource::File(path) => read_queries_from_path(path)?.pairs,
        QuerySource::Inline => inline,
    };
    if queries.is_empty() {
        return Err(BenchError::NoQueries {
            label: inst.label.clone(),
        });
    }
    for &(s, t) in &queries {
        if s as usize >= graph.node_count() || t as usize >= graph.node_count() {
            return Err(BenchError::QueryOutOfRange {
                label: inst.label.clone(),
                src: s,
                dst: t,
                nodes: graph.node_count(),
            });
        }
    }
    Ok(LoadedInstance {
        label: inst.label.clone(),
        graph,
        queries,
    })
}

/// One results row. Metric columns are empty unless `status` is `ok`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub instance: String,
    pub source: u32,
    pub target: u32,
    pub algorithm: String,
    pub queue_policy: String,
    pub repetition: u32,
    pub status: String,
    pub time_sec: Option<f64>,
    pub labels_created: Option<u64>,
    pub labels_deleted: Option<u64>,
    pub label_pushes: Option<u64>,
    pub queue_pops: Option<u64>,
    pub td_subtree_deleted: Option<u64>,
    pub obsolete_touched: Option<u64>,
    pub obsolete_subtree: Option<u64>,
    pub front_size: Option<u64>,
}

impl RunRow {
    fn fill_metrics(&mut self, m: &RunMetrics) {
        self.time_sec = Some(m.wall_time.as_secs_f64());
        self.labels_created = Some(m.labels_created);
        self.labels_deleted = Some(m.labels_deleted);
        self.label_pushes = Some(m.label_pushes);
        self.queue_pops = Some(m.queue_pops);
        self.td_subtree_deleted = Some(m.td_subtree_deleted);
        self.obsolete_touched = Some(m.obsolete_touched);
        self.obsolete_subtree = Some(m.obsolete_subtree);
        self.front_size = Some(m.front_size);
    }
}

struct Job {
    instance: usize,
    src: u32,
    dst: u32,
    algo: Algo,
    policy: PolicyName,
    rep: u32,
}

/// Runs the full matrix. Row order is the deterministic nesting
/// instance -> query -> matrix -> repetition regardless of `jobs`; with
/// `jobs <= 1` everything executes sequentially on the calling thread.
pub fn cmd_run(resolved: &Resolved, jobs: usize) -> Result<Vec<RunRow>, BenchError> {
    let loaded = resolved
        .instances
        .iter()
        .map(load_instance)
        .collect::<Result<Vec<_>, _>>()?;

    let mut queue = Vec::new();
    for (ii, inst) in loaded.iter().enumerate() {
        for &(src, dst) in &inst.queries {
            for &(algo, policy) in &resolved.matrix {
                for rep in 0..resolved.repetitions {
                    queue.push(Job {
                        instance: ii,
                        src,
                        dst,
                        algo,
                        policy,
                        rep,
                    });
                }
            }
        }
    }

    let run_one = |job: &Job| -> RunRow {
        let inst = &loaded[job.instance];
        let opts = job
            .algo
            .base_options()
            .with_queue_policy(job.policy.to_queue_policy())
            .with_measure_obsolete(resolved.measure_obsolete)
            .with_time_limit(resolved.time_limit);
        let mut row = RunRow {
            instance: inst.label.clone(),
            source: job.src,
            target: job.dst,
            algorithm: job.algo.name().to_string(),
            queue_policy: job.policy.name().to_string(),
            repetition: job.rep,
            status: "ok".to_string(),
            time_sec: None,
            labels_created: None,
            labels_deleted: None,
            label_pushes: None,
            queue_pops: None,
            td_subtree_deleted: None,
            obsolete_touched: None,
            obsolete_subtree: None,
            front_size: None,
        };
        match solve(&inst.graph, job.src, job.dst, &opts) {
            Ok((_, metrics)) => row.fill_metrics(&metrics),
            Err(SolveError::Timeout) => row.status = "timeout".to_string(),
            Err(_) => row.status = "error".to_string(),
        }
        row
    };

    let rows: Vec<RunRow> = if jobs <= 1 {
        queue.iter().map(run_one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| BenchError::Pool(e.to_string()))?;
        pool.install(|| queue.par_iter().map(run_one).collect())
    };

    if !rows.is_empty() && rows.iter().all(|r| r.status == "error") {
        return Err(BenchError::AllRunsFailed);
    }
    Ok(rows)
}

pub fn write_rows<W: Write, S: Serialize>(writer: W, rows: &[S]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(path: &Path) -> Result<Vec<RunRow>, BenchError> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}

/// Writes every generated instance (with its query lines) under `out_dir`,
/// plus a `manifest.toml` echo of the fully resolved plan so the directory
/// is self-describing. External-path entries are echoed but not copied.
pub fn cmd_gen(resolved: &Resolved, out_dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut echo = Manifest {
        name: resolved.name.clone(),
        base_seed: resolved.base_seed,
        repetitions: resolved.repetitions,
        time_limit_sec: resolved.time_limit.map(|d| d.as_secs_f64()),
        measure_obsolete: resolved.measure_obsolete,
        out: resolved.out.clone(),
        ..Manifest::default()
    };
    echo.algos.clear();
    echo.queue_policies.clear();
    for &(algo, policy) in &resolved.matrix {
        if !echo.algos.contains(&algo) {
            echo.algos.push(algo);
        }
        if algo.is_label_selection() && !echo.queue_policies.contains(&policy) {
            echo.queue_policies.push(policy);
        }
    }
    if echo.queue_policies.is_empty() {
        echo.queue_policies.push(PolicyName::Fifo);
    }

    for inst in &resolved.instances {
        echo.instances.push(entry_for(inst));
        let super::manifest::InstanceSource::Generated(_) = &inst.source else {
            continue;
        };
        let loaded = load_instance(inst)?;
        let path = out_dir.join(format!("{}.mosp", inst.label));
        write_instance_to_path(&path, &loaded.graph, &loaded.queries)?;
        written.push(path);
    }
    std::fs::write(out_dir.join("manifest.toml"), toml::to_string_pretty(&echo)?)?;
    Ok(written)
}

/// One output row of `cmd_stats`: either a per-group summary or a paired
/// Wilcoxon comparison, distinguished by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub kind: String,
    pub algorithm: String,
    pub queue_policy: String,
    pub versus: String,
    pub metric: String,
    pub count: Option<usize>,
    pub min: Option<f64>,
    pub q1: Option<f64>,
    pub median: Option<f64>,
    pub q3: Option<f64>,
    pub max: Option<f64>,
    pub mean: Option<f64>,
    pub n_used: Option<usize>,
    pub w_plus: Option<f64>,
    pub p_value: Option<f64>,
    pub alternative: String,
    pub method: String,
}

impl StatRow {
    fn blank() -> StatRow {
        StatRow {
            kind: String::new(),
            algorithm: String::new(),
            queue_policy: String::new(),
            versus: String::new(),
            metric: "time_sec".to_string(),
            count: None,
            min: None,
            q1: None,
            median: None,
            q3: None,
            max: None,
            mean: None,
            n_used: None,
            w_plus: None,
            p_value: None,
            alternative: String::new(),
            method: String::new(),
        }
    }
}

/// Per-(algorithm, policy) runtime summaries, plus — when `compare` names
/// two algorithms — a paired one-sided Wilcoxon on per-(instance, query,
/// repetition) runtimes testing "first is faster than second".
pub fn cmd_stats(
    rows: &[RunRow],
    compare: Option<(Algo, Algo)>,
    policy_filter: Option<PolicyName>,
) -> Result<Vec<StatRow>, BenchError> {
    let rows: Vec<&RunRow> = rows
        .iter()
        .filter(|r| policy_filter.is_none_or(|p| r.queue_policy == p.name()))
        .collect();

    let mut groups: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for row in &rows {
        if row.status == "ok" {
            if let Some(t) = row.time_sec {
                groups
                    .entry((row.algorithm.clone(), row.queue_policy.clone()))
                    .or_default()
                    .push(t);
            }
        }
    }

    let mut out = Vec::new();
    for ((algo, policy), times) in &groups {
        let s = Summary::from_samples(times)?;
        let mut row = StatRow::blank();
        row.kind = "summary".to_string();
        row.algorithm = algo.clone();
        row.queue_policy = policy.clone();
        row.count = Some(s.count);
        row.min = Some(s.min);
        row.q1 = Some(s.q1);
        row.median = Some(s.median);
        row.q3 = Some(s.q3);
        row.max = Some(s.max);
        row.mean = Some(s.mean);
        out.push(row);
    }

    if let Some((a, b)) = compare {
        let arm = |algo: Algo| -> Result<BTreeMap<(String, u32, u32, u32), f64>, BenchError> {
            let mut keyed = BTreeMap::new();
            for row in rows.iter().filter(|r| r.algorithm == algo.name()) {
                if row.status != "ok" {
                    continue;
                }
                let Some(t) = row.time_sec else { continue };
                let key = (row.instance.clone(), row.source, row.target, row.repetition);
                if keyed.insert(key.clone(), t).is_some() {
                    return Err(BenchError::AmbiguousPairs {
                        algo: algo.name().to_string(),
                        key: format!("{} {}->{} rep{}", key.0, key.1, key.2, key.3),
                        count: 2,
                    });
                }
            }
            if keyed.is_empty() {
                return Err(BenchError::EmptyGroup(algo.name().to_string()));
            }
            Ok(keyed)
        };
        let left = arm(a)?;
        let right = arm(b)?;
        let shared: Vec<&(String, u32, u32, u32)> =
            left.keys().filter(|k| right.contains_key(*k)).collect();
        if shared.len() != left.len() || shared.len() != right.len() {
            return Err(BenchError::UnmatchedPairs {
                a: a.name().to_string(),
                b: b.name().to_string(),
                matched: shared.len(),
                only_a: left.len() - shared.len(),
                only_b: right.len() - shared.len(),
            });
        }
        let xs: Vec<f64> = shared.iter().map(|k| left[*k]).collect();
        let ys: Vec<f64> = shared.iter().map(|k| right[*k]).collect();
        let w = wilcoxon_signed_rank(&xs, &ys, Alternative::Less)?;
        let mut row = StatRow::blank();
        row.kind = "wilcoxon".to_string();
        row.algorithm = a.name().to_string();
        row.versus = b.name().to_string();
        row.queue_policy = policy_filter.map(|p| p.name().to_string()).unwrap_or_default();
        row.n_used = Some(w.n_used);
        row.w_plus = Some(w.w_plus);
        row.p_value = Some(w.p_value);
        row.alternative = w.alternative.name().to_string();
        row.method = w.method.name().to_string();
        out.push(row);
    }
    Ok(out)
}

/// One oracle comparison row: the reference front for a query and whether
/// one solver variant reproduced it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub source: u32,
    pub target: u32,
    pub algorithm: String,
    pub queue_policy: String,
    pub front_size: u64,
    pub vectors: String,
    pub result: String,
    pub diff: String,
}

/// `1|2;3|4` — components joined by `|`, vectors by `;`, in sorted order.
pub fn format_front<'a, I: IntoIterator<Item = &'a Vec<Cost>>>(front: I) -> String {
    front
        .into_iter()
        .map(|v| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Symmetric difference rendered like the front itself, `-` marking
/// vectors the solver missed and `+` vectors it invented. Empty iff equal.
pub fn front_diff(want: &BTreeSet<Vec<Cost>>, got: &BTreeSet<Vec<Cost>>) -> String {
    let mut parts = Vec::new();
    for v in want.difference(got) {
        parts.push(format!("-{}", format_front([v])));
    }
    for v in got.difference(want) {
        parts.push(format!("+{}", format_front([v])));
    }
    parts.join(";")
}

/// Checks every solver variant in the matrix against the brute-force front
/// for every query. Returns all comparison rows plus the failure count;
/// the caller maps failures to the verification-mismatch exit code.
pub fn cmd_oracle(
    graph: &Graph,
    queries: &[(u32, u32)],
    matrix: &[(Algo, PolicyName)],
    max_nodes: Option<usize>,
) -> Result<(Vec<OracleRow>, usize), BenchError> {
    let mut rows = Vec::new();
    let mut failures = 0;
    for &(src, dst) in queries {
        let want = pareto_front_with_limit(graph, src, dst, max_nodes.unwrap_or(MAX_ORACLE_NODES))?;
        let vectors = format_front(&want);
        for &(algo, policy) in matrix {
            let opts = algo
                .base_options()
                .with_queue_policy(policy.to_queue_policy());
            let (front, _) = solve(graph, src, dst, &opts).map_err(|err| BenchError::Solve {
                label: "oracle".to_string(),
                src,
                dst,
                algo,
                err,
            })?;
            let got = front.cost_set();
            let diff = front_diff(&want, &got);
            let pass = diff.is_empty();
            if !pass {
                failures += 1;
            }
            rows.push(OracleRow {
                source: src,
                target: dst,
                algorithm: algo.name().to_string(),
                queue_policy: policy.name().to_string(),
                front_size: want.len() as u64,
                vectors: vectors.clone(),
                result: if pass { "PASS" } else { "FAIL" }.to_string(),
                diff,
            });
        }
    }
    Ok((rows, failures))
}
