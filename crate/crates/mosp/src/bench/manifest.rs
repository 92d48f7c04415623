//! TOML benchmark manifests and the built-in desk-scale suites.
//!
//! A manifest names the instances (generator recipes, built-in suite
//! references, or paths to instance files), the algorithm matrix, and run
//! settings. Command-line flags override the corresponding manifest fields;
//! see [`Overrides`].

use crate::gen::{
    CostRange, Family, GenSpec, DEFAULT_COST_HI, DEFAULT_COST_LO, DEFAULT_DENSITY, DEFAULT_RHO,
};
use crate::graph::Cost;
use crate::labeling::{QueuePolicy, SolverOptions};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("manifest lists no instances")]
    NoInstances,
    #[error("empty algorithm list")]
    NoAlgos,
    #[error("empty queue policy list")]
    NoPolicies,
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("time limit must be positive, got {0}")]
    BadTimeLimit(f64),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("instance {index}: {msg}")]
    Entry { index: usize, msg: String },
    #[error("unknown algorithm {0:?} (expected ls, ls-td, ns, ns-td)")]
    BadAlgo(String),
    #[error("unknown queue policy {0:?} (expected fifo or lexdeque)")]
    BadPolicy(String),
}

/// The four benchmark algorithms: label or node selection, with or without
/// tree-deletion pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Ls,
    LsTd,
    Ns,
    NsTd,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Ls, Algo::LsTd, Algo::Ns, Algo::NsTd];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Ls => "ls",
            Algo::LsTd => "ls-td",
            Algo::Ns => "ns",
            Algo::NsTd => "ns-td",
        }
    }

    pub fn is_label_selection(self) -> bool {
        matches!(self, Algo::Ls | Algo::LsTd)
    }

    pub fn tree_deletion(self) -> bool {
        matches!(self, Algo::LsTd | Algo::NsTd)
    }

    pub fn base_options(self) -> SolverOptions {
        let opts = if self.is_label_selection() {
            SolverOptions::label_selection()
        } else {
            SolverOptions::node_selection()
        };
        opts.with_tree_deletion(self.tree_deletion())
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = ManifestError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ls" => Ok(Algo::Ls),
            "ls-td" => Ok(Algo::LsTd),
            "ns" => Ok(Algo::Ns),
            "ns-td" => Ok(Algo::NsTd),
            other => Err(ManifestError::BadAlgo(other.to_string())),
        }
    }
}

/// Queue policy names as they appear in manifests and on the command line.
/// Only the label-selection variants consult the policy; node selection
/// always uses its FIFO node ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyName {
    Fifo,
    Lexdeque,
}

impl PolicyName {
    pub fn name(self) -> &'static str {
        match self {
            PolicyName::Fifo => "fifo",
            PolicyName::Lexdeque => "lexdeque",
        }
    }

    pub fn to_queue_policy(self) -> QueuePolicy {
        match self {
            PolicyName::Fifo => QueuePolicy::Fifo,
            PolicyName::Lexdeque => QueuePolicy::LexFrontBack,
        }
    }
}

impl fmt::Display for PolicyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyName {
    type Err = ManifestError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fifo" => Ok(PolicyName::Fifo),
            "lexdeque" => Ok(PolicyName::Lexdeque),
            other => Err(ManifestError::BadPolicy(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Random,
    Complete,
    Grid,
    CorrelatedRandom,
}

impl FamilyName {
    fn to_family(self) -> Family {
        match self {
            FamilyName::Random => Family::Random,
            FamilyName::Complete => Family::Complete,
            FamilyName::Grid => Family::Grid,
            FamilyName::CorrelatedRandom => Family::CorrelatedRandom,
        }
    }
}

fn default_base_seed() -> u64 {
    1
}

fn default_algos() -> Vec<Algo> {
    Algo::ALL.to_vec()
}

fn default_policies() -> Vec<PolicyName> {
    vec![PolicyName::Fifo]
}

fn default_repetitions() -> u32 {
    1
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Seed base for suites and entries that give `seed_count` instead of
    /// explicit seeds; `--seed` overrides it.
    #[serde(default = "default_base_seed")]
    pub base_seed: u64,
    /// Built-in suite names expanded ahead of the explicit instances.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<String>,
    #[serde(default, rename = "instance", skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<InstanceEntry>,
    #[serde(default = "default_algos")]
    pub algos: Vec<Algo>,
    #[serde(default = "default_policies")]
    pub queue_policies: Vec<PolicyName>,
    #[serde(default = "default_repetitions")]
    pub repetitions: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_limit_sec: Option<f64>,
    #[serde(default)]
    pub measure_obsolete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            name: None,
            base_seed: default_base_seed(),
            suites: Vec::new(),
            instances: Vec::new(),
            algos: default_algos(),
            queue_policies: default_policies(),
            repetitions: default_repetitions(),
            time_limit_sec: None,
            measure_obsolete: false,
            out: None,
        }
    }
}

/// One `[[instance]]` table: either a generator recipe (family plus its
/// parameters) or an external `path`, never both.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_lo: Option<Cost>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_hi: Option<Cost>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query_seed: Option<u64>,
}

/// Command-line overrides applied during [`Manifest::resolve`].
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub time_limit_sec: Option<f64>,
    pub measure_obsolete: bool,
    pub algos: Option<Vec<Algo>>,
    pub queue_policy: Option<PolicyName>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Generated(GenSpec),
    External(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuerySource {
    /// The generator's canonical source/target pair.
    Canonical,
    /// `k` seeded random pairs drawn at load time.
    Seeded { k: usize, seed: u64 },
    /// A separate query file.
    File(PathBuf),
    /// Whatever `q` lines the instance file itself carries.
    Inline,
}

#[derive(Debug, Clone)]
pub struct ResolvedInstance {
    pub label: String,
    pub source: InstanceSource,
    pub queries: QuerySource,
}

/// A manifest after suite expansion, seed fan-out and override application.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub name: Option<String>,
    pub base_seed: u64,
    pub instances: Vec<ResolvedInstance>,
    /// Cross product of algorithms and (for label selection) queue
    /// policies; node selection appears once, keyed under fifo.
    pub matrix: Vec<(Algo, PolicyName)>,
    pub repetitions: u32,
    pub time_limit: Option<Duration>,
    pub measure_obsolete: bool,
    pub out: Option<PathBuf>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest, ManifestError> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }

    pub fn resolve(&self, overrides: &Overrides) -> Result<Resolved, ManifestError> {
        let base_seed = overrides.seed.unwrap_or(self.base_seed);

        let mut entries: Vec<InstanceEntry> = Vec::new();
        for suite in &self.suites {
            entries.extend(
                builtin_suite(suite).ok_or_else(|| ManifestError::UnknownSuite(suite.clone()))?,
            );
        }
        entries.extend(self.instances.iter().cloned());
        if entries.is_empty() {
            return Err(ManifestError::NoInstances);
        }

        let mut instances = Vec::new();
        for (index, entry) in entries.iter().enumerate() {
            instances.extend(resolve_entry(entry, index, base_seed)?);
        }

        let algos = overrides.algos.clone().unwrap_or_else(|| self.algos.clone());
        if algos.is_empty() {
            return Err(ManifestError::NoAlgos);
        }
        let policies = match overrides.queue_policy {
            Some(p) => vec![p],
            None => self.queue_policies.clone(),
        };
        if policies.is_empty() {
            return Err(ManifestError::NoPolicies);
        }
        let mut matrix: Vec<(Algo, PolicyName)> = Vec::new();
        for &algo in &algos {
            if algo.is_label_selection() {
                for &p in &policies {
                    if !matrix.contains(&(algo, p)) {
                        matrix.push((algo, p));
                    }
                }
            } else if !matrix.iter().any(|&(a, _)| a == algo) {
                matrix.push((algo, PolicyName::Fifo));
            }
        }

        if self.repetitions == 0 {
            return Err(ManifestError::NoRepetitions);
        }
        let time_limit_sec = overrides.time_limit_sec.or(self.time_limit_sec);
        let time_limit = match time_limit_sec {
            Some(s) if s > 0.0 && s.is_finite() => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(ManifestError::BadTimeLimit(s)),
            None => None,
        };

        Ok(Resolved {
            name: self.name.clone(),
            base_seed,
            instances,
            matrix,
            repetitions: self.repetitions,
            time_limit,
            measure_obsolete: self.measure_obsolete || overrides.measure_obsolete,
            out: overrides.out.clone().or_else(|| self.out.clone()),
        })
    }
}

fn entry_err(index: usize, msg: impl Into<String>) -> ManifestError {
    ManifestError::Entry {
        index,
        msg: msg.into(),
    }
}

fn resolve_entry(
    entry: &InstanceEntry,
    index: usize,
    base_seed: u64,
) -> Result<Vec<ResolvedInstance>, ManifestError> {
    if let Some(path) = &entry.path {
        for (set, what) in [
            (entry.family.is_some(), "family"),
            (entry.n.is_some(), "n"),
            (entry.m.is_some(), "m"),
            (entry.side.is_some(), "side"),
            (entry.dim.is_some(), "dim"),
            (entry.density.is_some(), "density"),
            (entry.rho.is_some(), "rho"),
            (entry.seeds.is_some(), "seeds"),
            (entry.seed_count.is_some(), "seed_count"),
        ] {
            if set {
                return Err(entry_err(index, format!("path excludes generator field {what}")));
            }
        }
        let queries = match (&entry.query_file, entry.query_count) {
            (Some(_), Some(_)) => {
                return Err(entry_err(index, "query_file and query_count are exclusive"))
            }
            (Some(f), None) => QuerySource::File(f.clone()),
            (None, Some(k)) if k > 0 => QuerySource::Seeded {
                k,
                seed: entry.query_seed.unwrap_or(base_seed),
            },
            (None, _) => QuerySource::Inline,
        };
        return Ok(vec![ResolvedInstance {
            label: path.display().to_string(),
            source: InstanceSource::External(path.clone()),
            queries,
        }]);
    }

    let family = entry
        .family
        .ok_or_else(|| entry_err(index, "needs either path or family"))?;
    if entry.query_file.is_some() {
        return Err(entry_err(index, "query_file only applies to path instances"));
    }
    let dim = entry
        .dim
        .ok_or_else(|| entry_err(index, "generator entries need dim"))?;
    let costs = CostRange {
        lo: entry.cost_lo.unwrap_or(DEFAULT_COST_LO),
        hi: entry.cost_hi.unwrap_or(DEFAULT_COST_HI),
    };

    let seeds: Vec<u64> = match (&entry.seeds, entry.seed_count) {
        (Some(_), Some(_)) => return Err(entry_err(index, "seeds and seed_count are exclusive")),
        (Some(s), None) => {
            if s.is_empty() {
                return Err(entry_err(index, "seeds list is empty"));
            }
            s.clone()
        }
        (None, count) => {
            let count = count.unwrap_or(1);
            if count == 0 {
                return Err(entry_err(index, "seed_count is zero"));
            }
            (0..count).map(|i| base_seed.wrapping_add(i)).collect()
        }
    };

    let forbid = |cond: bool, what: &str| -> Result<(), ManifestError> {
        if cond {
            Err(entry_err(
                index,
                format!("{what} does not apply to family {:?}", family.to_family().name()),
            ))
        } else {
            Ok(())
        }
    };
    let need_n = || entry.n.ok_or_else(|| entry_err(index, "family needs n"));

    let mut out = Vec::with_capacity(seeds.len());
    for &seed in &seeds {
        let spec = match family {
            FamilyName::Random => {
                forbid(entry.side.is_some(), "side")?;
                forbid(entry.density.is_some(), "density")?;
                forbid(entry.rho.is_some(), "rho")?;
                let n = need_n()?;
                GenSpec::Random {
                    n,
                    m: entry.m.unwrap_or(10 * n),
                    dim,
                    costs,
                    seed,
                }
            }
            FamilyName::Complete => {
                forbid(entry.m.is_some(), "m")?;
                forbid(entry.side.is_some(), "side")?;
                forbid(entry.density.is_some(), "density")?;
                forbid(entry.rho.is_some(), "rho")?;
                GenSpec::Complete {
                    n: need_n()?,
                    dim,
                    costs,
                    seed,
                }
            }
            FamilyName::Grid => {
                forbid(entry.n.is_some(), "n")?;
                forbid(entry.m.is_some(), "m")?;
                forbid(entry.density.is_some(), "density")?;
                forbid(entry.rho.is_some(), "rho")?;
                GenSpec::Grid {
                    side: entry
                        .side
                        .ok_or_else(|| entry_err(index, "grid needs side"))?,
                    dim,
                    costs,
                    seed,
                }
            }
            FamilyName::CorrelatedRandom => {
                forbid(entry.m.is_some(), "m")?;
                forbid(entry.side.is_some(), "side")?;
                GenSpec::CorrelatedRandom {
                    n: need_n()?,
                    density: entry.density.unwrap_or(DEFAULT_DENSITY),
                    dim,
                    rho: entry.rho.unwrap_or(DEFAULT_RHO),
                    costs,
                    seed,
                }
            }
        };
        let queries = match entry.query_count {
            None | Some(0) => QuerySource::Canonical,
            Some(k) => QuerySource::Seeded {
                k,
                seed: entry.query_seed.unwrap_or(seed),
            },
        };
        out.push(ResolvedInstance {
            label: spec.file_stem(),
            source: InstanceSource::Generated(spec),
            queries,
        });
    }
    Ok(out)
}

/// Rebuild a manifest entry from a resolved instance, for the provenance
/// echo written next to generated files.
pub fn entry_for(resolved: &ResolvedInstance) -> InstanceEntry {
    let mut entry = InstanceEntry::default();
    match &resolved.source {
        InstanceSource::External(path) => {
            entry.path = Some(path.clone());
        }
        InstanceSource::Generated(spec) => {
            entry.dim = Some(spec.dimension());
            entry.seeds = Some(vec![spec.seed()]);
            match *spec {
                GenSpec::Random { n, m, costs, .. } => {
                    entry.family = Some(FamilyName::Random);
                    entry.n = Some(n);
                    entry.m = Some(m);
                    entry.cost_lo = Some(costs.lo);
                    entry.cost_hi = Some(costs.hi);
                }
                GenSpec::Complete { n, costs, .. } => {
                    entry.family = Some(FamilyName::Complete);
                    entry.n = Some(n);
                    entry.cost_lo = Some(costs.lo);
                    entry.cost_hi = Some(costs.hi);
                }
                GenSpec::Grid { side, costs, .. } => {
                    entry.family = Some(FamilyName::Grid);
                    entry.side = Some(side);
                    entry.cost_lo = Some(costs.lo);
                    entry.cost_hi = Some(costs.hi);
                }
                GenSpec::CorrelatedRandom {
                    n, density, rho, costs, ..
                } => {
                    entry.family = Some(FamilyName::CorrelatedRandom);
                    entry.n = Some(n);
                    entry.density = Some(density);
                    entry.rho = Some(rho);
                    entry.cost_lo = Some(costs.lo);
                    entry.cost_hi = Some(costs.hi);
                }
            }
        }
    }
    match resolved.queries {
        QuerySource::Canonical | QuerySource::Inline => {}
        QuerySource::Seeded { k, seed } => {
            entry.query_count = Some(k);
            entry.query_seed = Some(seed);
        }
        QuerySource::File(ref f) => entry.query_file = Some(f.clone()),
    }
    entry
}

/// Desk-scale suite catalog. Counts and the largest sizes are shrunk from
/// the usual benchmark tables; structural parameters are not.
pub fn builtin_suite(name: &str) -> Option<Vec<InstanceEntry>> {
    fn gen(family: FamilyName, dim: usize, seed_count: u64) -> InstanceEntry {
        InstanceEntry {
            family: Some(family),
            dim: Some(dim),
            seed_count: Some(seed_count),
            ..InstanceEntry::default()
        }
    }
    let suite = match name {
        // Sparse random graphs, m = 10n. N variant fixes d and would grow
        // n in the full-scale table; the desk edition pins its largest n.
        "randomn-desk" => vec![InstanceEntry {
            n: Some(500),
            ..gen(FamilyName::Random, 3, 10)
        }],
        "randomk-desk" => (2..=9)
            .map(|d| InstanceEntry {
                n: Some(500),
                ..gen(FamilyName::Random, d, 10)
            })
            .collect(),
        "gridn-desk" => [5usize, 7, 9, 11, 13]
            .iter()
            .map(|&side| InstanceEntry {
                side: Some(side),
                ..gen(FamilyName::Grid, 3, 2)
            })
            .collect(),
        "gridk-medium-desk" => (2..=15)
            .map(|d| InstanceEntry {
                side: Some(9),
                ..gen(FamilyName::Grid, d, 1)
            })
            .collect(),
        "completen-desk" => [10usize, 20, 30, 40, 50]
            .iter()
            .map(|&n| InstanceEntry {
                n: Some(n),
                ..gen(FamilyName::Complete, 3, 2)
            })
            .collect(),
        "completek-desk" => (2..=9)
            .map(|d| InstanceEntry {
                n: Some(30),
                ..gen(FamilyName::Complete, d, 3)
            })
            .collect(),
        "corr-desk" => vec![InstanceEntry {
            n: Some(1000),
            density: Some(0.3),
            rho: Some(0.7),
            ..gen(FamilyName::CorrelatedRandom, 3, 30)
        }],
        _ => return None,
    };
    Some(suite)
}

pub const BUILTIN_SUITES: [&str; 7] = [
    "randomn-desk",
    "randomk-desk",
    "gridn-desk",
    "gridk-medium-desk",
    "completen-desk",
    "completek-desk",
    "corr-desk",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve_text(text: &str) -> Result<Resolved, ManifestError> {
        let m: Manifest = toml::from_str(text).unwrap();
        m.resolve(&Overrides::default())
    }

    #[test]
    fn minimal_manifest_defaults() {
        let r = resolve_text(
            "[[instance]]\nfamily = \"random\"\nn = 50\ndim = 2\n",
        )
        .unwrap();
        assert_eq!(r.instances.len(), 1);
        let ResolvedInstance { source, queries, .. } = &r.instances[0];
        assert_eq!(
            *source,
            InstanceSource::Generated(GenSpec::Random {
                n: 50,
                m: 500,
                dim: 2,
                costs: CostRange::default(),
                seed: 1,
            })
        );
        assert_eq!(*queries, QuerySource::Canonical);
        // Full default matrix: both LS variants under fifo, both NS ones.
        assert_eq!(
            r.matrix,
            vec![
                (Algo::Ls, PolicyName::Fifo),
                (Algo::LsTd, PolicyName::Fifo),
                (Algo::Ns, PolicyName::Fifo),
                (Algo::NsTd, PolicyName::Fifo),
            ]
        );
        assert_eq!(r.repetitions, 1);
        assert!(!r.measure_obsolete);
        assert!(r.time_limit.is_none());
    }

    #[test]
    fn seed_fanout_and_stems() {
        let r = resolve_text(
            "base_seed = 10\n[[instance]]\nfamily = \"grid\"\nside = 4\ndim = 2\nseed_count = 3\n",
        )
        .unwrap();
        let labels: Vec<_> = r.instances.iter().map(|i| i.label.as_str()).collect();
        assert_eq!(
            labels,
            vec!["grid-side4-d2-s10", "grid-side4-d2-s11", "grid-side4-d2-s12"]
        );
    }

    #[test]
    fn ns_is_not_crossed_with_policies() {
        let r = resolve_text(
            "queue_policies = [\"fifo\", \"lexdeque\"]\nalgos = [\"ls\", \"ns\"]\n[[instance]]\nfamily = \"random\"\nn = 20\ndim = 2\n",
        )
        .unwrap();
        assert_eq!(
            r.matrix,
            vec![
                (Algo::Ls, PolicyName::Fifo),
                (Algo::Ls, PolicyName::Lexdeque),
                (Algo::Ns, PolicyName::Fifo),
            ]
        );
    }

    #[test]
    fn overrides_win() {
        let m: Manifest = toml::from_str(
            "time_limit_sec = 5.0\n[[instance]]\nfamily = \"random\"\nn = 20\ndim = 2\n",
        )
        .unwrap();
        let r = m
            .resolve(&Overrides {
                seed: Some(99),
                time_limit_sec: Some(2.5),
                measure_obsolete: true,
                algos: Some(vec![Algo::NsTd]),
                queue_policy: Some(PolicyName::Lexdeque),
                out: Some(PathBuf::from("x.csv")),
            })
            .unwrap();
        assert_eq!(r.time_limit, Some(Duration::from_secs_f64(2.5)));
        assert!(r.measure_obsolete);
        assert_eq!(r.matrix, vec![(Algo::NsTd, PolicyName::Fifo)]);
        assert_eq!(r.out.as_deref(), Some(Path::new("x.csv")));
        match &r.instances[0].source {
            InstanceSource::Generated(spec) => assert_eq!(spec.seed(), 99),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn suite_expansion_counts() {
        for (suite, expected) in [
            ("gridk-medium-desk", 14),
            ("corr-desk", 30),
            ("randomk-desk", 80),
            ("randomn-desk", 10),
            ("gridn-desk", 10),
            ("completen-desk", 10),
            ("completek-desk", 24),
        ] {
            let r = resolve_text(&format!("suites = [\"{suite}\"]\n")).unwrap();
            assert_eq!(r.instances.len(), expected, "{suite}");
        }
        assert!(matches!(
            resolve_text("suites = [\"no-such-suite\"]\n"),
            Err(ManifestError::UnknownSuite(_))
        ));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(resolve_text(""), Err(ManifestError::NoInstances)));
        assert!(matches!(
            resolve_text("algos = []\n[[instance]]\nfamily = \"random\"\nn = 9\ndim = 2\n"),
            Err(ManifestError::NoAlgos)
        ));
        assert!(matches!(
            resolve_text(
                "time_limit_sec = 0.0\n[[instance]]\nfamily = \"random\"\nn = 9\ndim = 2\n"
            ),
            Err(ManifestError::BadTimeLimit(_))
        ));
        assert!(matches!(
            resolve_text("repetitions = 0\n[[instance]]\nfamily = \"random\"\nn = 9\ndim = 2\n"),
            Err(ManifestError::NoRepetitions)
        ));
        for text in [
            "[[instance]]\nn = 9\ndim = 2\n",                              // no family, no path
            "[[instance]]\npath = \"x.mosp\"\nfamily = \"random\"\n",      // both
            "[[instance]]\nfamily = \"random\"\ndim = 2\n",                // missing n
            "[[instance]]\nfamily = \"random\"\nn = 9\n",                  // missing dim
            "[[instance]]\nfamily = \"grid\"\nn = 9\ndim = 2\n",           // n on grid
            "[[instance]]\nfamily = \"random\"\nn = 9\ndim = 2\nrho = 0.5\n", // rho on random
            "[[instance]]\nfamily = \"random\"\nn = 9\ndim = 2\nseeds = [1]\nseed_count = 2\n",
            "[[instance]]\nfamily = \"random\"\nn = 9\ndim = 2\nquery_file = \"q\"\n",
        ] {
            assert!(
                matches!(resolve_text(text), Err(ManifestError::Entry { .. })),
                "accepted: {text}"
            );
        }
    }

    #[test]
    fn external_entries() {
        let r = resolve_text("[[instance]]\npath = \"inst/a.mosp\"\nquery_count = 5\n").unwrap();
        assert_eq!(
            r.instances[0].source,
            InstanceSource::External(PathBuf::from("inst/a.mosp"))
        );
        assert_eq!(r.instances[0].queries, QuerySource::Seeded { k: 5, seed: 1 });
        let r = resolve_text("[[instance]]\npath = \"a.mosp\"\n").unwrap();
        assert_eq!(r.instances[0].queries, QuerySource::Inline);
    }

    #[test]
    fn echo_entries_round_trip() {
        let r = resolve_text(
            "[[instance]]\nfamily = \"correlated_random\"\nn = 40\ndim = 3\nquery_count = 2\n",
        )
        .unwrap();
        let echoed = entry_for(&r.instances[0]);
        let again = resolve_entry(&echoed, 0, 1).unwrap();
        assert_eq!(again[0].source, r.instances[0].source);
        assert_eq!(again[0].queries, r.instances[0].queries);
    }

    #[test]
    fn algo_and_policy_names_parse_back() {
        for algo in Algo::ALL {
            assert_eq!(algo.name().parse::<Algo>().unwrap(), algo);
        }
        for p in [PolicyName::Fifo, PolicyName::Lexdeque] {
            assert_eq!(p.name().parse::<PolicyName>().unwrap(), p);
        }
        assert!("dijkstra".parse::<Algo>().is_err());
        assert!("lifo".parse::<PolicyName>().is_err());
    }
}
