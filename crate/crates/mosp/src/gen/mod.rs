//! Seeded instance generators.
//!
//! Every family is a pure function of its parameters and a 64-bit seed:
//! structure, costs and query endpoints come from separate derived streams
//! (see [`rng::derive_stream`]), so e.g. changing the cost range never
//! perturbs the arc structure. All defaults follow the usual benchmark
//! conventions: integer costs uniform on 1..=1000, arc budget 10n for the
//! sparse random family, density 0.3 and correlation 0.7 for the correlated
//! family.

pub mod copula;
pub mod rng;

pub use copula::CorrelatedCostSampler;
pub use rng::{derive_stream, SplitMix64};

use crate::graph::{Cost, Graph};
use crate::io::QuerySet;
use std::collections::HashSet;
use thiserror::Error;

pub const DEFAULT_COST_LO: Cost = 1;
pub const DEFAULT_COST_HI: Cost = 1000;
pub const DEFAULT_DENSITY: f64 = 0.3;
pub const DEFAULT_RHO: f64 = 0.7;

/// Stream-derivation tags; part of the pinned output format.
mod tag {
    pub const RANDOM: u64 = 1;
    pub const COMPLETE: u64 = 2;
    pub const GRID: u64 = 3;
    pub const CORRELATED: u64 = 4;
    pub const STRUCTURE: u64 = 100;
    pub const COSTS: u64 = 101;
    pub const QUERIES: u64 = 102;
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("family needs at least {min} nodes, got {n}")]
    TooFewNodes { n: usize, min: usize },
    #[error("arc budget {m} below node count {n}; the backbone cycle needs m >= n")]
    TooFewArcs { m: usize, n: usize },
    #[error("arc budget {m} exceeds the {max} distinct non-loop arcs on {n} nodes")]
    TooManyArcs { m: usize, n: usize, max: usize },
    #[error("empty cost range: lo {lo} > hi {hi}")]
    EmptyCostRange { lo: Cost, hi: Cost },
    #[error("density must lie in (0, 1], got {0}")]
    BadDensity(f64),
    #[error("correlation {rho} outside the feasible open interval (-1/(d-1), 1) for d = {dim}")]
    BadCorrelation { rho: f64, dim: usize },
    #[error("cost dimension must be at least 1")]
    ZeroDimension,
    #[error("node count too large for 32-bit indices")]
    TooManyNodes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Complete,
    Grid,
    CorrelatedRandom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Complete => "complete",
            Family::Grid => "grid",
            Family::CorrelatedRandom => "correlated_random",
        }
    }
}

/// Inclusive integer cost range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostRange {
    pub lo: Cost,
    pub hi: Cost,
}

impl Default for CostRange {
    fn default() -> Self {
        CostRange {
            lo: DEFAULT_COST_LO,
            hi: DEFAULT_COST_HI,
        }
    }
}

impl CostRange {
    fn validate(&self) -> Result<(), GenError> {
        if self.lo > self.hi {
            return Err(GenError::EmptyCostRange {
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(())
    }
}

/// A generated instance: the graph plus the family's canonical query.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub source: u32,
    pub target: u32,
}

/// Full recipe for one instance; `generate` is deterministic in all fields.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Random {
        n: usize,
        m: usize,
        dim: usize,
        costs: CostRange,
        seed: u64,
    },
    Complete {
        n: usize,
        dim: usize,
        costs: CostRange,
        seed: u64,
    },
    Grid {
        side: usize,
        dim: usize,
        costs: CostRange,
        seed: u64,
    },
    CorrelatedRandom {
        n: usize,
        density: f64,
        dim: usize,
        rho: f64,
        costs: CostRange,
        seed: u64,
    },
}

impl GenSpec {
    pub fn family(&self) -> Family {
        match self {
            GenSpec::Random { .. } => Family::Random,
            GenSpec::Complete { .. } => Family::Complete,
            GenSpec::Grid { .. } => Family::Grid,
            GenSpec::CorrelatedRandom { .. } => Family::CorrelatedRandom,
        }
    }

    pub fn seed(&self) -> u64 {
        match *self {
            GenSpec::Random { seed, .. }
            | GenSpec::Complete { seed, .. }
            | GenSpec::Grid { seed, .. }
            | GenSpec::CorrelatedRandom { seed, .. } => seed,
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            GenSpec::Random { dim, .. }
            | GenSpec::Complete { dim, .. }
            | GenSpec::Grid { dim, .. }
            | GenSpec::CorrelatedRandom { dim, .. } => dim,
        }
    }

    pub fn generate(&self) -> Result<Instance, GenError> {
        match *self {
            GenSpec::Random {
                n,
                m,
                dim,
                costs,
                seed,
            } => gen_random(n, m, dim, costs, seed),
            GenSpec::Complete { n, dim, costs, seed } => gen_complete(n, dim, costs, seed),
            GenSpec::Grid {
                side,
                dim,
                costs,
                seed,
            } => gen_grid(side, dim, costs, seed),
            GenSpec::CorrelatedRandom {
                n,
                density,
                dim,
                rho,
                costs,
                seed,
            } => gen_correlated_random(n, density, dim, rho, costs, seed),
        }
    }

    /// Deterministic file stem, e.g. `random-n500-m5000-d3-s7`.
    pub fn file_stem(&self) -> String {
        match *self {
            GenSpec::Random { n, m, dim, seed, .. } => {
                format!("random-n{n}-m{m}-d{dim}-s{seed}")
            }
            GenSpec::Complete { n, dim, seed, .. } => format!("complete-n{n}-d{dim}-s{seed}"),
            GenSpec::Grid { side, dim, seed, .. } => format!("grid-side{side}-d{dim}-s{seed}"),
            GenSpec::CorrelatedRandom {
                n,
                density,
                dim,
                rho,
                seed,
                ..
            } => format!(
                "corr-n{n}-p{:03}-d{dim}-r{:03}-s{seed}",
                (density * 100.0).round() as u64,
                (rho * 100.0).round() as u64
            ),
        }
    }
}

fn common_checks(n: usize, dim: usize, costs: CostRange, min_nodes: usize) -> Result<(), GenError> {
    if dim == 0 {
        return Err(GenError::ZeroDimension);
    }
    if n < min_nodes {
        return Err(GenError::TooFewNodes { n, min: min_nodes });
    }
    if n > u32::MAX as usize {
        return Err(GenError::TooManyNodes);
    }
    costs.validate()
}

fn uniform_costs(rng: &mut SplitMix64, costs: CostRange, dim: usize) -> Vec<Cost> {
    (0..dim).map(|_| rng.next_in_range(costs.lo, costs.hi)).collect()
}

fn arc_key(n: usize, tail: u32, head: u32) -> u64 {
    tail as u64 * n as u64 + head as u64
}

/// Sparse strongly connected random digraph: a backbone cycle through a
/// seeded permutation of all nodes plus `m - n` further distinct arcs by
/// rejection sampling. Source and target are the permutation's first and
/// last node, so the canonical query spans the whole cycle.
pub fn gen_random(
    n: usize,
    m: usize,
    dim: usize,
    costs: CostRange,
    seed: u64,
) -> Result<Instance, GenError> {
    common_checks(n, dim, costs, 2)?;
    let max = n * (n - 1);
    if m < n {
        return Err(GenError::TooFewArcs { m, n });
    }
    if m > max {
        return Err(GenError::TooManyArcs { m, n, max });
    }
    let base_tags = [tag::RANDOM, n as u64, m as u64, dim as u64];
    let structure = random_structure(n, m, seed, &base_tags);
    let mut cost_rng = derive_stream(seed, &with_purpose(&base_tags, tag::COSTS));
    let arcs: Vec<_> = structure
        .arcs
        .into_iter()
        .map(|(t, h)| (t, h, uniform_costs(&mut cost_rng, costs, dim)))
        .collect();
    Ok(Instance {
        graph: Graph::build(n, dim, &arcs).expect("generator emits valid arcs"),
        source: structure.source,
        target: structure.target,
    })
}

struct RandomStructure {
    arcs: Vec<(u32, u32)>,
    source: u32,
    target: u32,
}

fn with_purpose(tags: &[u64], purpose: u64) -> Vec<u64> {
    let mut v = tags.to_vec();
    v.push(purpose);
    v
}

fn random_structure(n: usize, m: usize, seed: u64, base_tags: &[u64]) -> RandomStructure {
    let mut rng = derive_stream(seed, &with_purpose(base_tags, tag::STRUCTURE));
    let mut perm: Vec<u32> = (0..n as u32).collect();
    rng.shuffle(&mut perm);

    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(m);
    let mut seen: HashSet<u64> = HashSet::with_capacity(m * 2);
    for i in 0..n {
        let t = perm[i];
        let h = perm[(i + 1) % n];
        arcs.push((t, h));
        seen.insert(arc_key(n, t, h));
    }
    while arcs.len() < m {
        let t = rng.next_below(n as u64) as u32;
        let h = rng.next_below(n as u64) as u32;
        if t == h || !seen.insert(arc_key(n, t, h)) {
            continue;
        }
        arcs.push((t, h));
    }
    RandomStructure {
        arcs,
        source: perm[0],
        target: perm[n - 1],
    }
}

/// All n(n-1) ordered pairs, row-major. Source 0, target n-1.
pub fn gen_complete(
    n: usize,
    dim: usize,
    costs: CostRange,
    seed: u64,
) -> Result<Instance, GenError> {
    common_checks(n, dim, costs, 2)?;
    let base_tags = [tag::COMPLETE, n as u64, dim as u64];
    let mut cost_rng = derive_stream(seed, &with_purpose(&base_tags, tag::COSTS));
    let mut arcs = Vec::with_capacity(n * (n - 1));
    for t in 0..n as u32 {
        for h in 0..n as u32 {
            if t != h {
                arcs.push((t, h, uniform_costs(&mut cost_rng, costs, dim)));
            }
        }
    }
    Ok(Instance {
        graph: Graph::build(n, dim, &arcs).expect("generator emits valid arcs"),
        source: 0,
        target: n as u32 - 1,
    })
}

/// Square grid with antiparallel arcs between every horizontally or
/// vertically adjacent pair. Node (r, c) is r*side + c; source is the
/// top-left corner, target the bottom-right.
pub fn gen_grid(side: usize, dim: usize, costs: CostRange, seed: u64) -> Result<Instance, GenError> {
    if side < 2 {
        return Err(GenError::TooFewNodes { n: side, min: 2 });
    }
    let n = side * side;
    common_checks(n, dim, costs, 4)?;
    let base_tags = [tag::GRID, side as u64, dim as u64];
    let mut cost_rng = derive_stream(seed, &with_purpose(&base_tags, tag::COSTS));
    let mut arcs = Vec::with_capacity(4 * side * (side - 1));
    for r in 0..side {
        for c in 0..side {
            let u = (r * side + c) as u32;
            if c + 1 < side {
                let v = u + 1;
                arcs.push((u, v, uniform_costs(&mut cost_rng, costs, dim)));
                arcs.push((v, u, uniform_costs(&mut cost_rng, costs, dim)));
            }
            if r + 1 < side {
                let v = u + side as u32;
                arcs.push((u, v, uniform_costs(&mut cost_rng, costs, dim)));
                arcs.push((v, u, uniform_costs(&mut cost_rng, costs, dim)));
            }
        }
    }
    Ok(Instance {
        graph: Graph::build(n, dim, &arcs).expect("generator emits valid arcs"),
        source: 0,
        target: n as u32 - 1,
    })
}

/// Random structure at `density * n * (n-1)` arcs with cost components
/// coupled through a Gaussian copula at equicorrelation `rho`.
pub fn gen_correlated_random(
    n: usize,
    density: f64,
    dim: usize,
    rho: f64,
    costs: CostRange,
    seed: u64,
) -> Result<Instance, GenError> {
    common_checks(n, dim, costs, 2)?;
    if !(density > 0.0 && density <= 1.0) {
        return Err(GenError::BadDensity(density));
    }
    let max = n * (n - 1);
    let m = (density * max as f64).floor() as usize;
    if m < n {
        return Err(GenError::TooFewArcs { m, n });
    }
    let rho_bits = rho.to_bits();
    let base_tags = [tag::CORRELATED, n as u64, m as u64, dim as u64, rho_bits];
    let structure = random_structure(n, m, seed, &base_tags);
    let cost_rng = derive_stream(seed, &with_purpose(&base_tags, tag::COSTS));
    let mut sampler = CorrelatedCostSampler::new(dim, rho, cost_rng)?;
    let mut buf = vec![0; dim];
    let arcs: Vec<_> = structure
        .arcs
        .into_iter()
        .map(|(t, h)| {
            sampler.draw_costs(costs.lo, costs.hi, &mut buf);
            (t, h, buf.clone())
        })
        .collect();
    Ok(Instance {
        graph: Graph::build(n, dim, &arcs).expect("generator emits valid arcs"),
        source: structure.source,
        target: structure.target,
    })
}

/// `k` seeded source/target pairs with distinct endpoints, for benchmark
/// queries on any graph with at least two nodes.
pub fn gen_queries(node_count: usize, k: usize, seed: u64) -> Result<QuerySet, GenError> {
    if node_count < 2 {
        return Err(GenError::TooFewNodes {
            n: node_count,
            min: 2,
        });
    }
    let mut rng = derive_stream(seed, &[tag::QUERIES, node_count as u64, k as u64]);
    let mut pairs = Vec::with_capacity(k);
    while pairs.len() < k {
        let s = rng.next_below(node_count as u64) as u32;
        let t = rng.next_below(node_count as u64) as u32;
        if s != t {
            pairs.push((s, t));
        }
    }
    Ok(QuerySet { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_family_structure() {
        let inst = gen_random(20, 60, 2, CostRange::default(), 7).unwrap();
        let g = &inst.graph;
        assert_eq!(g.node_count(), 20);
        assert_eq!(g.arc_count(), 60);
        // No self-loops (Graph::build would have rejected), no duplicates.
        let mut seen = HashSet::new();
        for (t, h, c) in g.arcs() {
            assert!(seen.insert((t, h)), "duplicate arc {t}->{h}");
            assert!(c.iter().all(|&x| (1..=1000).contains(&x)));
        }
        assert_ne!(inst.source, inst.target);
    }

    #[test]
    fn random_family_minimum_budget_is_the_cycle() {
        let inst = gen_random(8, 8, 2, CostRange::default(), 3).unwrap();
        assert_eq!(inst.graph.arc_count(), 8);
        // Every node has out-degree exactly 1: the backbone cycle.
        for u in 0..8 {
            assert_eq!(inst.graph.out_degree(u), 1);
        }
    }

    #[test]
    fn random_family_budget_validation() {
        assert_eq!(
            gen_random(5, 4, 2, CostRange::default(), 1).unwrap_err(),
            GenError::TooFewArcs { m: 4, n: 5 }
        );
        assert_eq!(
            gen_random(5, 21, 2, CostRange::default(), 1).unwrap_err(),
            GenError::TooManyArcs {
                m: 21,
                n: 5,
                max: 20
            }
        );
    }

    #[test]
    fn complete_family_has_all_ordered_pairs() {
        let inst = gen_complete(6, 3, CostRange::default(), 5).unwrap();
        assert_eq!(inst.graph.arc_count(), 30);
        assert_eq!((inst.source, inst.target), (0, 5));
        for u in 0..6 {
            assert_eq!(inst.graph.out_degree(u), 5);
        }
    }

    #[test]
    fn grid_family_shape() {
        // side 21 gives the classic 441-node square grid.
        let inst = gen_grid(21, 3, CostRange::default(), 1).unwrap();
        assert_eq!(inst.graph.node_count(), 441);
        assert_eq!(inst.graph.arc_count(), 4 * 21 * 20);
        assert_eq!((inst.source, inst.target), (0, 440));
        // Interior node degree 4, corner degree 2.
        assert_eq!(inst.graph.out_degree(21 + 1), 4);
        assert_eq!(inst.graph.out_degree(0), 2);
        // Antiparallel pairs: for every arc the reverse exists.
        let arcs: HashSet<(u32, u32)> = inst.graph.arcs().map(|(t, h, _)| (t, h)).collect();
        for &(t, h) in &arcs {
            assert!(arcs.contains(&(h, t)));
        }
    }

    #[test]
    fn correlated_family_arc_budget_from_density() {
        let inst =
            gen_correlated_random(30, 0.3, 3, 0.7, CostRange::default(), 2).unwrap();
        assert_eq!(inst.graph.arc_count(), (0.3 * (30.0 * 29.0)) as usize);
    }

    #[test]
    fn correlated_family_validates_inputs() {
        assert_eq!(
            gen_correlated_random(10, 0.0, 3, 0.7, CostRange::default(), 1).unwrap_err(),
            GenError::BadDensity(0.0)
        );
        assert!(matches!(
            gen_correlated_random(10, 0.5, 3, 1.0, CostRange::default(), 1).unwrap_err(),
            GenError::BadCorrelation { .. }
        ));
        // Density so low the budget undercuts the backbone cycle.
        assert!(matches!(
            gen_correlated_random(10, 0.05, 3, 0.7, CostRange::default(), 1).unwrap_err(),
            GenError::TooFewArcs { .. }
        ));
    }

    #[test]
    fn generation_is_deterministic() {
        for spec in [
            GenSpec::Random {
                n: 15,
                m: 50,
                dim: 3,
                costs: CostRange::default(),
                seed: 99,
            },
            GenSpec::Grid {
                side: 4,
                dim: 2,
                costs: CostRange::default(),
                seed: 99,
            },
            GenSpec::CorrelatedRandom {
                n: 12,
                density: 0.5,
                dim: 3,
                rho: 0.7,
                costs: CostRange::default(),
                seed: 99,
            },
        ] {
            let a = spec.generate().unwrap();
            let b = spec.generate().unwrap();
            let arcs_a: Vec<_> = a.graph.arcs().map(|(t, h, c)| (t, h, c.to_vec())).collect();
            let arcs_b: Vec<_> = b.graph.arcs().map(|(t, h, c)| (t, h, c.to_vec())).collect();
            assert_eq!(arcs_a, arcs_b, "{spec:?}");
            assert_eq!((a.source, a.target), (b.source, b.target));
        }
    }

    #[test]
    fn different_seeds_differ() {
        let a = gen_random(15, 50, 2, CostRange::default(), 1).unwrap();
        let b = gen_random(15, 50, 2, CostRange::default(), 2).unwrap();
        let arcs_a: Vec<_> = a.graph.arcs().map(|(t, h, _)| (t, h)).collect();
        let arcs_b: Vec<_> = b.graph.arcs().map(|(t, h, _)| (t, h)).collect();
        assert_ne!(arcs_a, arcs_b);
    }

    // Frozen fingerprint of the seeded stream: catches accidental changes to
    // the generator pipeline, which would silently re-randomize every
    // benchmark suite.
    #[test]
    fn pinned_instance_fingerprint() {
        let inst = gen_random(6, 10, 2, CostRange::default(), 42).unwrap();
        let arcs: Vec<_> = inst.graph.arcs().map(|(t, h, c)| (t, h, c.to_vec())).collect();
        let cost_sum: u64 = arcs.iter().flat_map(|(_, _, c)| c.iter()).sum();
        let structure: Vec<(u32, u32)> = arcs.iter().map(|(t, h, _)| (*t, *h)).collect();
        assert_eq!(
            structure,
            pinned_structure_for_seed_42(),
            "structure stream changed"
        );
        assert_eq!(cost_sum, pinned_cost_sum_for_seed_42(), "cost stream changed");
    }

    // Captured from the initial implementation; arcs() groups by tail.
    fn pinned_structure_for_seed_42() -> Vec<(u32, u32)> {
        vec![
            (0, 3),
            (0, 1),
            (0, 4),
            (1, 5),
            (1, 3),
            (2, 4),
            (3, 1),
            (4, 0),
            (4, 3),
            (5, 2),
        ]
    }

    fn pinned_cost_sum_for_seed_42() -> u64 {
        10777
    }

    #[test]
    fn queries_are_valid_and_deterministic() {
        let a = gen_queries(50, 20, 9).unwrap();
        let b = gen_queries(50, 20, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pairs.len(), 20);
        for &(s, t) in &a.pairs {
            assert!(s < 50 && t < 50 && s != t);
        }
    }
}
