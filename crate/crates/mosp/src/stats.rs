//! Small statistics toolbox for paired benchmark comparisons.
//!
//! Quantiles use the type-7 (linear interpolation, p(k) = (k-1)/(n-1))
//! definition so numbers line up with what `quantile()` prints in an R
//! session. The Wilcoxon signed-rank test is exact by default up to
//! [`EXACT_LIMIT`] non-zero differences — dynamic programming over the
//! conditional permutation distribution, which stays exact under tied
//! ranks — and a tie-corrected normal approximation with continuity
//! correction beyond.

use crate::numeric::standard_normal_cdf;
use thiserror::Error;

/// Largest `n_used` for which the automatic method picks the exact test.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("no samples")]
    Empty,
    #[error("paired samples differ in length: {xs} vs {ys}")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("all paired differences are zero; the test is undefined")]
    AllTied,
    #[error("samples contain a non-finite value")]
    NonFinite,
    #[error("exact method supports at most 63 non-zero differences, got {0}")]
    ExactTooLarge(usize),
}

/// Five-number summary plus mean of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl Summary {
    pub fn from_samples(samples: &[f64]) -> Result<Self, StatsError> {
        if samples.is_empty() {
            return Err(StatsError::Empty);
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(StatsError::NonFinite);
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Summary {
            count: sorted.len(),
            min: sorted[0],
            q1: quantile_type7(&sorted, 0.25),
            median: quantile_type7(&sorted, 0.5),
            q3: quantile_type7(&sorted, 0.75),
            max: sorted[sorted.len() - 1],
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        })
    }
}

/// Type-7 quantile of an ascending-sorted, non-empty slice.
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    assert!((0.0..=1.0).contains(&p), "p outside [0, 1]");
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    TwoSided,
    /// x tends to exceed y: large W+ is evidence.
    Greater,
    /// x tends to fall below y: small W+ is evidence.
    Less,
}

impl Alternative {
    pub fn name(self) -> &'static str {
        match self {
            Alternative::TwoSided => "two_sided",
            Alternative::Greater => "greater",
            Alternative::Less => "less",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    NormalApprox,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::NormalApprox => "normal_approx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    /// Pairs remaining after zero differences are dropped.
    pub n_used: usize,
    /// Sum of ranks of positive differences (midranks under ties).
    pub w_plus: f64,
    pub p_value: f64,
    pub alternative: Alternative,
    pub method: Method,
}

/// Paired Wilcoxon signed-rank test on `xs[i] - ys[i]`. Zero differences
/// are dropped (Wilcoxon's original treatment); `|differences|` are ranked
/// with average ranks for ties. Picks the exact distribution for small
/// `n_used`, the normal approximation otherwise.
pub fn wilcoxon_signed_rank(
    xs: &[f64],
    ys: &[f64],
    alternative: Alternative,
) -> Result<WilcoxonResult, StatsError> {
    let ranked = rank_differences(xs, ys)?;
    let method = if ranked.n_used <= EXACT_LIMIT {
        Method::Exact
    } else {
        Method::NormalApprox
    };
    finish(ranked, alternative, method)
}

/// Same test with the method forced; useful for comparing the two tails of
/// the implementation against each other.
pub fn wilcoxon_signed_rank_with_method(
    xs: &[f64],
    ys: &[f64],
    alternative: Alternative,
    method: Method,
) -> Result<WilcoxonResult, StatsError> {
    finish(rank_differences(xs, ys)?, alternative, method)
}

struct RankedDiffs {
    n_used: usize,
    /// 2x the midrank of each non-zero |difference|; doubling keeps the
    /// half-integer midranks in integer arithmetic for the exact DP.
    doubled_ranks: Vec<u64>,
    /// 2x W+.
    w_plus_doubled: u64,
    tie_group_sizes: Vec<usize>,
}

fn rank_differences(xs: &[f64], ys: &[f64]) -> Result<RankedDiffs, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    if xs.is_empty() {
        return Err(StatsError::Empty);
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let diffs: Vec<f64> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    let n_used = diffs.len();
    if n_used == 0 {
        return Err(StatsError::AllTied);
    }

    let mut order: Vec<usize> = (0..n_used).collect();
    order.sort_by(|&a, &b| diffs[a].abs().partial_cmp(&diffs[b].abs()).unwrap());

    let mut doubled_ranks = vec![0u64; n_used];
    let mut tie_group_sizes = Vec::new();
    let mut i = 0;
    while i < n_used {
        let mut j = i;
        while j + 1 < n_used && diffs[order[j + 1]].abs() == diffs[order[i]].abs() {
            j += 1;
        }
        // Ranks i+1..=j+1 averaged; the doubled midrank is i + j + 2 exactly.
        let doubled = (i + j + 2) as u64;
        for k in i..=j {
            doubled_ranks[order[k]] = doubled;
        }
        tie_group_sizes.push(j - i + 1);
        i = j + 1;
    }

    let w_plus_doubled = diffs
        .iter()
        .zip(&doubled_ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    Ok(RankedDiffs {
        n_used,
        doubled_ranks,
        w_plus_doubled,
        tie_group_sizes,
    })
}

fn finish(
    ranked: RankedDiffs,
    alternative: Alternative,
    method: Method,
) -> Result<WilcoxonResult, StatsError> {
    let (p_less, p_greater) = match method {
        Method::Exact => exact_tails(&ranked)?,
        Method::NormalApprox => normal_tails(&ranked),
    };
    let p_value = match alternative {
        Alternative::Less => p_less,
        Alternative::Greater => p_greater,
        Alternative::TwoSided => (2.0 * p_less.min(p_greater)).min(1.0),
    };
    Ok(WilcoxonResult {
        n_used: ranked.n_used,
        w_plus: ranked.w_plus_doubled as f64 / 2.0,
        p_value,
        alternative,
        method,
    })
}

/// (P(W+ <= w), P(W+ >= w)) over all 2^n sign assignments, conditional on
/// the observed ranks. Subset-sum counting over doubled ranks; subset
/// counts fit u64 for n <= 63.
fn exact_tails(ranked: &RankedDiffs) -> Result<(f64, f64), StatsError> {
    let n = ranked.n_used;
    if n > 63 {
        return Err(StatsError::ExactTooLarge(n));
    }
    let total: u64 = ranked.doubled_ranks.iter().sum();
    let mut counts = vec![0u64; total as usize + 1];
    counts[0] = 1;
    let mut reach = 0usize;
    for &r in &ranked.doubled_ranks {
        let r = r as usize;
        reach += r;
        for s in (r..=reach).rev() {
            counts[s] += counts[s - r];
        }
    }
    let w = ranked.w_plus_doubled as usize;
    let below_incl: u64 = counts[..=w].iter().sum();
    let above_incl: u64 = counts[w..].iter().sum();
    let denom = (1u64 << n) as f64;
    Ok((below_incl as f64 / denom, above_incl as f64 / denom))
}

/// Tie-corrected normal approximation with continuity correction on each
/// tail. Variance stays positive for every n >= 1: the tie term removes at
/// most (n^3 - n)/48, half the untied variance.
fn normal_tails(ranked: &RankedDiffs) -> (f64, f64) {
    let n = ranked.n_used as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    for &t in &ranked.tie_group_sizes {
        let t = t as f64;
        var -= (t * t * t - t) / 48.0;
    }
    let sd = var.sqrt();
    let w_plus = ranked.w_plus_doubled as f64 / 2.0;
    let p_less = standard_normal_cdf((w_plus + 0.5 - mean) / sd);
    let p_greater = 1.0 - standard_normal_cdf((w_plus - 0.5 - mean) / sd);
    (p_less, p_greater)
}
