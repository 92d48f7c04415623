//! Correlated integer cost vectors through a Gaussian copula.
//!
//! A draw works in three pinned steps: sample d i.i.d. standard normals
//! (Marsaglia's polar method — only `ln` and `sqrt`, no trig), correlate
//! them through the lower-triangular factor of the equicorrelation matrix,
//! then map each coordinate through the standard normal CDF and quantize the
//! resulting uniform onto the integer cost range.
//!
//! For uniforms obtained this way the pairwise correlation of two cost
//! components is the rank correlation of the underlying normals,
//! (6/pi)*asin(rho/2) — about 0.683 for rho = 0.7.

use super::rng::SplitMix64;
use super::GenError;
use crate::graph::Cost;
use crate::numeric::standard_normal_cdf;

/// Lower-triangular factor L with L*L^T equal to the d x d matrix with unit
/// diagonal and `rho` off-diagonal. Dense row-major; d stays small.
fn equicorrelation_factor(dim: usize, rho: f64) -> Result<Vec<f64>, GenError> {
    // Positive definiteness of the equicorrelation matrix:
    // eigenvalues are 1 + (d-1)*rho and 1 - rho.
    let lower = if dim > 1 {
        -1.0 / (dim as f64 - 1.0)
    } else {
        f64::NEG_INFINITY
    };
    if !(rho > lower && rho < 1.0) || !rho.is_finite() {
        return Err(GenError::BadCorrelation { rho, dim });
    }
    let mut a = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            a[i * dim + j] = if i == j { 1.0 } else { rho };
        }
    }
    // Cholesky-Crout, writing the factor over the lower triangle.
    let mut l = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut sum = a[i * dim + j];
            for k in 0..j {
                sum -= l[i * dim + k] * l[j * dim + k];
            }
            if i == j {
                debug_assert!(sum > 0.0, "equicorrelation matrix not positive definite");
                l[i * dim + j] = sum.sqrt();
            } else {
                l[i * dim + j] = sum / l[j * dim + j];
            }
        }
    }
    Ok(l)
}

/// Draws correlated cost vectors. One sampler per instance; consuming draws
/// in arc order keeps the output a pure function of the seed stream.
pub struct CorrelatedCostSampler {
    dim: usize,
    factor: Vec<f64>,
    rng: SplitMix64,
    spare_normal: Option<f64>,
    z: Vec<f64>,
}

impl CorrelatedCostSampler {
    pub fn new(dim: usize, rho: f64, rng: SplitMix64) -> Result<Self, GenError> {
        if dim == 0 {
            return Err(GenError::ZeroDimension);
        }
        Ok(CorrelatedCostSampler {
            dim,
            factor: equicorrelation_factor(dim, rho)?,
            rng,
            spare_normal: None,
            z: vec![0.0; dim],
        })
    }

    fn standard_normal(&mut self) -> f64 {
        if let Some(v) = self.spare_normal.take() {
            return v;
        }
        loop {
            let u = 2.0 * self.rng.unit_f64() - 1.0;
            let v = 2.0 * self.rng.unit_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * k);
                return u * k;
            }
        }
    }

    /// Fills `out` with one cost vector, each component in `lo..=hi`.
    pub fn draw_costs(&mut self, lo: Cost, hi: Cost, out: &mut [Cost]) {
        debug_assert_eq!(out.len(), self.dim);
        for i in 0..self.dim {
            self.z[i] = self.standard_normal();
        }
        let width = (hi - lo + 1) as f64;
        for i in 0..self.dim {
            // Row i of the triangular factor correlates the first i+1 draws.
            let mut zi = 0.0;
            for k in 0..=i {
                zi += self.factor[i * self.dim + k] * self.z[k];
            }
            let u = standard_normal_cdf(zi);
            let c = lo + (u * width) as Cost;
            out[i] = c.min(hi);
        }
    }
}
