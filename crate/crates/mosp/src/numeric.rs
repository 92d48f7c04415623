//! Small pinned numeric routines shared by the generator and the statistics
//! module. Kept in-repo so the same bits are produced regardless of which
//! math library the platform ships.

/// Standard normal CDF via the Zelen & Severo rational approximation
/// (Abramowitz & Stegun 26.2.17): absolute error below 7.5e-8 everywhere.
///
/// Phi(x) = 1 - phi(x) * (b1*t + b2*t^2 + b3*t^3 + b4*t^4 + b5*t^5),
/// t = 1 / (1 + p*x), for x >= 0; symmetry handles x < 0.
pub(crate) fn standard_normal_cdf(x: f64) -> f64 {
    const P: f64 = 0.231_641_9;
    const B1: f64 = 0.319_381_530;
    const B2: f64 = -0.356_563_782;
    const B3: f64 = 1.781_477_937;
    const B4: f64 = -1.821_255_978;
    const B5: f64 = 1.330_274_429;

    let ax = x.abs();
    let t = 1.0 / (1.0 + P * ax);
    let poly = t * (B1 + t * (B2 + t * (B3 + t * (B4 + t * B5))));
    let pdf = (-0.5 * ax * ax).exp() * 0.398_942_280_401_432_7; // 1/sqrt(2*pi)
    let upper = pdf * poly;
    if x >= 0.0 {
        1.0 - upper
    } else {
        upper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_reference_values() {
        // Reference values to 1e-7 (well within the approximation bound).
        let cases = [
            (0.0, 0.5),
            (1.0, 0.841_344_746_1),
            (-1.0, 0.158_655_253_9),
            (1.959_963_985, 0.975),
            (-2.575_829_304, 0.005),
            (3.0, 0.998_650_101_97),
            (-4.0, 3.167_124_183e-5),
        ];
        for (x, want) in cases {
            let got = standard_normal_cdf(x);
            assert!(
                (got - want).abs() < 1.5e-7,
                "Phi({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn cdf_is_monotone_and_symmetric() {
        let mut prev = 0.0;
        for i in -400..=400 {
            let x = i as f64 / 50.0;
            let v = standard_normal_cdf(x);
            assert!(v >= prev);
            prev = v;
            let sym = standard_normal_cdf(-x);
            assert!((v + sym - 1.0).abs() < 2e-7, "symmetry at {x}");
        }
    }
}
