//! Shows what the Gaussian-copula cost sampler produces: draws a large
//! sample at several correlation levels and prints the empirical Pearson
//! correlation between cost components next to the marginal histogram.
//!
//!     cargo run --example correlated_costs

use mosp::gen::{derive_stream, CorrelatedCostSampler};

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    cov / (va * vb).sqrt()
}

fn main() {
    const DRAWS: usize = 50_000;
    for rho in [0.0, 0.4, 0.7, 0.95] {
        let mut sampler =
            CorrelatedCostSampler::new(2, rho, derive_stream(99, &[rho.to_bits()])).unwrap();
        let mut xs = Vec::with_capacity(DRAWS);
        let mut ys = Vec::with_capacity(DRAWS);
        let mut hist = [0u32; 10];
        let mut buf = [0u64; 2];
        for _ in 0..DRAWS {
            sampler.draw_costs(1, 1000, &mut buf);
            xs.push(buf[0] as f64);
            ys.push(buf[1] as f64);
            hist[((buf[0] - 1) / 100) as usize] += 1;
        }

        // The copula couples ranks, so the Pearson correlation of the
        // uniform margins lands a touch below the latent rho.
        let bars: Vec<String> = hist
            .iter()
            .map(|&c| "#".repeat((c as usize * 60) / DRAWS))
            .collect();
        println!(
            "latent rho {rho:.2}: empirical pearson {:+.3}, first-component deciles {}",
            pearson(&xs, &ys),
            bars.join("|")
        );
    }
}
