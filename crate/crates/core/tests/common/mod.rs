#![allow(dead_code)]

use fracpath::fbm::fbm_covariance;
use fracpath::stats::mean_estimate;
use fracpath::SampledPath;

/// Largest `|sample - analytic| / SE` over the covariance entries of the
/// nonzero grid points. The mean is known to be zero.
pub fn covariance_z_max(paths: &[SampledPath], hurst: f64) -> f64 {
    let times = paths[0].times().to_vec();
    let n = times.len();
    let mut worst: f64 = 0.0;
    for i in 1..n {
        for j in i..n {
            let products: Vec<f64> = paths
                .iter()
                .map(|p| p.values()[i] * p.values()[j])
                .collect();
            let est = mean_estimate(&products);
            let exact = fbm_covariance(times[i], times[j], hurst).unwrap();
            worst = worst.max((est.mean - exact).abs() / est.std_err);
        }
    }
    worst
}

/// Random piecewise linear corpus on `[0, 1]` from a seeded stream.
pub fn random_pl(seed: u64, index: u64) -> fracpath::bv::PiecewiseLinearFn {
    fracpath::bv::random_pl(&mut fracpath::rng::stream(seed, index), 1.0, 40)
}
