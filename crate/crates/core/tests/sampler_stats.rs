mod common;

use fracpath::fbm::{CholeskySampler, CirculantSampler};
use fracpath::rng::stream;
use fracpath::stats::{ks_critical_value, ks_statistic, mean_estimate};
use fracpath::SampledPath;

fn draws(n: u64, f: impl Fn(u64) -> SampledPath) -> Vec<SampledPath> {
    (0..n).map(f).collect()
}

#[test]
fn single_step_variance() {
    for hurst in [0.2, 0.5, 0.8] {
        let horizon = 0.7f64;
        let s = CirculantSampler::new(hurst, horizon, 1).unwrap();
        let squares: Vec<f64> = (0..100_000)
            .map(|i| s.sample(&mut stream(11, i)).last().powi(2))
            .collect();
        let est = mean_estimate(&squares);
        let exact = horizon.powf(2.0 * hurst);
        assert!(
            (est.mean - exact).abs() < 4.0 * est.std_err,
            "H={hurst}: {} vs {exact}",
            est.mean
        );
    }
}

#[test]
fn brownian_increments_are_uncorrelated() {
    let s = CirculantSampler::new(0.5, 1.0, 4).unwrap();
    let products: Vec<f64> = (0..100_000)
        .map(|i| {
            let p = s.sample(&mut stream(12, i));
            let d: Vec<f64> = p.increments().collect();
            d[1] * d[2] * 4.0
        })
        .collect();
    let est = mean_estimate(&products);
    assert!(est.mean.abs() < 4.0 * est.std_err, "{}", est.mean);
}

#[test]
fn brownian_quadratic_variation_mean() {
    let s = CirculantSampler::new(0.5, 2.0, 256).unwrap();
    let qv: Vec<f64> = (0..1000)
        .map(|i| {
            s.sample(&mut stream(13, i))
                .increments()
                .map(|d| d * d)
                .sum()
        })
        .collect();
    let est = mean_estimate(&qv);
    assert!((est.mean - 2.0).abs() < 4.0 * est.std_err, "{}", est.mean);
}

#[test]
fn covariance_matrix_both_methods() {
    let hurst = 0.7;
    let chol = CholeskySampler::new(hurst, 1.0, 8).unwrap();
    let circ = CirculantSampler::new(hurst, 1.0, 8).unwrap();
    let a = draws(20_000, |i| chol.sample(&mut stream(14, i)));
    let b = draws(20_000, |i| circ.sample(&mut stream(15, i)));
    assert!(common::covariance_z_max(&a, hurst) < 4.0);
    assert!(common::covariance_z_max(&b, hurst) < 4.0);
}

#[test]
fn stationary_increments() {
    let hurst = 0.75;
    let steps = 64;
    let s = CirculantSampler::new(hurst, 1.0, steps).unwrap();
    let paths = draws(20_000, |i| s.sample(&mut stream(16, i)));
    let lag = 4;
    let delta = lag as f64 / steps as f64;
    let exact = delta.powf(2.0 * hurst);
    for offset in [0, 20, 60] {
        let sq: Vec<f64> = paths
            .iter()
            .map(|p| (p.values()[offset + lag] - p.values()[offset]).powi(2))
            .collect();
        let est = mean_estimate(&sq);
        assert!(
            (est.mean - exact).abs() < 4.0 * est.std_err,
            "offset {offset}: {}",
            est.mean
        );
    }
}

#[test]
fn circulant_matches_cholesky_in_distribution() {
    let hurst = 0.75;
    let chol = CholeskySampler::new(hurst, 1.0, 512).unwrap();
    let circ = CirculantSampler::new(hurst, 1.0, 512).unwrap();
    let a: Vec<f64> = (0..10_000)
        .map(|i| chol.sample(&mut stream(17, i)).last())
        .collect();
    let b: Vec<f64> = (0..10_000)
        .map(|i| circ.sample(&mut stream(18, i)).last())
        .collect();
    let d = ks_statistic(&a, &b);
    assert!(d < ks_critical_value(0.01, a.len(), b.len()), "KS {d}");
}

#[test]
fn generated_paths_start_at_zero() {
    let s = CirculantSampler::new(0.3, 5.0, 100).unwrap();
    let p = s.sample(&mut stream(19, 0));
    assert_eq!(p.first(), 0.0);
    assert_eq!(p.horizon(), 5.0);
    assert_eq!(p.len(), 101);
}
