//! Acceptance suite. Each test prints one `PASS`/`FAIL` line with the
//! measured values; heavy criteria run one at a time so their timings mean
//! something.

mod common;

use std::sync::Mutex;
use std::time::{Duration, Instant};

use fracpath::bv::{
    ac_check, random_step, record_integral, record_integral_step, BoundedVariation,
    PiecewiseLinearFn,
};
use fracpath::experiments::*;
use fracpath::fbm::{CholeskySampler, CirculantSampler};
use fracpath::fraccalc::*;
use fracpath::rng::stream;
use fracpath::stats::{ks_critical_value, ks_statistic, mean_estimate};
use fracpath::SampledPath;

static SERIAL: Mutex<()> = Mutex::new(());

struct Check {
    id: u32,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new(id: u32) -> Self {
        Self {
            id,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn finish(self) {
        let status = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut parts = self
            .failures
            .iter()
            .map(|f| format!("FAILED {f}"))
            .collect::<Vec<_>>();
        parts.extend(self.notes);
        println!("criterion {:>2}: {status} | {}", self.id, parts.join("; "));
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.id,
            self.failures
        );
    }
}

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn sci(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.2e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn pl_corpus() -> Vec<PiecewiseLinearFn> {
    (0..1000).map(|i| common::random_pl(2026, i)).collect()
}

#[test]
fn criterion_01_record_integral_equals_max_gain() {
    let _guard = serial();
    let mut c = Check::new(1);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for f in pl_corpus() {
        let gain = f.running_max().end_value() - f.start_value();
        let excess = (gain - record_integral(&f)).abs() / (1e-12 * (1.0 + f.total_variation()));
        worst = worst.max(excess);
    }
    let elapsed = start.elapsed();
    c.expect(
        worst <= 1.0,
        format!("max residual {worst:.3} x 1e-12(1+TV) over 1000 functions"),
    );
    c.expect(
        elapsed < Duration::from_secs(10),
        format!("runtime {}", secs(elapsed)),
    );
    c.finish();
}

#[test]
fn criterion_02_absolutely_continuous_route_agrees() {
    let _guard = serial();
    let mut c = Check::new(2);
    let mut worst: f64 = 0.0;
    for f in pl_corpus() {
        let d = (ac_check(&f) - record_integral(&f)).abs() / (1e-12 * (1.0 + f.total_variation()));
        worst = worst.max(d);
    }
    c.expect(
        worst <= 1.0,
        format!("max |ac - record| {worst:.3} x 1e-12(1+TV) over 1000 functions"),
    );
    c.finish();
}

#[test]
fn criterion_03_step_counterexample_residual() {
    let _guard = serial();
    let mut c = Check::new(3);
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    let mut all_nonzero = true;
    for i in 0..500 {
        let f = random_step(&mut stream(303, i), 1.0, 12);
        let tv = f.total_variation();
        let report = record_integral_step(&f);
        if report.gapped_jumps == 0 {
            continue;
        }
        checked += 1;
        worst = worst.max((report.residual + report.gap_sum).abs() / (1e-12 * (1.0 + tv)));
        all_nonzero &= report.residual < 0.0;
    }
    c.expect(
        checked >= 50,
        format!("{checked} functions with a record-breaking jump from below the max"),
    );
    c.expect(
        worst <= 1.0,
        format!("max |residual + gap sum| {worst:.3} x 1e-12(1+TV)"),
    );
    c.expect(all_nonzero, "residual nonzero on every such function");
    c.finish();
}

#[test]
fn criterion_04_brownian_max_representation() {
    let _guard = serial();
    let mut c = Check::new(4);
    let start = Instant::now();
    let plan = McPlan::new(100_000, 20241016, vec![256, 1024, 4096], 0.5, 1.0).unwrap();
    let report = mc_max_representation(&plan).unwrap();
    let elapsed = start.elapsed();
    let estimate = report.find("maxrep_mean", Some(4096), None).unwrap();
    let (lo, hi) = (0.783, 0.800);
    c.expect(
        (lo..=hi).contains(&estimate.estimate),
        format!(
            "E(S_1) ~ {:.5} +- {:.5} in [{lo}, {hi}] (sqrt(2/pi) = {:.6})",
            estimate.estimate,
            estimate.std_err.unwrap(),
            brownian_max_mean(1.0)
        ),
    );
    let rms = report.estimates("maxrep_residual_rms");
    let ratios: Vec<f64> = rms.windows(2).map(|w| w[1] / w[0]).collect();
    c.expect(
        strictly_decreasing(&rms) && ratios.iter().all(|&r| r <= 0.8),
        format!("residual RMS {rms:.5?}, ratios {ratios:.3?}"),
    );
    c.expect(
        elapsed < Duration::from_secs(180),
        format!("runtime {}", secs(elapsed)),
    );
    c.finish();
}

#[test]
fn criterion_05_quadratic_variation_scaling() {
    let _guard = serial();
    let mut c = Check::new(5);
    let grids: Vec<usize> = (8..=14).map(|k| 1usize << k).collect();
    for hurst in [0.6, 0.75, 0.9] {
        let plan = McPlan::new(200, 505, grids.clone(), hurst, 1.0).unwrap();
        let slope = qv_study(&plan).unwrap().rows.last().unwrap().slope.unwrap();
        let want = 1.0 - 2.0 * hurst;
        c.expect(
            (slope - want).abs() <= 0.1,
            format!("H={hurst}: slope {slope:.4} vs {want}"),
        );
    }
    let plan = McPlan::new(200, 506, grids, 0.5, 1.0).unwrap();
    let report = qv_study(&plan).unwrap();
    let worst = report
        .rows_for("qv")
        .map(|r| (r.estimate - 1.0).abs() / r.std_err.unwrap())
        .fold(0.0, f64::max);
    c.expect(
        worst < 4.0,
        format!("H=0.5: max |mean QV - T| = {worst:.2} SE over grids 2^8..2^14"),
    );
    c.finish();
}

#[test]
fn criterion_06_change_of_variables() {
    let _guard = serial();
    let mut c = Check::new(6);
    let mut worst: f64 = 0.0;
    for (k, hurst) in [0.5, 0.75].into_iter().enumerate() {
        let s = CirculantSampler::new(hurst, 1.0, 4096).unwrap();
        for i in 0..200 {
            let p = s.sample(&mut stream(606 + k as u64, i));
            let qv = quadratic_variation(&p);
            worst =
                worst.max((change_of_variables_residual(&p, Transform::Square) - qv).abs() / qv);
        }
    }
    c.expect(
        worst <= 1e-12,
        format!("square case: max relative gap to QV {worst:.2e}"),
    );
    let plan = McPlan::new(500, 607, vec![256, 1024, 4096], 0.75, 1.0).unwrap();
    let means = change_of_variables_study(&plan, Transform::Abs)
        .unwrap()
        .estimates("cov_abs");
    c.expect(
        strictly_decreasing(&means),
        format!("abs case, H=0.75: mean residual {means:.5?}"),
    );
    c.finish();
}

fn riemann_stieltjes(f: &GridFn, g: &GridFn) -> f64 {
    let (f, g) = (f.values(), g.values());
    (1..g.len()).map(|i| f[i - 1] * (g[i] - g[i - 1])).sum()
}

#[test]
fn criterion_07_gls_matches_classical_integrals() {
    let _guard = serial();
    let mut c = Check::new(7);
    let f = GridFn::from_fn(1.0, 4096, |x| x * x).unwrap();
    let g = GridFn::from_fn(1.0, 4096, |x| x * x * x).unwrap();
    let v = gls_integral(&f, &g, &FracParams::new(0.4, 4097).unwrap(), 1.0).unwrap();
    c.expect((v - 0.6).abs() <= 1e-3, format!("int x^2 d(x^3) = {v:.6}"));

    type Pair = (&'static str, fn(f64) -> f64, fn(f64) -> f64, f64);
    let pairs: [Pair; 2] = [
        ("x^0.8 d x^0.6", |x| x.powf(0.8), |x| x.powf(0.6), 0.6),
        (
            "sin 3x d |x-0.3|^0.7",
            |x| (3.0 * x).sin(),
            |x| (x - 0.3).abs().powf(0.7),
            0.5,
        ),
    ];
    for (name, f, g, beta) in pairs {
        let diffs: Vec<f64> = [1024usize, 2048, 4096]
            .iter()
            .map(|&n| {
                let (fg, gg) = (
                    GridFn::from_fn(1.0, n, f).unwrap(),
                    GridFn::from_fn(1.0, n, g).unwrap(),
                );
                (gls_integral(&fg, &gg, &FracParams::new(beta, n + 1).unwrap(), 1.0).unwrap()
                    - riemann_stieltjes(&fg, &gg))
                .abs()
            })
            .collect();
        c.expect(
            strictly_decreasing(&diffs),
            format!("{name}: |gls - rs| {}", sci(&diffs)),
        );
    }

    let sampler = CirculantSampler::new(0.75, 1.0, 4096).unwrap();
    let params = FracParams::new(0.5, 4097).unwrap();
    let mut diffs = vec![0.0; 3];
    for k in 0..4 {
        let f = GridFn::from_path(&sampler.sample(&mut stream(707, 2 * k))).unwrap();
        let g = GridFn::from_path(&sampler.sample(&mut stream(707, 2 * k + 1))).unwrap();
        for (level, stride) in [4usize, 2, 1].into_iter().enumerate() {
            let (fc, gc) = (f.coarsen(stride).unwrap(), g.coarsen(stride).unwrap());
            diffs[level] +=
                (gls_integral(&fc, &gc, &params, 1.0).unwrap() - riemann_stieltjes(&fc, &gc)).abs()
                    / 4.0;
        }
    }
    c.expect(
        strictly_decreasing(&diffs),
        format!("fBm pairs H=0.75: mean |gls - rs| {}", sci(&diffs)),
    );
    c.finish();
}

#[test]
fn criterion_08_gls_bound() {
    let _guard = serial();
    let mut c = Check::new(8);
    let steps = 512;
    let params = FracParams::new(0.4, steps + 1).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let f = common::random_pl(808, 2 * k);
        let g = common::random_pl(808, 2 * k + 1);
        let fg = GridFn::from_fn(1.0, steps, |t| f.eval(t)).unwrap();
        let gg = GridFn::from_fn(1.0, steps, |t| g.eval(t)).unwrap();
        let b = gls_bound_check(&fg, &gg, &params, 1.0).unwrap();
        worst = worst.max(b.lhs / b.rhs);
    }
    c.expect(
        worst <= 1.0 + 1e-6,
        format!("random PL pairs: max lhs/rhs {worst:.4}"),
    );

    let hurst = 0.75;
    let params = FracParams::new(default_beta(hurst), 2).unwrap();
    let sampler = CirculantSampler::new(hurst, 1.0, 1024 * DEFAULT_REFINE).unwrap();
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for i in 0..16 {
        let p = sampler.sample(&mut stream(809, i));
        let range = p.max() - p.min();
        let eps: Vec<f64> = [1e-1, 1e-2, 1e-3].iter().map(|e| e * range).collect();
        let r = gls_indicator_experiment(&p, &params, &eps, DEFAULT_REFINE, hurst).unwrap();
        for (i, b) in r
            .estimates("gls_indicator_integral")
            .iter()
            .zip(r.estimates("gls_bound_rhs"))
        {
            rows += 1;
            if *i != 0.0 {
                worst = worst.max(i.abs() / b);
            }
        }
    }
    c.expect(
        worst <= 1.0 + 1e-6,
        format!("{rows} indicator rows: max |integral|/bound {worst:.4}"),
    );
    c.finish();
}

#[test]
fn criterion_09_record_indicator_battery() {
    let _guard = serial();
    let mut c = Check::new(9);
    let start = Instant::now();
    let config = FailureConfig::new(0.75);
    let report = failure_battery(&config).unwrap();
    let elapsed = start.elapsed();

    let band: Vec<f64> = config
        .eps_list
        .iter()
        .map(|&e| {
            report
                .find("eps_band_abs_sum", Some(1024), Some(e))
                .unwrap()
                .estimate
        })
        .collect();
    c.expect(
        strictly_decreasing(&band),
        format!(
            "mean |eps-band sum| at n=1024 over eps {:?}: {band:.4?}",
            config.eps_list
        ),
    );
    let occupation = report.estimates("record_occupation");
    c.expect(
        strictly_decreasing(&occupation),
        format!(
            "occupation at eps=0 over {:?}: {occupation:.4?}",
            config.grids
        ),
    );
    let norms = report.estimates("indicator_norm_w2");
    c.expect(
        strictly_decreasing(&norms),
        format!("mean indicator norm over eps: {norms:.3?}"),
    );
    let excess = report.estimates("discrete_record_excess_min");
    c.expect(
        excess.iter().all(|&x| x >= 0.0),
        format!("min (discrete record sum - max gain) per grid {excess:?}"),
    );
    c.expect(
        elapsed < Duration::from_secs(180),
        format!("runtime {}", secs(elapsed)),
    );
    c.finish();
}

#[test]
fn criterion_10_fractional_inversion() {
    let _guard = serial();
    let mut c = Check::new(10);
    for beta in [0.25, 0.5, 0.75] {
        let errors: Vec<f64> = [512usize, 1024, 2048, 4096]
            .iter()
            .map(|&n| {
                let f = GridFn::from_fn(1.0, n, |x| x * (1.0 - x)).unwrap();
                let p = FracParams::new(beta, n + 1).unwrap();
                let back = weyl_deriv_left(&rl_integral_left(&f, &p), &p);
                back.values()[1..]
                    .iter()
                    .zip(&f.values()[1..])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        let ratios: Vec<f64> = errors.windows(2).map(|w| w[1] / w[0]).collect();
        c.expect(
            ratios.iter().all(|&r| r <= 0.6),
            format!(
                "beta={beta}: max error {}, ratios {ratios:.3?}",
                sci(&errors)
            ),
        );
    }
    c.finish();
}

#[test]
fn criterion_11_sampler_correctness() {
    let _guard = serial();
    let mut c = Check::new(11);
    let hurst = 0.75;
    let chol = CholeskySampler::new(hurst, 1.0, 8).unwrap();
    let paths: Vec<SampledPath> = (0..100_000)
        .map(|i| chol.sample(&mut stream(1111, i)))
        .collect();
    let z = common::covariance_z_max(&paths, hurst);
    c.expect(
        z < 4.0,
        format!("Cholesky 8x8 covariance: max deviation {z:.2} SE"),
    );

    let chol = CholeskySampler::new(hurst, 1.0, 512).unwrap();
    let circ = CirculantSampler::new(hurst, 1.0, 512).unwrap();
    let a: Vec<f64> = (0..10_000)
        .map(|i| chol.sample(&mut stream(1112, i)).last())
        .collect();
    let b: Vec<f64> = (0..10_000)
        .map(|i| circ.sample(&mut stream(1113, i)).last())
        .collect();
    let d = ks_statistic(&a, &b);
    let crit = ks_critical_value(0.01, a.len(), b.len());
    c.expect(
        d < crit,
        format!("KS on B_T, circulant vs Cholesky: D = {d:.4} < {crit:.4}"),
    );
    let var = mean_estimate(&b.iter().map(|x| x * x).collect::<Vec<_>>());
    c.expect(
        (var.mean - 1.0).abs() < 4.0 * var.std_err,
        format!("circulant Var(B_1) = {:.4}", var.mean),
    );
    c.finish();
}
