use fracpath::experiments::*;
use fracpath::fbm::CirculantSampler;
use fracpath::fraccalc::{default_beta, FracParams};
use fracpath::rng::stream;
use fracpath::SampledPath;

fn fbm_paths(hurst: f64, steps: usize, count: u64, seed: u64) -> Vec<SampledPath> {
    let s = CirculantSampler::new(hurst, 1.0, steps).unwrap();
    (0..count).map(|i| s.sample(&mut stream(seed, i))).collect()
}

#[test]
fn qv_slope_follows_hurst() {
    for hurst in [0.6, 0.75] {
        let plan = McPlan::new(100, 5, vec![256, 512, 1024, 2048, 4096], hurst, 1.0).unwrap();
        let report = qv_study(&plan).unwrap();
        let slope = report.rows.last().unwrap().slope.unwrap();
        assert!(
            (slope - (1.0 - 2.0 * hurst)).abs() < 0.1,
            "H={hurst}: {slope}"
        );
    }
}

#[test]
fn square_residual_equals_qv_pathwise() {
    for p in fbm_paths(0.75, 1024, 200, 6) {
        let qv = quadratic_variation(&p);
        let r = change_of_variables_residual(&p, Transform::Square);
        assert!((r - qv).abs() <= 1e-12 * qv, "{r} vs {qv}");
    }
}

#[test]
fn abs_residual_shrinks_with_grid() {
    let plan = McPlan::new(300, 7, vec![256, 1024, 4096], 0.75, 1.0).unwrap();
    let means = change_of_variables_study(&plan, Transform::Abs)
        .unwrap()
        .estimates("cov_abs");
    assert!(means[0] > means[1] && means[1] > means[2], "{means:?}");
}

#[test]
fn discrete_records_dominate_max_gain_pathwise() {
    for hurst in [0.3, 0.5, 0.75, 0.9] {
        for p in fbm_paths(hurst, 1024, 300, 8) {
            let s = record_indicator_sum(&p, RecordMode::DiscreteRecord).unwrap();
            assert!(
                s >= p.max() - p.first(),
                "H={hurst}: {s} < {}",
                p.max() - p.first()
            );
        }
    }
}

#[test]
fn band_indicators_nest_in_eps() {
    let eps = [1e-1, 1e-2, 1e-3, 0.0];
    for p in fbm_paths(0.75, 1024 * DEFAULT_REFINE, 50, 9) {
        let range = p.max() - p.min();
        let sets: Vec<Vec<f64>> = eps
            .iter()
            .map(|e| {
                indicator_grid_fn(&p, e * range, DEFAULT_REFINE)
                    .unwrap()
                    .values()
                    .to_vec()
            })
            .collect();
        for w in sets.windows(2) {
            assert!(w[0].iter().zip(&w[1]).all(|(wide, narrow)| wide >= narrow));
        }
        let coarse = p.subsample(DEFAULT_REFINE).unwrap();
        let occ: Vec<f64> = eps
            .iter()
            .map(|e| record_occupation(&coarse, e * range).unwrap())
            .collect();
        assert!(occ.windows(2).all(|w| w[0] >= w[1]), "{occ:?}");
    }
}

#[test]
fn occupation_thins_with_grid() {
    let config = FailureConfig {
        replicas: 300,
        gls_paths: 0,
        ..FailureConfig::new(0.75)
    };
    let report = failure_battery(&config).unwrap();
    let occ = report.estimates("record_occupation");
    assert!(occ[0] > occ[1] && occ[1] > occ[2], "{occ:?}");
    assert!(report
        .estimates("discrete_record_excess_min")
        .iter()
        .all(|&x| x >= 0.0));
}

#[test]
fn early_maximum_probe_decreases_with_grid() {
    let plan = McPlan::new(3000, 10, vec![1, 256, 1024, 4096], 0.5, 1.0).unwrap();
    let p = positive_max_check(&plan).unwrap().estimates("positive_max");
    assert!((p[0] - 0.5).abs() < 0.03);
    assert!(p[1..].windows(2).all(|w| w[1] < w[0]), "{p:?}");
    assert!(p[3] < 0.1);
}

#[test]
fn gls_indicator_rows_respect_bound() {
    let hurst = 0.75;
    let params = FracParams::new(default_beta(hurst), 2).unwrap();
    for p in fbm_paths(hurst, 512 * DEFAULT_REFINE, 6, 11) {
        let range = p.max() - p.min();
        let eps: Vec<f64> = [1e-1, 1e-2, 1e-3].iter().map(|e| e * range).collect();
        let r = gls_indicator_experiment(&p, &params, &eps, DEFAULT_REFINE, hurst).unwrap();
        let integrals = r.estimates("gls_indicator_integral");
        let bounds = r.estimates("gls_bound_rhs");
        for (i, b) in integrals.iter().zip(&bounds) {
            assert!(i.abs() <= b * (1.0 + 1e-6));
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let plan = McPlan::new(64, 12, vec![64, 256], 0.5, 1.0).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_max_representation(&plan).unwrap().to_csv())
    };
    assert_eq!(run(1), run(3));
}
