use fracpath::bv::{
    ac_check, record_integral, record_integral_step, record_set, BoundedVariation, Interval, Jump,
    MixedFn, PiecewiseLinearFn, StepFn,
};
use proptest::prelude::*;

fn pl_strategy() -> impl Strategy<Value = PiecewiseLinearFn> {
    (1usize..30)
        .prop_flat_map(|pieces| {
            (
                prop::collection::vec(0.001f64..1.0, pieces),
                prop::collection::vec(-10.0f64..10.0, pieces + 1),
                0.1f64..5.0,
            )
        })
        .prop_map(|(widths, values, horizon)| {
            let total: f64 = widths.iter().sum();
            let mut t = 0.0;
            let mut knots = vec![0.0];
            for w in &widths[..widths.len() - 1] {
                t += w / total * horizon;
                knots.push(t);
            }
            knots.push(horizon);
            PiecewiseLinearFn::new(knots, values).unwrap()
        })
}

fn tol(f: &PiecewiseLinearFn) -> f64 {
    1e-12 * (1.0 + f.total_variation())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn record_integral_is_max_gain(f in pl_strategy()) {
        let gain = f.running_max().end_value() - f.start_value();
        prop_assert!((record_integral(&f) - gain).abs() <= tol(&f));
        prop_assert!((ac_check(&f) - record_integral(&f)).abs() <= tol(&f));
    }

    #[test]
    fn jordan_identities(f in pl_strategy(), s in 0.0f64..1.0) {
        let t = s * f.horizon();
        let j = f.jordan_decompose();
        prop_assert!((j.net_to(t) - (f.eval(t) - f.start_value())).abs() <= tol(&f) * 10.0);
        prop_assert!((j.variation_to(f.horizon()) - f.total_variation()).abs() <= tol(&f));
        for part in [&j.positive_variation, &j.negative_variation] {
            prop_assert!(part.values().windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn running_max_dominates_and_increases(f in pl_strategy()) {
        let m = f.running_max();
        prop_assert!(m.values().windows(2).all(|w| w[1] >= w[0]));
        for &t in f.knots() {
            prop_assert!(m.eval(t) >= f.eval(t));
        }
    }

    #[test]
    fn record_set_is_closed_and_carries_max_measure(f in pl_strategy()) {
        let e = record_set(&f);
        let m = f.running_max();
        let tol = 1e-9 * (1.0 + f.max_abs());
        for &(a, b) in e.segments() {
            prop_assert!(a <= b);
            prop_assert!((m.eval(a) - f.eval(a)).abs() <= tol);
            prop_assert!((m.eval(b) - f.eval(b)).abs() <= tol);
        }
        for (a, b) in e.gaps() {
            let mu = m.ls_measure(Interval::open(a, b)).unwrap();
            prop_assert!(mu.abs() <= tol, "mass {mu} on gap ({a}, {b})");
        }
    }

    #[test]
    fn mixed_residual_is_minus_gap_sum(
        base in pl_strategy(),
        raw in prop::collection::vec((0.01f64..1.0, -4.0f64..4.0), 0..8),
    ) {
        let h = base.horizon();
        let mut jumps: Vec<Jump> = raw
            .into_iter()
            .filter(|&(_, size)| size != 0.0)
            .map(|(s, size)| Jump { time: s * h, size })
            .collect();
        jumps.sort_by(|a, b| a.time.total_cmp(&b.time));
        jumps.dedup_by(|a, b| a.time == b.time);
        let step = StepFn::new(0.0, jumps.clone(), h).unwrap();
        let tv = base.total_variation() + jumps.iter().map(|j| j.size.abs()).sum::<f64>();
        let report = record_integral_step(&MixedFn::new(base, step).unwrap());
        prop_assert!(report.gap_sum >= 0.0);
        prop_assert!((report.residual + report.gap_sum).abs() <= 1e-11 * (1.0 + tv));
    }

    #[test]
    fn jump_from_below_max_leaves_negative_residual(
        drop in 0.1f64..3.0,
        extra in 0.1f64..3.0,
        at in 0.2f64..0.9,
        h in 0.5f64..4.0,
    ) {
        // down, then up past the old max: the record-breaking jump starts below it
        let flat = PiecewiseLinearFn::constant(h, 0.0).unwrap();
        let jumps = StepFn::new(0.0, vec![
            Jump { time: at * h * 0.5, size: -drop },
            Jump { time: at * h, size: drop + extra },
        ], h).unwrap();
        let report = record_integral_step(&MixedFn::new(flat, jumps).unwrap());
        prop_assert!(report.residual < 0.0);
        prop_assert!((report.residual + drop).abs() <= 1e-12 * (1.0 + drop + extra));
    }
}
