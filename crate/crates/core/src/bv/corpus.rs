use rand::Rng;

use super::{Jump, MixedFn, PiecewiseLinearFn, StepFn};

/// Random continuous piecewise-linear function on `[0, horizon]` with 1 to
/// `max_pieces` pieces and knot values uniform in `[-5, 5)`.
pub fn random_pl<R: Rng + ?Sized>(
    rng: &mut R,
    horizon: f64,
    max_pieces: usize,
) -> PiecewiseLinearFn {
    let pieces = rng.random_range(1..=max_pieces.max(1));
    let mut cuts: Vec<f64> = (1..pieces).map(|_| rng.random::<f64>() * horizon).collect();
    cuts.sort_by(f64::total_cmp);
    let mut knots = vec![0.0];
    for c in cuts {
        if c > *knots.last().unwrap() && c < horizon {
            knots.push(c);
        }
    }
    knots.push(horizon);
    let values = knots.iter().map(|_| rng.random_range(-5.0..5.0)).collect();
    PiecewiseLinearFn::new(knots, values).expect("knots are strictly increasing")
}

/// Random pure-jump function on `[0, horizon]`: up to `max_jumps` jumps of
/// size in `[-2, 2)` at uniform times, initial value in `[-1, 1)`.
pub fn random_step<R: Rng + ?Sized>(rng: &mut R, horizon: f64, max_jumps: usize) -> MixedFn {
    let count = rng.random_range(1..=max_jumps.max(1));
    let mut times: Vec<f64> = (0..count)
        .map(|_| horizon * (1.0 - rng.random::<f64>()))
        .collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let jumps = times
        .into_iter()
        .map(|time| Jump {
            time,
            size: rng.random_range(-2.0..2.0),
        })
        .filter(|j| j.size != 0.0)
        .collect();
    let step = StepFn::new(rng.random_range(-1.0..1.0), jumps, horizon).expect("valid jumps");
    MixedFn::from(step)
}

/// Rises to 1, falls back to 0, then jumps from 0 to 3 at `t = 2`: the jump
/// breaks the record from strictly below the old maximum.
pub fn jump_counterexample() -> MixedFn {
    let c = PiecewiseLinearFn::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 0.0, 0.0])
        .expect("valid knots");
    let s = StepFn::new(
        0.0,
        vec![Jump {
            time: 2.0,
            size: 3.0,
        }],
        3.0,
    )
    .expect("valid jump");
    MixedFn::new(c, s).expect("same horizon")
}
