//! The record set `E = {t : f*(t) = f(t)}` and the integral of its indicator
//! against `df`.
//!
//! For continuous `f` the integral recovers `f*(T) - f(0)`. With jumps it does
//! not: a jump that lands on a new maximum from strictly below the old one is
//! counted with its full size, overshooting the rise of `f*` by the gap
//! `f*(tau-) - f(tau-)`.

use super::{record_tolerance, BoundedVariation, MixedFn, PiecewiseLinearFn};

/// Disjoint, ordered closed intervals `[a_j, b_j]` (points allowed).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RecordSet {
    segments: Vec<(f64, f64)>,
}

impl RecordSet {
    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    pub fn contains(&self, t: f64) -> bool {
        self.segments.iter().any(|&(a, b)| a <= t && t <= b)
    }

    /// Lebesgue measure of the set.
    pub fn length(&self) -> f64 {
        self.segments.iter().map(|(a, b)| b - a).sum()
    }

    /// Open gaps `(b_j, a_{j+1})` between consecutive segments.
    pub fn gaps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.segments.windows(2).map(|w| (w[0].1, w[1].0))
    }

    fn push(&mut self, segment: (f64, f64)) {
        match self.segments.last_mut() {
            Some(last) if last.1 >= segment.0 => last.1 = last.1.max(segment.1),
            _ => self.segments.push(segment),
        }
    }
}

/// Outcome of the record sweep on a function with jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecordReport {
    /// `int 1_{f* = f} dmu_f`, atoms on `E` counted in full.
    pub integral: f64,
    /// `f*(T) - f(0) - integral`.
    pub residual: f64,
    /// `f*(T) - f(0)`.
    pub max_gain: f64,
    /// Sum of `f*(tau-) - f(tau-)` over jumps landing on `E`.
    pub gap_sum: f64,
    /// Jumps landing on `E` from strictly below the old maximum.
    pub gapped_jumps: usize,
}

struct Sweep {
    set: RecordSet,
    continuous_mass: f64,
    atom_mass: f64,
    gap_sum: f64,
    gapped_jumps: usize,
    max: f64,
}

fn sweep(f: &MixedFn) -> Sweep {
    let tol = record_tolerance(f.max_abs());
    let mut breaks: Vec<f64> = f
        .continuous()
        .knots()
        .iter()
        .copied()
        .chain(f.step().jumps().iter().map(|j| j.time))
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let jumps = f.step().jumps();
    let mut next_jump = 0;

    let mut out = Sweep {
        set: RecordSet::default(),
        continuous_mass: 0.0,
        atom_mass: 0.0,
        gap_sum: 0.0,
        gapped_jumps: 0,
        max: f.eval(0.0),
    };
    let mut current: Option<(f64, f64)> = Some((0.0, 0.0));
    let mut m = out.max;

    for w in breaks.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let v0 = f.eval(t0);
        let v1 = f.left_limit(t1);
        if v0 >= m - tol {
            let start = current.map_or(t0, |c| c.0);
            if v1 >= m - tol {
                out.continuous_mass += v1 - v0;
                current = Some((start, t1));
                m = m.max(v1);
            } else {
                out.set.push((start, t0));
                current = None;
            }
        } else {
            if let Some(c) = current.take() {
                out.set.push(c);
            }
            if v1 >= m - tol {
                let tc = if v1 > m {
                    (t0 + (m - v0) / (v1 - v0) * (t1 - t0)).clamp(t0, t1)
                } else {
                    t1
                };
                out.continuous_mass += v1 - m.min(v1);
                current = Some((tc, t1));
                m = m.max(v1);
            }
        }

        if next_jump < jumps.len() && jumps[next_jump].time == t1 {
            let jump = jumps[next_jump];
            next_jump += 1;
            let landing = v1 + jump.size;
            if landing >= m - tol {
                out.atom_mass += jump.size;
                let gap = (m - v1).max(0.0);
                if gap > tol {
                    out.gap_sum += gap;
                    out.gapped_jumps += 1;
                }
                m = m.max(landing);
                current = match current {
                    Some((a, b)) if b == t1 => Some((a, b)),
                    other => {
                        if let Some(c) = other {
                            out.set.push(c);
                        }
                        Some((t1, t1))
                    }
                };
            } else if let Some(c) = current.take() {
                // Downward jump off the maximum: `t1` itself leaves E.
                out.set.push(c);
            }
        }
    }
    if let Some(c) = current {
        out.set.push(c);
    }
    out.max = m;
    out
}

/// Exact record set of a continuous piecewise-linear function.
pub fn record_set(f: &PiecewiseLinearFn) -> RecordSet {
    sweep(&MixedFn::from(f.clone())).set
}

/// `sum_j f(b_j) - f(a_j)` over the record segments: the Lebesgue–Stieltjes
/// integral of `1_E` against `df`.
pub fn record_integral(f: &PiecewiseLinearFn) -> f64 {
    record_set(f)
        .segments()
        .iter()
        .map(|&(a, b)| f.eval(b) - f.eval(a))
        .sum()
}

/// `int_E f' dm`: the piecewise-constant slope integrated over the record set.
pub fn ac_check(f: &PiecewiseLinearFn) -> f64 {
    let slopes = f.slopes();
    let knots = f.knots();
    let mut total = 0.0;
    for &(a, b) in record_set(f).segments() {
        if b <= a {
            continue;
        }
        let first = f.piece_index(a);
        for (i, &slope) in slopes.iter().enumerate().skip(first) {
            let lo = a.max(knots[i]);
            let hi = b.min(knots[i + 1]);
            if knots[i] >= b {
                break;
            }
            if hi > lo {
                total += slope * (hi - lo);
            }
        }
    }
    total
}

/// Record integral and residual `f*(T) - f(0) - integral` for functions
/// with jumps.
pub fn record_integral_step(f: &MixedFn) -> StepRecordReport {
    let s = sweep(f);
    let integral = s.continuous_mass + s.atom_mass;
    let max_gain = s.max - f.eval(0.0);
    StepRecordReport {
        integral,
        residual: max_gain - integral,
        max_gain,
        gap_sum: s.gap_sum,
        gapped_jumps: s.gapped_jumps,
    }
}
