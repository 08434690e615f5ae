use rayon::prelude::*;

use super::kernel::{abs_linear_moment, CellMoments};
use super::{FracParams, GridFn};

/// Relative growth of `||f||_{1,beta}` under one grid doubling above which
/// the norm is reported as diverging.
pub const W1_DIVERGENCE_RATIO: f64 = 1.04;

/// `||f||_{1,beta}` and `||f||_{2,beta}` at one resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovReport {
    pub beta: f64,
    pub norm_w1: f64,
    pub norm_w2: f64,
    pub grid_points: usize,
    /// `||f||_{1,beta}` grew by more than [`W1_DIVERGENCE_RATIO`] from the
    /// half-resolution grid: a hint that `f` is not in `W_1^beta`.
    /// `None` when the grid cannot be halved.
    pub w1_diverging: Option<bool>,
}

/// Discrete `sup_{s < t} |f(t) - f(s)|/(t - s)^beta + int_s^t |f(u) - f(s)|/(u - s)^{1+beta} du`
/// over grid pairs, inner integral exact on the piecewise-linear interpolant.
pub fn besov_norm_w1(f: &GridFn, params: &FracParams) -> f64 {
    let beta = params.beta;
    let n = f.steps();
    let h = f.step();
    let p = -1.0 - beta;
    let m = CellMoments::new(p, n);
    let v = f.values();
    let hb = h.powf(-beta);
    // (k h)^{-beta} for the difference quotient
    let dist: Vec<f64> = (0..=n).map(|k| (k as f64 * h).powf(-beta)).collect();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let fs = v[i];
            let mut inner = 0.0;
            let mut best: f64 = 0.0;
            for k in i + 1..=n {
                let j = k - 1;
                inner += hb * abs_linear_moment(v[j] - fs, v[j + 1] - v[j], j - i, p, &m);
                best = best.max((v[k] - fs).abs() * dist[k - i] + inner);
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

/// `int_0^T |f(s)|/s^beta ds + int_0^T int_0^s |f(u) - f(s)|/(s - u)^{1+beta} du ds`.
///
/// The first integral and the inner integral are exact on the piecewise-linear
/// interpolant; the outer integral of the inner one uses the trapezoid rule.
pub fn besov_norm_w2(f: &GridFn, params: &FracParams) -> f64 {
    let beta = params.beta;
    let n = f.steps();
    let h = f.step();
    let v = f.values();

    let weight = CellMoments::new(-beta, n);
    let first: f64 = h.powf(1.0 - beta)
        * (0..n)
            .map(|j| abs_linear_moment(v[j], v[j + 1] - v[j], j, -beta, &weight))
            .sum::<f64>();

    let p = -1.0 - beta;
    let m = CellMoments::new(p, n);
    let hb = h.powf(-beta);
    let inner: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let fk = v[k];
            hb * (0..k)
                .map(|j| {
                    // y runs from u_{j+1} (y = 0) back to u_j (y = 1)
                    let d = k - 1 - j;
                    abs_linear_moment(v[j + 1] - fk, v[j] - v[j + 1], d, p, &m)
                })
                .sum::<f64>()
        })
        .collect();
    let second: f64 = h * inner.windows(2).map(|w| 0.5 * (w[0] + w[1])).sum::<f64>();
    first + second
}

pub fn besov_report(f: &GridFn, params: &FracParams) -> BesovReport {
    let norm_w1 = besov_norm_w1(f, params);
    let w1_diverging = if f.steps() >= 4 && f.steps().is_multiple_of(2) {
        let coarse = besov_norm_w1(&f.coarsen(2).expect("even grid"), params);
        Some(coarse > 0.0 && norm_w1 > W1_DIVERGENCE_RATIO * coarse)
    } else {
        None
    };
    BesovReport {
        beta: params.beta,
        norm_w1,
        norm_w2: besov_norm_w2(f, params),
        grid_points: f.steps() + 1,
        w1_diverging,
    }
}
