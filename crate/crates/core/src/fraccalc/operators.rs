use rayon::prelude::*;
use statrs::function::gamma::gamma;

use super::kernel::CellMoments;
use super::{FracParams, GridFn};
use crate::error::Result;

/// `(I^beta_{0+} f)(s) = 1/Gamma(beta) int_0^s f(u) (s - u)^{beta - 1} du`
/// at every grid point.
pub fn rl_integral_left(f: &GridFn, params: &FracParams) -> GridFn {
    let beta = params.beta;
    let n = f.steps();
    let h = f.step();
    let m = CellMoments::new(beta - 1.0, n);
    let v = f.values();
    let scale = h.powf(beta) / gamma(beta);
    let out: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| {
            // cell j = [u_j, u_{j+1}] sits at distance d = k - 1 - j from s_k
            let acc: f64 = (0..k)
                .map(|j| {
                    let d = k - 1 - j;
                    v[j + 1] * m.m0[d] + (v[j] - v[j + 1]) * m.m1[d]
                })
                .sum();
            scale * acc
        })
        .collect();
    GridFn {
        horizon: f.horizon(),
        values: out,
    }
}

/// `(I^beta_{t-} f)(s) = 1/Gamma(beta) int_s^t f(u) (u - s)^{beta - 1} du`
/// on the grid points of `[0, t]`; `t` must be a grid point.
pub fn rl_integral_right(f: &GridFn, params: &FracParams, t: f64) -> Result<GridFn> {
    let f = f.restrict(t)?;
    let beta = params.beta;
    let n = f.steps();
    let h = f.step();
    let m = CellMoments::new(beta - 1.0, n);
    let v = f.values();
    let scale = h.powf(beta) / gamma(beta);
    let out: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let acc: f64 = (k..n)
                .map(|j| {
                    let d = j - k;
                    v[j] * m.m0[d] + (v[j + 1] - v[j]) * m.m1[d]
                })
                .sum();
            scale * acc
        })
        .collect();
    Ok(GridFn {
        horizon: f.horizon(),
        values: out,
    })
}

/// Left Weyl derivative
/// `1/Gamma(1-beta) (f(x)/x^beta + beta int_0^x (f(x) - f(y))/(x - y)^{beta+1} dy)`.
///
/// The value at `x = 0` is undefined and returned as NaN. The first term is
/// integrable near zero only when `f(0) = 0`.
pub fn weyl_deriv_left(f: &GridFn, params: &FracParams) -> GridFn {
    let beta = params.beta;
    let n = f.steps();
    let h = f.step();
    let m = CellMoments::new(-beta - 1.0, n);
    let v = f.values();
    if v[0] != 0.0 {
        log::debug!("left Weyl derivative of a function with f(0) = {}", v[0]);
    }
    let g = gamma(1.0 - beta);
    let hb = h.powf(-beta);
    let mut out: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return f64::NAN;
            }
            let fk = v[k];
            let acc: f64 = (0..k)
                .map(|j| {
                    let d = k - 1 - j;
                    let near = if d == 0 {
                        0.0
                    } else {
                        (fk - v[j + 1]) * m.m0[d]
                    };
                    near - (v[j] - v[j + 1]) * m.m1[d]
                })
                .sum();
            let x = k as f64 * h;
            (fk / x.powf(beta) + beta * hb * acc) / g
        })
        .collect();
    out[0] = f64::NAN;
    GridFn {
        horizon: f.horizon(),
        values: out,
    }
}

/// Right Weyl derivative on `[0, t]`
/// `1/Gamma(1-beta) (g(x)/(t-x)^beta + beta int_x^t (g(x) - g(y))/(y - x)^{beta+1} dy)`.
///
/// Applied as given; callers wanting `D_{t-} g_{t-}` subtract `g(t)` first.
/// The value at `x = t` is undefined and returned as NaN.
pub fn weyl_deriv_right(g: &GridFn, params: &FracParams, t: f64) -> Result<GridFn> {
    let g = g.restrict(t)?;
    let beta = params.beta;
    let n = g.steps();
    let h = g.step();
    let horizon = g.horizon();
    let m = CellMoments::new(-beta - 1.0, n);
    let v = g.values();
    let gm = gamma(1.0 - beta);
    let hb = h.powf(-beta);
    let out: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| {
            if k == n {
                return f64::NAN;
            }
            let gk = v[k];
            let acc: f64 = (k..n)
                .map(|j| {
                    let d = j - k;
                    let near = if d == 0 { 0.0 } else { (gk - v[j]) * m.m0[d] };
                    near - (v[j + 1] - v[j]) * m.m1[d]
                })
                .sum();
            let x = k as f64 * h;
            (gk / (horizon - x).powf(beta) + beta * hb * acc) / gm
        })
        .collect();
    Ok(GridFn {
        horizon,
        values: out,
    })
}
