//! Cell moments for power kernels on a uniform grid.
//!
//! With grid step `h`, a cell at normalised distance `d` from the singular
//! point contributes integrals of the form
//! `int_0^1 (d + y)^p * (a + b y) dy`, so everything reduces to the two
//! moments `M0(d) = int_0^1 (d + y)^p dy` and `M1(d) = int_0^1 (d + y)^p y dy`.

/// Beyond this distance the moments come from a binomial series in `1/d`,
/// which avoids cancellation between large powers.
const SERIES_FROM: usize = 8;

#[derive(Debug, Clone)]
pub(crate) struct CellMoments {
    pub m0: Vec<f64>,
    pub m1: Vec<f64>,
}

impl CellMoments {
    /// Moments for `d = 0..=max_d`. `p > -2` is required; `M0(0)` is infinite
    /// when `p <= -1`.
    pub fn new(p: f64, max_d: usize) -> Self {
        let mut m0 = Vec::with_capacity(max_d + 1);
        let mut m1 = Vec::with_capacity(max_d + 1);
        for d in 0..=max_d {
            let (a, b) = if d < SERIES_FROM {
                closed_moments(p, d as f64)
            } else {
                series_moments(p, d as f64)
            };
            m0.push(a);
            m1.push(b);
        }
        Self { m0, m1 }
    }
}

fn closed_moments(p: f64, d: f64) -> (f64, f64) {
    if d == 0.0 {
        let m0 = if p > -1.0 {
            1.0 / (p + 1.0)
        } else {
            f64::INFINITY
        };
        return (m0, 1.0 / (p + 2.0));
    }
    let e = d + 1.0;
    let m0 = (e.powf(p + 1.0) - d.powf(p + 1.0)) / (p + 1.0);
    let m1 = (e.powf(p + 2.0) - d.powf(p + 2.0)) / (p + 2.0) - d * m0;
    (m0, m1)
}

/// `d^p * sum_k C(p, k) d^{-k} / (k + j + 1)` for `j = 0, 1`.
fn series_moments(p: f64, d: f64) -> (f64, f64) {
    let x = 1.0 / d;
    let mut coeff = 1.0;
    let (mut s0, mut s1) = (0.0, 0.0);
    for k in 0..60 {
        let kf = k as f64;
        let t0 = coeff / (kf + 1.0);
        s0 += t0;
        s1 += coeff / (kf + 2.0);
        if t0.abs() < 1e-18 * s0.abs() {
            break;
        }
        coeff *= (p - kf) / (kf + 1.0) * x;
    }
    let scale = d.powf(p);
    (scale * s0, scale * s1)
}

/// `int_0^1 |a + b y| (d + y)^p dy`, splitting at the sign change of the
/// linear factor when it lies inside the cell.
pub(crate) fn abs_linear_moment(a: f64, b: f64, d: usize, p: f64, moments: &CellMoments) -> f64 {
    let end = a + b;
    if a * end >= 0.0 || b == 0.0 {
        let m0 = if a == 0.0 { 0.0 } else { a * moments.m0[d] };
        return (m0 + b * moments.m1[d]).abs();
    }
    // 0 < y0 < 1 and a != 0, so d >= 1 whenever M0(0) would be infinite.
    let y0 = -a / b;
    let d = d as f64;
    let z0 = d + y0;
    let c = a - b * d;
    let anti = |z: f64| {
        if z == 0.0 {
            0.0
        } else {
            c * z.powf(p + 1.0) / (p + 1.0) + b * z.powf(p + 2.0) / (p + 2.0)
        }
    };
    let head = anti(z0) - anti(d);
    let tail = anti(d + 1.0) - anti(z0);
    head.abs() + tail.abs()
}
