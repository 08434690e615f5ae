use crate::error::{Error, Result};

use super::BoundedVariation;

/// Continuous piecewise-linear function on `[0, T]`, given by its knots.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinearFn {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() != values.len() {
            return Err(Error::InvalidFunction(format!(
                "{} knots but {} values",
                knots.len(),
                values.len()
            )));
        }
        if knots.len() < 2 {
            return Err(Error::InvalidFunction("need at least two knots".into()));
        }
        if knots[0] != 0.0 {
            return Err(Error::InvalidFunction(format!(
                "first knot must be 0, got {}",
                knots[0]
            )));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidFunction(
                "knots must be strictly increasing".into(),
            ));
        }
        if knots.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::InvalidFunction("non-finite knot or value".into()));
        }
        Ok(Self { knots, values })
    }

    /// `values` on the uniform grid of `[0, horizon]`.
    pub fn uniform(horizon: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidFunction("need at least two knots".into()));
        }
        Self::new(crate::path::uniform_grid(horizon, values.len() - 1), values)
    }

    /// Constant function on `[0, horizon]`.
    pub fn constant(horizon: f64, value: f64) -> Result<Self> {
        Self::new(vec![0.0, horizon], vec![value, value])
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn start_value(&self) -> f64 {
        self.values[0]
    }

    pub fn end_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Slopes of the linear pieces.
    pub fn slopes(&self) -> Vec<f64> {
        self.knots
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, v)| (v[1] - v[0]) / (t[1] - t[0]))
            .collect()
    }

    /// Index `i` of the piece `[knots[i], knots[i + 1]]` containing `t`.
    pub(crate) fn piece_index(&self, t: f64) -> usize {
        let last = self.knots.len() - 2;
        match self.knots.binary_search_by(|k| k.total_cmp(&t)) {
            Ok(i) => i.min(last),
            Err(0) => 0,
            Err(i) => (i - 1).min(last),
        }
    }

    /// Running maximum `f*(t) = max_{s <= t} f(s)`, again piecewise linear.
    ///
    /// Knots of `f` are kept; a knot is inserted wherever `f` climbs back
    /// through its previous maximum inside a piece.
    pub fn running_max(&self) -> PiecewiseLinearFn {
        let mut knots = vec![self.knots[0]];
        let mut values = vec![self.values[0]];
        let mut m = self.values[0];
        for i in 0..self.knots.len() - 1 {
            let (t0, t1) = (self.knots[i], self.knots[i + 1]);
            let (v0, v1) = (self.values[i], self.values[i + 1]);
            if v0 < m && v1 > m {
                let tc = t0 + (m - v0) / (v1 - v0) * (t1 - t0);
                if tc > t0 && tc < t1 {
                    knots.push(tc);
                    values.push(m);
                }
            }
            m = m.max(v1);
            knots.push(t1);
            values.push(m);
        }
        PiecewiseLinearFn { knots, values }
    }

    /// `f = f(0) + V_f - W_f` with `V_f`, `W_f` accumulating the positive and
    /// negative parts of the knot increments.
    pub fn jordan_decompose(&self) -> JordanPair {
        let n = self.values.len();
        let mut pos = Vec::with_capacity(n);
        let mut neg = Vec::with_capacity(n);
        let (mut p, mut q) = (0.0, 0.0);
        pos.push(p);
        neg.push(q);
        for w in self.values.windows(2) {
            let d = w[1] - w[0];
            if d > 0.0 {
                p += d;
            } else {
                q -= d;
            }
            pos.push(p);
            neg.push(q);
        }
        JordanPair {
            positive_variation: PiecewiseLinearFn {
                knots: self.knots.clone(),
                values: pos,
            },
            negative_variation: PiecewiseLinearFn {
                knots: self.knots.clone(),
                values: neg,
            },
        }
    }
}

impl BoundedVariation for PiecewiseLinearFn {
    fn horizon(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    fn eval(&self, t: f64) -> f64 {
        let i = self.piece_index(t);
        let (t0, t1) = (self.knots[i], self.knots[i + 1]);
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        if t <= t0 {
            v0
        } else if t >= t1 {
            v1
        } else {
            v0 + (v1 - v0) * ((t - t0) / (t1 - t0))
        }
    }

    fn left_limit(&self, t: f64) -> f64 {
        self.eval(t)
    }

    fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }
}

/// Positive and negative variation functions of a piecewise-linear `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanPair {
    pub positive_variation: PiecewiseLinearFn,
    pub negative_variation: PiecewiseLinearFn,
}

impl JordanPair {
    /// `V_f(t) + W_f(t)`, the total variation of `f` on `[0, t]`.
    pub fn variation_to(&self, t: f64) -> f64 {
        self.positive_variation.eval(t) + self.negative_variation.eval(t)
    }

    /// `V_f(t) - W_f(t)`, which equals `f(t) - f(0)`.
    pub fn net_to(&self, t: f64) -> f64 {
        self.positive_variation.eval(t) - self.negative_variation.eval(t)
    }
}
