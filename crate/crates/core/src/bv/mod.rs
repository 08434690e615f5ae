//! Exact bounded-variation calculus on piecewise-linear and step functions.
//!
//! Everything here is computed from knot and jump data directly: running
//! maxima, total variation, the Jordan decomposition, Lebesgue–Stieltjes
//! measures of intervals and the record set `E = {t : f*(t) = f(t)}` together
//! with the integral of its indicator against `df`.

mod corpus;
mod pl;
mod record;
mod step;

pub use corpus::{jump_counterexample, random_pl, random_step};
pub use pl::{JordanPair, PiecewiseLinearFn};
pub use record::{
    ac_check, record_integral, record_integral_step, record_set, RecordSet, StepRecordReport,
};
pub use step::{Jump, MixedFn, StepFn};

use crate::error::{Error, Result};

/// Record-set membership tolerance `1e-12 * (1 + max |f|)`.
pub fn record_tolerance(max_abs: f64) -> f64 {
    1e-12 * (1.0 + max_abs)
}

/// An interval `[a, b]` with independent openness at each end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub start: f64,
    pub end: f64,
    pub start_open: bool,
    pub end_open: bool,
}

impl Interval {
    pub fn closed(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            start_open: false,
            end_open: false,
        }
    }

    pub fn open(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            start_open: true,
            end_open: true,
        }
    }

    /// `(start, end]`
    pub fn left_open(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            start_open: true,
            end_open: false,
        }
    }

    /// `[start, end)`
    pub fn right_open(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            start_open: false,
            end_open: true,
        }
    }

    pub fn point(t: f64) -> Self {
        Self::closed(t, t)
    }

    pub(crate) fn check_within(&self, horizon: f64) -> Result<()> {
        if self.start >= 0.0 && self.start <= self.end && self.end <= horizon {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "interval [{}, {}] is not contained in [0, {horizon}]",
                self.start, self.end
            )))
        }
    }
}

/// Shared surface of the exactly representable BV classes.
pub trait BoundedVariation {
    fn horizon(&self) -> f64;

    /// Right-continuous value `f(t)`.
    fn eval(&self, t: f64) -> f64;

    /// Left limit `f(t-)`; equals `f(0)` at `t = 0`.
    fn left_limit(&self, t: f64) -> f64;

    /// Exact total variation on `[0, T]`.
    fn total_variation(&self) -> f64;

    /// Lebesgue–Stieltjes measure `mu_f` of an interval.
    fn ls_measure(&self, interval: Interval) -> Result<f64> {
        interval.check_within(self.horizon())?;
        let Interval {
            start,
            end,
            start_open,
            end_open,
        } = interval;
        if start == end && (start_open || end_open) {
            return Ok(0.0);
        }
        let upper = if end_open {
            self.left_limit(end)
        } else {
            self.eval(end)
        };
        let lower = if start_open {
            self.eval(start)
        } else {
            self.left_limit(start)
        };
        Ok(upper - lower)
    }
}
