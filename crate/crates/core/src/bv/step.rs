use crate::error::{Error, Result};

use super::{BoundedVariation, PiecewiseLinearFn};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub time: f64,
    pub size: f64,
}

/// Right-continuous pure-jump function on `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFn {
    initial_value: f64,
    jumps: Vec<Jump>,
    horizon: f64,
}

impl StepFn {
    pub fn new(initial_value: f64, jumps: Vec<Jump>, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::param("horizon", horizon, "a finite value > 0"));
        }
        if !initial_value.is_finite() {
            return Err(Error::InvalidFunction("non-finite initial value".into()));
        }
        for (i, j) in jumps.iter().enumerate() {
            if !(j.time > 0.0 && j.time <= horizon) {
                return Err(Error::InvalidFunction(format!(
                    "jump time {} outside (0, {horizon}]",
                    j.time
                )));
            }
            if j.size == 0.0 || !j.size.is_finite() {
                return Err(Error::InvalidFunction(format!(
                    "jump at {} has size {}",
                    j.time, j.size
                )));
            }
            if i > 0 && !(j.time > jumps[i - 1].time) {
                return Err(Error::InvalidFunction(
                    "jump times must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self {
            initial_value,
            jumps,
            horizon,
        })
    }

    pub fn initial_value(&self) -> f64 {
        self.initial_value
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    /// Running maximum, itself a step function.
    pub fn running_max(&self) -> StepFn {
        let mut level = self.initial_value;
        let mut max = level;
        let mut jumps = Vec::new();
        for j in &self.jumps {
            level += j.size;
            if level > max {
                jumps.push(Jump {
                    time: j.time,
                    size: level - max,
                });
                max = level;
            }
        }
        StepFn {
            initial_value: self.initial_value,
            jumps,
            horizon: self.horizon,
        }
    }

    fn sum_jumps(&self, include: impl Fn(f64) -> bool) -> f64 {
        self.jumps
            .iter()
            .filter(|j| include(j.time))
            .map(|j| j.size)
            .sum()
    }
}

impl BoundedVariation for StepFn {
    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn eval(&self, t: f64) -> f64 {
        self.initial_value + self.sum_jumps(|s| s <= t)
    }

    fn left_limit(&self, t: f64) -> f64 {
        self.initial_value + self.sum_jumps(|s| s < t)
    }

    fn total_variation(&self) -> f64 {
        self.jumps.iter().map(|j| j.size.abs()).sum()
    }
}

/// Continuous piecewise-linear part plus a step overlay:
/// `f(t) = c(t) + s(t)`, right-continuous.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedFn {
    continuous: PiecewiseLinearFn,
    jumps: StepFn,
}

impl MixedFn {
    pub fn new(continuous: PiecewiseLinearFn, jumps: StepFn) -> Result<Self> {
        if continuous.horizon() != jumps.horizon() {
            return Err(Error::InvalidFunction(format!(
                "continuous part ends at {} but step part at {}",
                continuous.horizon(),
                jumps.horizon()
            )));
        }
        Ok(Self { continuous, jumps })
    }

    pub fn continuous(&self) -> &PiecewiseLinearFn {
        &self.continuous
    }

    pub fn step(&self) -> &StepFn {
        &self.jumps
    }

    /// Maximum of `|f|` over knot values, left limits and jump landings.
    pub(crate) fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for &t in self
            .continuous
            .knots()
            .iter()
            .chain(self.jumps.jumps().iter().map(|j| &j.time))
        {
            m = m.max(self.eval(t).abs()).max(self.left_limit(t).abs());
        }
        m
    }
}

impl From<PiecewiseLinearFn> for MixedFn {
    fn from(continuous: PiecewiseLinearFn) -> Self {
        let jumps = StepFn::new(0.0, Vec::new(), continuous.horizon()).expect("valid horizon");
        Self { continuous, jumps }
    }
}

impl From<StepFn> for MixedFn {
    fn from(jumps: StepFn) -> Self {
        let continuous = PiecewiseLinearFn::constant(jumps.horizon(), 0.0).expect("valid horizon");
        Self { continuous, jumps }
    }
}

impl BoundedVariation for MixedFn {
    fn horizon(&self) -> f64 {
        self.continuous.horizon()
    }

    fn eval(&self, t: f64) -> f64 {
        self.continuous.eval(t) + self.jumps.eval(t)
    }

    fn left_limit(&self, t: f64) -> f64 {
        self.continuous.eval(t) + self.jumps.left_limit(t)
    }

    fn total_variation(&self) -> f64 {
        self.continuous.total_variation() + self.jumps.total_variation()
    }
}
