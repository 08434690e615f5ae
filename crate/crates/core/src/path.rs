use crate::error::{Error, Result};

/// A function sampled on an ordered time grid starting at zero.
///
/// Houses generated fBm / Brownian paths, their running maxima and the
/// partitions used by the Riemann–Stieltjes experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl SampledPath {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::InvalidFunction(
                "path needs at least one point".into(),
            ));
        }
        if times.len() != values.len() {
            return Err(Error::InvalidFunction(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times[0] != 0.0 {
            return Err(Error::InvalidFunction(format!(
                "path must start at t = 0, got {}",
                times[0]
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidFunction(
                "times must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidFunction("non-finite path value".into()));
        }
        Ok(Self { times, values })
    }

    /// Path on the uniform grid `i * horizon / (values.len() - 1)`.
    pub fn uniform(horizon: f64, values: Vec<f64>) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::param("horizon", horizon, "> 0"));
        }
        if values.len() < 2 {
            return Err(Error::InvalidFunction(
                "uniform path needs at least two points".into(),
            ));
        }
        let times = uniform_grid(horizon, values.len() - 1);
        Self::new(times, values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of grid cells.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn increments(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.windows(2).map(|w| w[1] - w[0])
    }

    /// Running maximum on the grid (`max_{j <= i} values[j]`).
    pub fn running_max(&self) -> SampledPath {
        let mut m = f64::NEG_INFINITY;
        let values = self
            .values
            .iter()
            .map(|&v| {
                m = m.max(v);
                m
            })
            .collect();
        SampledPath {
            times: self.times.clone(),
            values,
        }
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Keeps every `stride`-th point. `steps()` must be divisible by `stride`.
    pub fn subsample(&self, stride: usize) -> Result<SampledPath> {
        if stride == 0 || !self.steps().is_multiple_of(stride) {
            return Err(Error::param(
                "stride",
                stride,
                "a positive divisor of the number of steps",
            ));
        }
        let pick = |xs: &[f64]| xs.iter().step_by(stride).copied().collect::<Vec<_>>();
        Ok(SampledPath {
            times: pick(&self.times),
            values: pick(&self.values),
        })
    }
}

/// `steps + 1` points `i * horizon / steps`, with the last point exactly `horizon`.
pub fn uniform_grid(horizon: f64, steps: usize) -> Vec<f64> {
    let mut t: Vec<f64> = (0..=steps)
        .map(|i| i as f64 * horizon / steps as f64)
        .collect();
    t[steps] = horizon;
    t
}
