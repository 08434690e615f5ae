//! Numerical fractional calculus on uniform grids.
//!
//! Functions are sampled on `t_i = i h` and read as their piecewise-linear
//! interpolant. Every singular kernel (`(s - u)^{beta - 1}`, `x^{-beta}`,
//! `(x - y)^{-beta - 1}`) is integrated in closed form against each linear
//! piece, so the operators below are exact for piecewise-linear input.

mod besov;
mod gls;
mod kernel;
mod operators;

pub use besov::{besov_norm_w1, besov_norm_w2, besov_report, BesovReport};
pub use gls::{gls_bound_check, gls_integral, GlsBound};
pub use operators::{rl_integral_left, rl_integral_right, weyl_deriv_left, weyl_deriv_right};

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::path::{uniform_grid, SampledPath};

/// Fractional order `beta in (0, 1)` and the grid resolution used when a
/// function has to be tabulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    pub beta: f64,
    pub grid_points: usize,
}

impl FracParams {
    pub fn new(beta: f64, grid_points: usize) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::param("beta", beta, "a value in (0, 1)"));
        }
        if grid_points < 2 {
            return Err(Error::param("grid_points", grid_points, ">= 2"));
        }
        Ok(Self { beta, grid_points })
    }

    /// Same resolution, complementary order `1 - beta`.
    pub fn complement(&self) -> Self {
        Self {
            beta: 1.0 - self.beta,
            grid_points: self.grid_points,
        }
    }

    pub fn gamma_beta(&self) -> f64 {
        gamma(self.beta)
    }

    pub fn gamma_one_minus_beta(&self) -> f64 {
        gamma(1.0 - self.beta)
    }
}

/// Midpoint of `(1 - H, 1/2)`, the default order for fBm experiments.
pub fn default_beta(hurst: f64) -> f64 {
    (1.0 - hurst + 0.5) / 2.0
}

/// Values on the uniform grid `i * horizon / steps`, `i = 0..=steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    horizon: f64,
    values: Vec<f64>,
}

impl GridFn {
    pub fn new(horizon: f64, values: Vec<f64>) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::param("horizon", horizon, "a finite value > 0"));
        }
        if values.len() < 2 {
            return Err(Error::InvalidFunction(
                "grid function needs at least two points".into(),
            ));
        }
        Ok(Self { horizon, values })
    }

    /// Tabulates `f` on `steps` uniform cells.
    pub fn from_fn(horizon: f64, steps: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            horizon,
            uniform_grid(horizon, steps).into_iter().map(f).collect(),
        )
    }

    /// Reads a uniformly sampled path.
    pub fn from_path(path: &SampledPath) -> Result<Self> {
        let g = Self::new(path.horizon(), path.values().to_vec())?;
        let h = g.step();
        let uniform = path
            .times()
            .iter()
            .enumerate()
            .all(|(i, &t)| (t - i as f64 * h).abs() <= 1e-9 * g.horizon);
        if !uniform {
            return Err(Error::InvalidFunction("path grid is not uniform".into()));
        }
        Ok(g)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.steps() as f64
    }

    pub fn times(&self) -> Vec<f64> {
        uniform_grid(self.horizon, self.steps())
    }

    /// Grid index of time `t`, which must lie on the grid.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let x = t / self.step();
        let k = x.round();
        if !(t > 0.0 && t <= self.horizon * (1.0 + 1e-12)) || (x - k).abs() > 1e-9 * x.max(1.0) {
            return Err(Error::Domain(format!(
                "t = {t} is not a positive grid point of [0, {}] with {} cells",
                self.horizon,
                self.steps()
            )));
        }
        Ok(k as usize)
    }

    /// Restriction to `[0, t]`, `t` a grid point.
    pub fn restrict(&self, t: f64) -> Result<Self> {
        let k = self.index_of(t)?;
        Ok(Self {
            horizon: k as f64 * self.step(),
            values: self.values[..=k].to_vec(),
        })
    }

    /// `x -> f(T - x)`.
    pub fn reflect(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self {
            horizon: self.horizon,
            values,
        }
    }

    /// Keeps every `stride`-th value.
    pub fn coarsen(&self, stride: usize) -> Result<Self> {
        if stride == 0 || !self.steps().is_multiple_of(stride) {
            return Err(Error::param(
                "stride",
                stride,
                "a positive divisor of the number of cells",
            ));
        }
        Ok(Self {
            horizon: self.horizon,
            values: self.values.iter().step_by(stride).copied().collect(),
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            horizon: self.horizon,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `a * self + b * other` on a common grid.
    pub fn combine(&self, a: f64, other: &GridFn, b: f64) -> Result<Self> {
        if self.values.len() != other.values.len() || self.horizon != other.horizon {
            return Err(Error::InvalidFunction(
                "grid functions live on different grids".into(),
            ));
        }
        Ok(Self {
            horizon: self.horizon,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }
}
