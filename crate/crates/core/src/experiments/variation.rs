use std::fmt;
use std::str::FromStr;

use super::{map_replicas, ExperimentReport, McPlan, ReportRow};
use crate::error::{Error, Result};
use crate::stats::{log_log_slope, mean_estimate, CompensatedSum};
use crate::SampledPath;

/// Sum of squared increments along the grid.
pub fn quadratic_variation(path: &SampledPath) -> f64 {
    path.increments()
        .map(|d| d * d)
        .collect::<CompensatedSum>()
        .value()
}

/// Test function for the change of variables residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    /// `g(x) = x^2`, `g'(x) = 2x`.
    Square,
    /// `g(x) = |x|` with left derivative `-1` at `0`.
    Abs,
}

impl Transform {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Transform::Square => x * x,
            Transform::Abs => x.abs(),
        }
    }

    /// Derivative, or the left derivative where `g` is not differentiable.
    pub fn left_derivative(self, x: f64) -> f64 {
        match self {
            Transform::Square => 2.0 * x,
            Transform::Abs => {
                if x > 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transform::Square => "square",
            Transform::Abs => "abs",
        })
    }
}

impl FromStr for Transform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Transform::Square),
            "abs" => Ok(Transform::Abs),
            other => Err(Error::param("transform", other, "one of square, abs")),
        }
    }
}

/// `|g(B_T) - g(B_0) - sum g'(B_{t_{i-1}}) dB_i|` with left-endpoint evaluation.
pub fn change_of_variables_residual(path: &SampledPath, g: Transform) -> f64 {
    let v = path.values();
    let forward: CompensatedSum = v
        .windows(2)
        .map(|w| g.left_derivative(w[0]) * (w[1] - w[0]))
        .collect();
    (g.apply(path.last()) - g.apply(path.first()) - forward.value()).abs()
}

/// Applies `stat` to every grid of every replica; grid `k` of replica `i`
/// is a subsample of the same finest path.
fn per_grid<F>(plan: &McPlan, stat: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&SampledPath) -> f64 + Sync,
{
    plan.validate()?;
    let finest = plan.finest();
    let sampler = plan.sampler(1)?;
    let rows: Vec<Result<Vec<f64>>> = map_replicas(plan, &sampler, |_, path| {
        plan.grids
            .iter()
            .map(|&g| Ok(stat(&path.subsample(finest / g)?)))
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((0..plan.grids.len())
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect())
}

/// Mean estimates per grid followed by one summary row carrying the fitted
/// log-log slope of estimate against grid size.
fn grid_study(name: &str, plan: &McPlan, samples: Vec<Vec<f64>>) -> ExperimentReport {
    let mut report = ExperimentReport::default();
    let mut means = Vec::with_capacity(samples.len());
    for (&grid, xs) in plan.grids.iter().zip(&samples) {
        let est = mean_estimate(xs);
        means.push(est.mean);
        report.push(ReportRow::estimate(
            name,
            Some(grid),
            None,
            est.mean,
            Some(est.std_err),
        ));
    }
    if plan.grids.len() >= 2 {
        let grids: Vec<f64> = plan.grids.iter().map(|&g| g as f64).collect();
        let fit = log_log_slope(&grids, &means);
        report.push(ReportRow {
            slope: Some(fit.slope),
            slope_err: Some(fit.slope_err),
            ..ReportRow::estimate(&format!("{name}_slope"), None, None, fit.slope, None)
        });
    }
    report
}

/// Mean quadratic variation per grid and its log-log slope in the grid size.
/// The expected slope is `1 - 2H`.
pub fn qv_study(plan: &McPlan) -> Result<ExperimentReport> {
    let samples = per_grid(plan, quadratic_variation)?;
    Ok(grid_study("qv", plan, samples))
}

/// Mean change of variables residual per grid.
pub fn change_of_variables_study(plan: &McPlan, g: Transform) -> Result<ExperimentReport> {
    let samples = per_grid(plan, |p| change_of_variables_residual(p, g))?;
    Ok(grid_study(&format!("cov_{g}"), plan, samples))
}
