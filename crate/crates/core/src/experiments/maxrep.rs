use std::f64::consts::PI;

use super::{map_replicas, normal::clark_ocone_integrand, ExperimentReport, McPlan, ReportRow};
use crate::error::{Error, Result};
use crate::stats::{mean_estimate, CompensatedSum};
use crate::SampledPath;

/// `E(S_T) = sqrt(2T / pi)` for standard Brownian motion.
pub fn brownian_max_mean(horizon: f64) -> f64 {
    (2.0 * horizon / PI).sqrt()
}

/// Discrete maximum and martingale-representation residual
/// `S_T - E(S_T) - sum h(t_{i-1}) dW_i` of one Brownian path.
fn max_and_residual(path: &SampledPath, target: f64) -> Result<(f64, f64)> {
    let horizon = path.horizon();
    let times = path.times();
    let values = path.values();
    let mut running_max = values[0];
    let mut integral = CompensatedSum::new();
    for i in 1..values.len() {
        let h = clark_ocone_integrand(running_max, values[i - 1], times[i - 1], horizon)?;
        integral.add(h * (values[i] - values[i - 1]));
        running_max = running_max.max(values[i]);
    }
    Ok((
        running_max,
        running_max - values[0] - target - integral.value(),
    ))
}

/// Monte Carlo check of the Brownian maximum representation on every grid of
/// `plan`. Coarser grids reuse subsamples of the finest path.
///
/// Rows per grid: `maxrep_mean` (estimate of `E(S_T)`), `maxrep_abs_error`
/// (`|estimate - sqrt(2T/pi)|`) and `maxrep_residual_rms`.
pub fn mc_max_representation(plan: &McPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    if plan.hurst != 0.5 {
        return Err(Error::param(
            "hurst",
            plan.hurst,
            "exactly 0.5 (Brownian motion)",
        ));
    }
    let target = brownian_max_mean(plan.horizon);
    let finest = plan.finest();
    let sampler = plan.sampler(1)?;
    let per_replica: Vec<Result<Vec<(f64, f64)>>> = map_replicas(plan, &sampler, |_, path| {
        plan.grids
            .iter()
            .map(|&g| max_and_residual(&path.subsample(finest / g)?, target))
            .collect()
    });
    let per_replica = per_replica.into_iter().collect::<Result<Vec<_>>>()?;

    let mut report = ExperimentReport::default();
    for (k, &grid) in plan.grids.iter().enumerate() {
        let maxima: Vec<f64> = per_replica.iter().map(|r| r[k].0).collect();
        let squared: Vec<f64> = per_replica.iter().map(|r| r[k].1 * r[k].1).collect();
        let mean = mean_estimate(&maxima);
        let ms = mean_estimate(&squared);
        let rms = ms.mean.sqrt();
        let rms_err = if rms > 0.0 {
            ms.std_err / (2.0 * rms)
        } else {
            0.0
        };
        report.push(ReportRow::estimate(
            "maxrep_mean",
            Some(grid),
            None,
            mean.mean,
            Some(mean.std_err),
        ));
        report.push(ReportRow::estimate(
            "maxrep_abs_error",
            Some(grid),
            None,
            (mean.mean - target).abs(),
            Some(mean.std_err),
        ));
        report.push(ReportRow::estimate(
            "maxrep_residual_rms",
            Some(grid),
            None,
            rms,
            Some(rms_err),
        ));
    }
    Ok(report)
}
