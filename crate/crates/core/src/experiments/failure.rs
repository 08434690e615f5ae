use super::records::{
    gls_indicator_experiment, record_indicator_sum, record_occupation, RecordMode, DEFAULT_REFINE,
};
use super::{map_replicas, ExperimentReport, McPlan, ReportRow};
use crate::error::{Error, Result};
use crate::fraccalc::{default_beta, FracParams};
use crate::stats::mean_estimate;

/// Settings of the record-indicator failure battery.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureConfig {
    pub hurst: f64,
    pub horizon: f64,
    pub beta: f64,
    pub replicas: usize,
    pub seed: u64,
    /// Summation grids, powers of two in increasing order.
    pub grids: Vec<usize>,
    /// Band widths relative to the range of each path, in decreasing order.
    pub eps_list: Vec<f64>,
    pub refine: usize,
    /// Number of replicas (the first ones) that also run the GLS rows.
    pub gls_paths: usize,
    /// Summation grid of the GLS rows; must be one of `grids`.
    pub gls_grid: usize,
}

impl FailureConfig {
    pub fn new(hurst: f64) -> Self {
        Self {
            hurst,
            horizon: 1.0,
            beta: default_beta(hurst),
            replicas: 1000,
            seed: 42,
            grids: vec![256, 1024, 4096],
            eps_list: vec![1e-1, 1e-2, 1e-3],
            refine: DEFAULT_REFINE,
            gls_paths: 16,
            gls_grid: 1024,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.plan()?;
        if self.hurst <= 0.5 {
            return Err(Error::param("hurst", self.hurst, "a value in (0.5, 1)"));
        }
        if !(self.beta > 1.0 - self.hurst && self.beta < 0.5) {
            return Err(Error::param("beta", self.beta, "a value in (1 - H, 0.5)"));
        }
        if self.eps_list.is_empty() || self.eps_list.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(Error::param(
                "eps",
                format!("{:?}", self.eps_list),
                "a non-empty list of values > 0",
            ));
        }
        if !self.refine.is_power_of_two() {
            return Err(Error::param("refine", self.refine, "a power of two"));
        }
        if self.gls_paths > self.replicas {
            return Err(Error::param("gls_paths", self.gls_paths, "<= replicas"));
        }
        if !self.grids.contains(&self.gls_grid) {
            return Err(Error::param("gls_grid", self.gls_grid, "one of the grids"));
        }
        Ok(())
    }

    /// Reference paths live on the finest grid refined `refine` times.
    fn plan(&self) -> Result<McPlan> {
        McPlan::new(
            self.replicas,
            self.seed,
            self.grids.clone(),
            self.hurst,
            self.horizon,
        )
    }
}

struct ReplicaStats {
    /// Per grid: discrete record sum, discrete max gain, occupation at eps = 0.
    discrete: Vec<(f64, f64, f64)>,
    /// Per grid, per eps: eps-band record sum.
    band: Vec<Vec<f64>>,
    gls: Option<ExperimentReport>,
}

/// Runs the record-indicator battery for fBm with `H > 1/2`.
///
/// Rows, per summation grid: `discrete_record_sum`, `max_gain`
/// (`M_T - B_0` on the grid), `discrete_record_excess_min` (smallest
/// `sum - gain` over paths, never negative), `record_occupation` at eps = 0,
/// and `eps_band_abs_sum` (mean absolute eps-band sum) for every eps.
/// On `gls_grid` the first `gls_paths` replicas add path-averaged
/// `indicator_norm_w2`, `gls_indicator_abs_integral` and `gls_bound_rhs` per eps, and
/// `gls_bound_max_ratio`, the largest `|integral| / bound` seen.
pub fn failure_battery(config: &FailureConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let plan = config.plan()?;
    let finest = plan.finest();
    let sampler = plan.sampler(config.refine)?;
    let reference_steps = finest * config.refine;
    let params = FracParams::new(config.beta, config.gls_grid + 1)?;

    let stats: Vec<Result<ReplicaStats>> = map_replicas(&plan, &sampler, |i, path| {
        let range = path.max() - path.min();
        let mut discrete = Vec::with_capacity(config.grids.len());
        let mut band = Vec::with_capacity(config.grids.len());
        let mut gls = None;
        for &g in &config.grids {
            let on_grid = path.subsample(reference_steps / g)?;
            let sum = record_indicator_sum(&on_grid, RecordMode::DiscreteRecord)?;
            let gain = on_grid.max() - on_grid.first();
            discrete.push((sum, gain, record_occupation(&on_grid, 0.0)?));
            let reference = path.subsample(reference_steps / (g * config.refine))?;
            band.push(
                config
                    .eps_list
                    .iter()
                    .map(|&e| {
                        record_indicator_sum(
                            &reference,
                            RecordMode::EpsBand {
                                eps: e * range,
                                refine: config.refine,
                            },
                        )
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
            if g == config.gls_grid && (i as usize) < config.gls_paths {
                let eps_abs: Vec<f64> = config.eps_list.iter().map(|e| e * range).collect();
                gls = Some(gls_indicator_experiment(
                    &reference,
                    &params,
                    &eps_abs,
                    config.refine,
                    config.hurst,
                )?);
            }
        }
        Ok(ReplicaStats {
            discrete,
            band,
            gls,
        })
    });
    let stats = stats.into_iter().collect::<Result<Vec<_>>>()?;

    let mut report = ExperimentReport::default();
    for (k, &grid) in config.grids.iter().enumerate() {
        let column = |f: &dyn Fn(&(f64, f64, f64)) -> f64| {
            stats.iter().map(|s| f(&s.discrete[k])).collect::<Vec<_>>()
        };
        let sums = mean_estimate(&column(&|d| d.0));
        let gains = mean_estimate(&column(&|d| d.1));
        let excess = column(&|d| d.0 - d.1)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let occupation = mean_estimate(&column(&|d| d.2));
        let g = Some(grid);
        report.push(ReportRow::estimate(
            "discrete_record_sum",
            g,
            None,
            sums.mean,
            Some(sums.std_err),
        ));
        report.push(ReportRow::estimate(
            "max_gain",
            g,
            None,
            gains.mean,
            Some(gains.std_err),
        ));
        report.push(ReportRow::estimate(
            "discrete_record_excess_min",
            g,
            None,
            excess,
            None,
        ));
        report.push(ReportRow::estimate(
            "record_occupation",
            g,
            Some(0.0),
            occupation.mean,
            Some(occupation.std_err),
        ));
        for (j, &eps) in config.eps_list.iter().enumerate() {
            let abs: Vec<f64> = stats.iter().map(|s| s.band[k][j].abs()).collect();
            let est = mean_estimate(&abs);
            report.push(ReportRow::estimate(
                "eps_band_abs_sum",
                g,
                Some(eps),
                est.mean,
                Some(est.std_err),
            ));
        }
    }

    let gls: Vec<&ExperimentReport> = stats.iter().filter_map(|s| s.gls.as_ref()).collect();
    if !gls.is_empty() {
        let g = Some(config.gls_grid);
        let mut max_ratio: f64 = 0.0;
        for (j, &eps) in config.eps_list.iter().enumerate() {
            let pick = |name: &str, abs: bool| -> Vec<f64> {
                gls.iter()
                    .map(|r| {
                        let v = r.rows_for(name).nth(j).map_or(f64::NAN, |row| row.estimate);
                        if abs {
                            v.abs()
                        } else {
                            v
                        }
                    })
                    .collect()
            };
            let norms = pick("indicator_norm_w2", false);
            let integrals = pick("gls_indicator_integral", true);
            let bounds = pick("gls_bound_rhs", false);
            for (a, b) in integrals.iter().zip(&bounds) {
                let ratio = if *a == 0.0 { 0.0 } else { a / b };
                max_ratio = max_ratio.max(ratio);
            }
            for (name, xs) in [
                ("indicator_norm_w2", norms),
                ("gls_indicator_abs_integral", integrals),
                ("gls_bound_rhs", bounds),
            ] {
                let est = mean_estimate(&xs);
                report.push(ReportRow::estimate(
                    name,
                    g,
                    Some(eps),
                    est.mean,
                    Some(est.std_err),
                ));
            }
        }
        report.push(ReportRow::estimate(
            "gls_bound_max_ratio",
            g,
            None,
            max_ratio,
            None,
        ));
    }
    Ok(report)
}
