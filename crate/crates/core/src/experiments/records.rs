use super::{map_replicas, ExperimentReport, McPlan, ReportRow};
use crate::error::{Error, Result};
use crate::fbm::check_hurst;
use crate::fraccalc::{besov_norm_w1, besov_norm_w2, gls_integral, FracParams, GridFn};
use crate::stats::CompensatedSum;
use crate::SampledPath;

/// Refinement factor of the reference grid used by the eps-band reading.
pub const DEFAULT_REFINE: usize = 16;

/// Discretization of the record event `{B_t = M_t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecordMode {
    /// `B_{t_i} = max_{j <= i} B_{t_j}` on the grid itself.
    DiscreteRecord,
    /// `M_{t_i} - B_{t_i} <= eps`, with `M` the running maximum of the path on
    /// a reference grid `refine` times finer than the summation grid.
    EpsBand { eps: f64, refine: usize },
}

impl RecordMode {
    pub fn eps_band(eps: f64) -> Self {
        RecordMode::EpsBand {
            eps,
            refine: DEFAULT_REFINE,
        }
    }
}

/// Indicator values on the summation grid, with the starting point set to 0.
fn indicator(path: &SampledPath, mode: RecordMode) -> Result<(Vec<f64>, Vec<f64>)> {
    match mode {
        RecordMode::DiscreteRecord => {
            let v = path.values().to_vec();
            let mut m = f64::NEG_INFINITY;
            let ind = v
                .iter()
                .map(|&x| {
                    let hit = x >= m;
                    m = m.max(x);
                    if hit {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect::<Vec<_>>();
            Ok((v, ind))
        }
        RecordMode::EpsBand { eps, refine } => {
            if !(eps >= 0.0 && eps.is_finite()) {
                return Err(Error::param("eps", eps, "a finite value >= 0"));
            }
            let coarse = path.subsample(refine)?;
            let fine_max = path.running_max();
            let ind = coarse
                .values()
                .iter()
                .zip(fine_max.values().iter().step_by(refine))
                .map(|(&b, &m)| if m - b <= eps { 1.0 } else { 0.0 })
                .collect();
            Ok((coarse.values().to_vec(), ind))
        }
    }
}

/// `sum_i 1{record at t_i} (B_{t_i} - B_{t_{i-1}})`.
///
/// In eps-band mode `path` is the reference path and the sum runs over every
/// `refine`-th point of it.
pub fn record_indicator_sum(path: &SampledPath, mode: RecordMode) -> Result<f64> {
    let (v, ind) = indicator(path, mode)?;
    Ok((1..v.len())
        .filter(|&i| ind[i] != 0.0)
        .map(|i| v[i] - v[i - 1])
        .collect::<CompensatedSum>()
        .value())
}

/// Eps-band indicator on the summation grid as a [`GridFn`], zero at `t = 0`.
pub fn indicator_grid_fn(path: &SampledPath, eps: f64, refine: usize) -> Result<GridFn> {
    let (_, mut ind) = indicator(path, RecordMode::EpsBand { eps, refine })?;
    ind[0] = 0.0;
    GridFn::new(path.horizon(), ind)
}

/// Fraction of grid points with `M_t - B_t <= eps`, `M` the on-grid running max.
pub fn record_occupation(path: &SampledPath, eps: f64) -> Result<f64> {
    if !(eps >= 0.0) {
        return Err(Error::param("eps", eps, ">= 0"));
    }
    let m = path.running_max();
    let hits = m
        .values()
        .iter()
        .zip(path.values())
        .filter(|(&m, &b)| m - b <= eps)
        .count();
    Ok(hits as f64 / path.len() as f64)
}

/// Whether the on-grid maximum over `(0, T/10]` is `<= 0`. Uses the points
/// `1..=max(1, n/10)`.
pub(crate) fn early_max_nonpositive(path: &SampledPath) -> bool {
    let k = (path.steps() / 10).max(1);
    path.values()[1..=k].iter().all(|&x| x <= 0.0)
}

/// Fraction of replicas whose discrete maximum over `(0, T/10]` is `<= 0`,
/// one `positive_max` row per grid.
pub fn positive_max_check(plan: &McPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    let finest = plan.finest();
    let sampler = plan.sampler(1)?;
    let hits: Vec<Result<Vec<bool>>> = map_replicas(plan, &sampler, |_, path| {
        plan.grids
            .iter()
            .map(|&g| Ok(early_max_nonpositive(&path.subsample(finest / g)?)))
            .collect()
    });
    let hits = hits.into_iter().collect::<Result<Vec<_>>>()?;
    let n = plan.replicas as f64;
    let mut report = ExperimentReport::default();
    for (k, &grid) in plan.grids.iter().enumerate() {
        let p = hits.iter().filter(|h| h[k]).count() as f64 / n;
        let se = (p * (1.0 - p) / n).sqrt();
        report.push(ReportRow::estimate(
            "positive_max",
            Some(grid),
            None,
            p,
            Some(se),
        ));
    }
    Ok(report)
}

/// For each `eps` (absolute), builds the eps-band record indicator `f` of
/// `path` on the summation grid and reports `||f||_{2,beta}`,
/// `int_0^T f dB` and the bound `||f||_{2,beta} ||B||_{1,1-beta} / Gamma(beta)`
/// as rows `indicator_norm_w2`, `gls_indicator_integral` and `gls_bound_rhs`.
///
/// `path` is the reference path; the summation grid keeps every `refine`-th
/// point. Requires `hurst > 1/2` and `beta` in `(1 - hurst, 1/2)`.
pub fn gls_indicator_experiment(
    path: &SampledPath,
    params: &FracParams,
    eps_list: &[f64],
    refine: usize,
    hurst: f64,
) -> Result<ExperimentReport> {
    check_hurst(hurst)?;
    if hurst <= 0.5 {
        return Err(Error::param("hurst", hurst, "a value in (0.5, 1)"));
    }
    let beta = params.beta;
    if !(beta > 1.0 - hurst && beta < 0.5) {
        return Err(Error::param("beta", beta, "a value in (1 - H, 0.5)"));
    }
    let coarse = path.subsample(refine)?;
    let g = GridFn::from_path(&coarse)?;
    let params = FracParams::new(beta, coarse.len())?;
    let g_norm = besov_norm_w1(&g, &params.complement());
    let horizon = path.horizon();
    let mut report = ExperimentReport::default();
    for &eps in eps_list {
        let f = indicator_grid_fn(path, eps, refine)?;
        let norm = besov_norm_w2(&f, &params);
        let integral = gls_integral(&f, &g, &params, horizon)?;
        let rhs = norm * g_norm / params.gamma_beta();
        let grid = Some(coarse.steps());
        report.push(ReportRow::estimate(
            "indicator_norm_w2",
            grid,
            Some(eps),
            norm,
            None,
        ));
        report.push(ReportRow::estimate(
            "gls_indicator_integral",
            grid,
            Some(eps),
            integral,
            None,
        ));
        report.push(ReportRow::estimate(
            "gls_bound_rhs",
            grid,
            Some(eps),
            rhs,
            None,
        ));
    }
    Ok(report)
}
