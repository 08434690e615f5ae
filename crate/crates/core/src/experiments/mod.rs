//! Monte Carlo experiments on Brownian and fractional Brownian paths.
//!
//! Replicas are independent: replica `i` draws from `rng::stream(seed, i)` and
//! replicas run in parallel. Per-replica results are collected in index order
//! and reduced with compensated summation, so a report does not depend on the
//! number of worker threads.

mod failure;
mod maxrep;
mod normal;
mod records;
mod report;
mod variation;

pub use failure::{failure_battery, FailureConfig};
pub use maxrep::{brownian_max_mean, mc_max_representation};
pub use normal::{clark_ocone_integrand, normal_cdf};
pub use records::{
    gls_indicator_experiment, indicator_grid_fn, positive_max_check, record_indicator_sum,
    record_occupation, RecordMode, DEFAULT_REFINE,
};
pub use report::{ExperimentReport, ReportRow};
pub use variation::{
    change_of_variables_residual, change_of_variables_study, quadratic_variation, qv_study,
    Transform,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fbm::{check_hurst, CirculantSampler};
use crate::SampledPath;

/// Replica count, seed and the dyadic grid sequence of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct McPlan {
    pub replicas: usize,
    pub base_seed: u64,
    pub grids: Vec<usize>,
    pub hurst: f64,
    pub horizon: f64,
}

impl McPlan {
    pub fn new(
        replicas: usize,
        base_seed: u64,
        grids: Vec<usize>,
        hurst: f64,
        horizon: f64,
    ) -> Result<Self> {
        let plan = Self {
            replicas,
            base_seed,
            grids,
            hurst,
            horizon,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        check_hurst(self.hurst)?;
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::param("horizon", self.horizon, "a finite value > 0"));
        }
        if self.replicas == 0 {
            return Err(Error::param("replicas", self.replicas, ">= 1"));
        }
        if self.grids.is_empty() {
            return Err(Error::param(
                "grids",
                "[]",
                "a non-empty list of powers of two",
            ));
        }
        if self.grids.iter().any(|g| !g.is_power_of_two()) {
            return Err(Error::param(
                "grids",
                format!("{:?}", self.grids),
                "powers of two",
            ));
        }
        if self.grids.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::param(
                "grids",
                format!("{:?}", self.grids),
                "strictly increasing",
            ));
        }
        Ok(())
    }

    pub fn finest(&self) -> usize {
        *self.grids.last().unwrap()
    }

    /// Sampler on the finest grid; coarser grids are subsamples of its paths.
    pub(crate) fn sampler(&self, refine: usize) -> Result<CirculantSampler> {
        CirculantSampler::new(self.hurst, self.horizon, self.finest() * refine)
    }
}

/// Runs `work(i, path_i)` for every replica in parallel, results in index order.
pub(crate) fn map_replicas<T, F>(plan: &McPlan, sampler: &CirculantSampler, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, SampledPath) -> T + Sync,
{
    (0..plan.replicas as u64)
        .into_par_iter()
        .map(|i| {
            let path = sampler.sample(&mut crate::rng::stream(plan.base_seed, i));
            work(i, path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_validation() {
        assert!(McPlan::new(10, 1, vec![256, 1024], 0.75, 1.0).is_ok());
        assert!(McPlan::new(10, 1, vec![256, 1000], 0.75, 1.0).is_err());
        assert!(McPlan::new(10, 1, vec![1024, 256], 0.75, 1.0).is_err());
        assert!(McPlan::new(10, 1, vec![], 0.75, 1.0).is_err());
        assert!(McPlan::new(0, 1, vec![4], 0.75, 1.0).is_err());
        assert!(McPlan::new(1, 1, vec![4], 1.75, 1.0).is_err());
    }
}
