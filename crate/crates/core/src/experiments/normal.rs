use std::f64::consts::SQRT_2;

use libm::erfc;

use crate::error::{Error, Result};

/// Standard normal distribution function `Phi(x)`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Integrand `2 (1 - Phi((S_t - W_t) / sqrt(T - t)))` of the martingale
/// representation of the Brownian maximum `S_T`.
pub fn clark_ocone_integrand(running_max: f64, value: f64, t: f64, horizon: f64) -> Result<f64> {
    if !(t < horizon) {
        return Err(Error::Domain(format!(
            "integrand needs t < horizon (t = {t}, horizon = {horizon})"
        )));
    }
    if running_max < value {
        return Err(Error::Domain(format!(
            "running maximum {running_max} is below the current value {value}"
        )));
    }
    let gap = running_max - value;
    Ok(2.0 * (1.0 - normal_cdf(gap / (horizon - t).sqrt())))
}
