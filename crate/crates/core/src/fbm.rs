//! Exact fractional Brownian motion sampling on uniform grids.
//!
//! Two samplers share one contract: the returned values are a draw from the
//! centred Gaussian vector with covariance
//! `E(B_s B_t) = (t^{2H} + s^{2H} - |t - s|^{2H}) / 2` on the grid
//! `t_i = i * horizon / steps`, with `B_0 = 0`.
//!
//! * [`CholeskySampler`] factors the full covariance matrix (cubic cost, capped).
//! * [`CirculantSampler`] embeds the increment autocovariance in a circulant
//!   matrix of size `2 * steps` and colours white noise with one FFT.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::path::{uniform_grid, SampledPath};
use crate::rng;

/// Largest grid the Cholesky sampler accepts by default.
pub const DEFAULT_CHOLESKY_CAP: usize = 4096;

/// Relative tolerance for negative circulant eigenvalues.
pub const DEFAULT_EIG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FbmMethod {
    Cholesky,
    #[default]
    Circulant,
}

impl fmt::Display for FbmMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FbmMethod::Cholesky => "cholesky",
            FbmMethod::Circulant => "circulant",
        })
    }
}

impl FromStr for FbmMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cholesky" => Ok(FbmMethod::Cholesky),
            "circulant" => Ok(FbmMethod::Circulant),
            other => Err(Error::param(
                "method",
                other,
                "one of {cholesky, circulant}",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbmConfig {
    pub hurst: f64,
    pub horizon: f64,
    pub steps: usize,
    pub seed: u64,
    pub method: FbmMethod,
}

impl FbmConfig {
    pub fn new(
        hurst: f64,
        horizon: f64,
        steps: usize,
        seed: u64,
        method: FbmMethod,
    ) -> Result<Self> {
        let config = Self {
            hurst,
            horizon,
            steps,
            seed,
            method,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        check_hurst(self.hurst)?;
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::param("horizon", self.horizon, "a finite value > 0"));
        }
        if self.steps == 0 {
            return Err(Error::param("steps", self.steps, ">= 1"));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.horizon, self.steps)
    }
}

pub(crate) fn check_hurst(hurst: f64) -> Result<()> {
    if hurst > 0.0 && hurst < 1.0 {
        Ok(())
    } else {
        Err(Error::param("hurst", hurst, "a value in (0, 1)"))
    }
}

/// `E(B_s B_t)` for fBm with Hurst index `hurst`.
pub fn fbm_covariance(s: f64, t: f64, hurst: f64) -> Result<f64> {
    check_hurst(hurst)?;
    if !(s >= 0.0 && t >= 0.0) {
        return Err(Error::Domain(format!(
            "covariance needs s, t >= 0 (got s = {s}, t = {t})"
        )));
    }
    Ok(covariance_unchecked(s, t, hurst))
}

fn covariance_unchecked(s: f64, t: f64, hurst: f64) -> f64 {
    let h2 = 2.0 * hurst;
    0.5 * (t.powf(h2) + s.powf(h2) - (t - s).abs().powf(h2))
}

/// Autocovariance of unit-step fractional Gaussian noise at lag `k`.
pub fn fgn_autocovariance(k: usize, hurst: f64) -> f64 {
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(h2) + (k - 1.0).abs().powf(h2) - 2.0 * k.powf(h2))
}

/// Draws `B_{t_1}, ..., B_{t_n}` by multiplying white noise with the lower
/// Cholesky factor of the covariance matrix.
#[derive(Debug, Clone)]
pub struct CholeskySampler {
    horizon: f64,
    steps: usize,
    /// Row-major packed lower triangle, row `i` holds `i + 1` entries.
    factor: Vec<f64>,
}

impl CholeskySampler {
    pub fn new(hurst: f64, horizon: f64, steps: usize) -> Result<Self> {
        Self::with_cap(hurst, horizon, steps, DEFAULT_CHOLESKY_CAP)
    }

    pub fn with_cap(hurst: f64, horizon: f64, steps: usize, cap: usize) -> Result<Self> {
        FbmConfig {
            hurst,
            horizon,
            steps,
            seed: 0,
            method: FbmMethod::Cholesky,
        }
        .validate()?;
        if steps > cap {
            return Err(Error::StepCapExceeded { steps, cap });
        }
        let times = uniform_grid(horizon, steps);
        let n = steps;
        let row_start = |i: usize| i * (i + 1) / 2;
        let mut l = vec![0.0; n * (n + 1) / 2];
        for i in 0..n {
            let ti = times[i + 1];
            for j in 0..=i {
                let tj = times[j + 1];
                let (ri, rj) = (row_start(i), row_start(j));
                let dot: f64 = l[ri..ri + j]
                    .iter()
                    .zip(&l[rj..rj + j])
                    .map(|(a, b)| a * b)
                    .sum();
                let a = covariance_unchecked(ti, tj, hurst) - dot;
                if i == j {
                    if !(a > 0.0) {
                        return Err(Error::NotPositiveDefinite { row: i, pivot: a });
                    }
                    l[ri + i] = a.sqrt();
                } else {
                    l[ri + j] = a / l[rj + j];
                }
            }
        }
        Ok(Self {
            horizon,
            steps,
            factor: l,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SampledPath {
        let n = self.steps;
        let mut z = vec![0.0; n];
        rng::fill_standard_normal(rng, &mut z);
        let mut values = Vec::with_capacity(n + 1);
        values.push(0.0);
        let mut start = 0;
        for i in 0..n {
            let row = &self.factor[start..start + i + 1];
            values.push(row.iter().zip(&z).map(|(a, b)| a * b).sum());
            start += i + 1;
        }
        SampledPath::uniform(self.horizon, values).expect("generated path is valid")
    }
}

/// Circulant-embedding (Davies–Harte / Wood–Chan) sampler for fBm increments.
#[derive(Clone)]
pub struct CirculantSampler {
    horizon: f64,
    steps: usize,
    /// `sqrt(lambda_k / m)` for the `m = 2 * steps` circulant eigenvalues.
    scaled_roots: Vec<f64>,
    /// `(horizon / steps)^H`.
    increment_scale: f64,
    fft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for CirculantSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CirculantSampler")
            .field("horizon", &self.horizon)
            .field("steps", &self.steps)
            .finish_non_exhaustive()
    }
}

impl CirculantSampler {
    pub fn new(hurst: f64, horizon: f64, steps: usize) -> Result<Self> {
        Self::with_tolerance(hurst, horizon, steps, DEFAULT_EIG_TOL)
    }

    pub fn with_tolerance(hurst: f64, horizon: f64, steps: usize, eig_tol: f64) -> Result<Self> {
        FbmConfig {
            hurst,
            horizon,
            steps,
            seed: 0,
            method: FbmMethod::Circulant,
        }
        .validate()?;
        let eigenvalues = circulant_eigenvalues(hurst, steps);
        let m = eigenvalues.len();
        let max = eigenvalues.iter().copied().fold(0.0, f64::max);
        let tol = eig_tol * max;
        let (index, min) = eigenvalues
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if min < -tol {
            return Err(Error::NegativeEigenvalue { index, min, tol });
        }
        let scaled_roots = eigenvalues
            .iter()
            .map(|&l| (l.max(0.0) / m as f64).sqrt())
            .collect();
        let fft = FftPlanner::new().plan_fft_forward(m);
        Ok(Self {
            horizon,
            steps,
            scaled_roots,
            increment_scale: (horizon / steps as f64).powf(hurst),
            fft,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SampledPath {
        let m = self.scaled_roots.len();
        let mut noise = vec![0.0; 2 * m];
        rng::fill_standard_normal(rng, &mut noise);
        let mut w: Vec<Complex<f64>> = self
            .scaled_roots
            .iter()
            .zip(noise.chunks_exact(2))
            .map(|(&r, z)| Complex::new(r * z[0], r * z[1]))
            .collect();
        self.fft.process(&mut w);
        let mut values = Vec::with_capacity(self.steps + 1);
        let mut level = 0.0;
        values.push(level);
        for y in &w[..self.steps] {
            level += self.increment_scale * y.re;
            values.push(level);
        }
        SampledPath::uniform(self.horizon, values).expect("generated path is valid")
    }
}

/// Eigenvalues of the `2n x 2n` circulant whose first row embeds the
/// unit-step fGn autocovariance `gamma(0..=n)`.
pub fn circulant_eigenvalues(hurst: f64, steps: usize) -> Vec<f64> {
    let n = steps;
    let m = 2 * n;
    let mut row: Vec<Complex<f64>> = (0..m)
        .map(|j| {
            let lag = if j <= n { j } else { m - j };
            Complex::new(fgn_autocovariance(lag, hurst), 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut row);
    row.into_iter().map(|c| c.re).collect()
}

/// Either sampler, built once and reused across replicas.
#[derive(Debug, Clone)]
pub enum FbmSampler {
    Cholesky(CholeskySampler),
    Circulant(CirculantSampler),
}

impl FbmSampler {
    pub fn new(config: &FbmConfig) -> Result<Self> {
        config.validate()?;
        Ok(match config.method {
            FbmMethod::Cholesky => FbmSampler::Cholesky(CholeskySampler::new(
                config.hurst,
                config.horizon,
                config.steps,
            )?),
            FbmMethod::Circulant => FbmSampler::Circulant(CirculantSampler::new(
                config.hurst,
                config.horizon,
                config.steps,
            )?),
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SampledPath {
        match self {
            FbmSampler::Cholesky(s) => s.sample(rng),
            FbmSampler::Circulant(s) => s.sample(rng),
        }
    }

    /// Path for replica `index` of an experiment seeded with `seed`.
    pub fn sample_replica(&self, seed: u64, index: u64) -> SampledPath {
        self.sample(&mut rng::stream(seed, index))
    }
}

/// One path from the Cholesky sampler, drawn from stream `(seed, 0)`.
pub fn sample_cholesky(config: &FbmConfig) -> Result<SampledPath> {
    config.validate()?;
    Ok(
        CholeskySampler::new(config.hurst, config.horizon, config.steps)?
            .sample(&mut rng::stream(config.seed, 0)),
    )
}

/// One path from the circulant sampler, drawn from stream `(seed, 0)`.
pub fn sample_circulant(config: &FbmConfig) -> Result<SampledPath> {
    config.validate()?;
    Ok(
        CirculantSampler::new(config.hurst, config.horizon, config.steps)?
            .sample(&mut rng::stream(config.seed, 0)),
    )
}

/// One path using `config.method`.
pub fn sample(config: &FbmConfig) -> Result<SampledPath> {
    match config.method {
        FbmMethod::Cholesky => sample_cholesky(config),
        FbmMethod::Circulant => sample_circulant(config),
    }
}
