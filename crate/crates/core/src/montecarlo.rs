//! Disorder averages over random atomic configurations.
//!
//! Every realization draws its positions from its own ChaCha stream, selected
//! by `(seed, realization index)`. Realizations therefore do not depend on
//! the order in which they are computed, and the average is reduced with an
//! order-fixed pairwise sum, so serial and parallel runs agree bit for bit.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::dynamics::{simulate_decay, validate_times, DecayCurve};
use crate::stats;
use crate::{AtomEnsemble, Error, Result, WaveguideKind};

/// Distribution of atomic phases `k x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PositionDistribution {
    /// Normal distribution with standard deviation `kσ`.
    Gaussian { mean: f64, sigma_phase: f64 },
    /// Uniform on `[lo, hi)`.
    Uniform { lo: f64, hi: f64 },
    /// Always the same phases.
    Fixed { phases: Vec<f64> },
}

impl PositionDistribution {
    pub fn validate(&self) -> Result<()> {
        match self {
            PositionDistribution::Gaussian { mean, sigma_phase } => {
                if !mean.is_finite() {
                    return Err(Error::InvalidDistribution(format!("gaussian mean {mean} is not finite")));
                }
                if !(sigma_phase.is_finite() && *sigma_phase > 0.0) {
                    return Err(Error::InvalidDistribution(format!(
                        "gaussian sigma_phase must be positive, got {sigma_phase}"
                    )));
                }
            }
            PositionDistribution::Uniform { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                    return Err(Error::InvalidDistribution(format!(
                        "uniform bounds need lo < hi, got [{lo}, {hi}]"
                    )));
                }
            }
            PositionDistribution::Fixed { phases } => {
                if let Some(p) = phases.iter().find(|p| !p.is_finite()) {
                    return Err(Error::InvalidDistribution(format!("fixed phase {p} is not finite")));
                }
            }
        }
        Ok(())
    }
}

/// Random stream for one realization.
pub fn realization_rng(seed: u64, realization: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(realization);
    rng
}

/// Draws `n` i.i.d. phases. `Fixed` returns its phases unchanged and requires
/// exactly `n` of them.
pub fn sample_positions<R: Rng + ?Sized>(
    dist: &PositionDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::EmptyEnsemble);
    }
    dist.validate()?;
    match dist {
        PositionDistribution::Gaussian { mean, sigma_phase } => {
            let normal = Normal::new(*mean, *sigma_phase)
                .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            Ok((0..n).map(|_| normal.sample(rng)).collect())
        }
        PositionDistribution::Uniform { lo, hi } => {
            let uniform =
                Uniform::new(*lo, *hi).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            Ok((0..n).map(|_| uniform.sample(rng)).collect())
        }
        PositionDistribution::Fixed { phases } => {
            if phases.len() != n {
                return Err(Error::FixedLengthMismatch { expected: n, found: phases.len() });
            }
            Ok(phases.clone())
        }
    }
}

/// Parameters of a disorder average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageSpec {
    pub kind: WaveguideKind,
    pub gamma: f64,
    pub distribution: PositionDistribution,
    pub n_atoms: usize,
    pub realizations: usize,
    pub seed: u64,
    /// Keep every single-realization curve in the result.
    #[serde(default)]
    pub keep_realizations: bool,
}

impl AverageSpec {
    /// Figure defaults: 1000 realizations for two atoms, 100 otherwise.
    pub fn default_realizations(n_atoms: usize) -> usize {
        if n_atoms == 2 {
            1000
        } else {
            100
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(Error::EmptyEnsemble);
        }
        if self.realizations == 0 {
            return Err(Error::InvalidParameter("at least one realization is required".into()));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::InvalidGamma(self.gamma));
        }
        self.distribution.validate()?;
        if let PositionDistribution::Fixed { phases } = &self.distribution {
            if phases.len() != self.n_atoms {
                return Err(Error::FixedLengthMismatch { expected: self.n_atoms, found: phases.len() });
            }
        }
        Ok(())
    }

    /// The ensemble of realization `index`.
    pub fn ensemble(&self, index: u64) -> Result<AtomEnsemble> {
        let mut rng = realization_rng(self.seed, index);
        let phases = sample_positions(&self.distribution, self.n_atoms, &mut rng)?;
        AtomEnsemble::new(phases, self.gamma, self.kind)
    }
}

/// Mean decay curve over realizations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageResult {
    pub mean_curve: DecayCurve,
    /// Standard error of the mean bright-state population.
    pub p_w_stderr: Vec<f64>,
    pub m_realizations: usize,
    pub seed: u64,
    pub per_realization: Option<Vec<DecayCurve>>,
}

fn run_realization(spec: &AverageSpec, times: &[f64], index: usize) -> Result<DecayCurve> {
    simulate_decay(&spec.ensemble(index as u64)?, times)
}

#[cfg(feature = "parallel")]
fn run_all(spec: &AverageSpec, times: &[f64]) -> Result<Vec<DecayCurve>> {
    use rayon::prelude::*;
    (0..spec.realizations)
        .into_par_iter()
        .map(|i| run_realization(spec, times, i))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(spec: &AverageSpec, times: &[f64]) -> Result<Vec<DecayCurve>> {
    (0..spec.realizations).map(|i| run_realization(spec, times, i)).collect()
}

/// Runs `spec.realizations` independent decays and averages them.
pub fn average_decay(spec: &AverageSpec, times: &[f64]) -> Result<AverageResult> {
    spec.validate()?;
    validate_times(times)?;
    let curves = run_all(spec, times)?;
    Ok(reduce(spec, times, curves))
}

fn reduce(spec: &AverageSpec, times: &[f64], curves: Vec<DecayCurve>) -> AverageResult {
    let column = |pick: &dyn Fn(&DecayCurve) -> f64| -> Vec<f64> { curves.iter().map(pick).collect() };
    let mut p_w = Vec::with_capacity(times.len());
    let mut p_exc = Vec::with_capacity(times.len());
    let mut p_w_stderr = Vec::with_capacity(times.len());
    let has_dark = curves.iter().all(|c| c.p_d.is_some());
    let mut p_d = has_dark.then(|| Vec::with_capacity(times.len()));

    for i in 0..times.len() {
        let w = column(&|c| c.p_w[i]);
        let mean_w = stats::mean(&w);
        p_w_stderr.push(stats::standard_error(&w, mean_w));
        p_w.push(mean_w);
        p_exc.push(stats::mean(&column(&|c| c.p_exc[i])));
        if let Some(d) = p_d.as_mut() {
            d.push(stats::mean(&column(&|c| c.p_d.as_ref().map_or(0.0, |v| v[i]))));
        }
    }

    AverageResult {
        mean_curve: DecayCurve { times: times.to_vec(), p_w, p_exc, p_d },
        p_w_stderr,
        m_realizations: spec.realizations,
        seed: spec.seed,
        per_realization: spec.keep_realizations.then_some(curves),
    }
}
