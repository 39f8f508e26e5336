//! Closed-form decay laws for the bright-state population `P_W(t)`.
//!
//! These serve two purposes: they are the reference solutions the numerical
//! evolution is checked against, and they are the fast path for large `N`
//! where dense evolution is out of reach.

mod special;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use special::{
    bessel_j, bessel_j0, bessel_j1, bessel_j1_ratio, laguerre_gen, laguerre_weighted,
    MAX_LAGUERRE_DEGREE,
};

/// Collective rate `κ = N γ`, held fixed in the `N → ∞` limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticParams {
    kappa: f64,
}

impl AsymptoticParams {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_finite() && kappa > 0.0 {
            Ok(Self { kappa })
        } else {
            Err(Error::InvalidParameter(format!("kappa must be finite and positive, got {kappa}")))
        }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTime(t))
    }
}

/// Exact bright-state population for `N` atoms on a chiral waveguide,
/// `P_W = e^{-γt} [L_{N-1}^(1)(γt)]² / N²`.
pub fn pw_chiral_exact(n_atoms: usize, gamma: f64, t: f64) -> Result<f64> {
    if n_atoms == 0 {
        return Err(Error::EmptyEnsemble);
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidGamma(gamma));
    }
    check_time(t)?;
    let amplitude = laguerre_weighted(n_atoms - 1, 1, gamma * t)? / n_atoms as f64;
    Ok(amplitude * amplitude)
}

/// `N → ∞` limit at fixed `κ`: `P_W = J_1(2√(κt))² / (κt)`.
///
/// Evaluated as `(2 J_1(z)/z)²` with `z = 2√(κt)`, whose series is regular at
/// `t = 0`.
pub fn pw_chiral_asymptotic(params: AsymptoticParams, t: f64) -> f64 {
    let z = 2.0 * (params.kappa * t).max(0.0).sqrt();
    let ratio = bessel_j1_ratio(z);
    ratio * ratio
}

/// Long-time algebraic law `P_W = cos²(2√(κt) - 3π/4) / (π (κt)^{3/2})`.
pub fn pw_longtime(params: AsymptoticParams, t: f64) -> Result<f64> {
    let u = params.kappa * t;
    if !(u.is_finite() && u >= 1.0) {
        return Err(Error::OutsideAsymptoticRange(u));
    }
    let c = (2.0 * u.sqrt() - 0.75 * PI).cos();
    Ok(c * c / (PI * u.powf(1.5)))
}

/// Single-photon superradiance of a sub-wavelength sample, `e^{-2κt}`.
pub fn pw_superradiant(params: AsymptoticParams, t: f64) -> f64 {
    (-2.0 * params.kappa * t).exp()
}

/// Bright- and dark-state populations `(ρ_WW, ρ_DD)` of two atoms on a chiral
/// waveguide, started in the bright state.
///
/// `ρ_WW = e^{-γt} (γt - 2)² / 4` and `ρ_DD = e^{-γt} (γt)² / 4`. The
/// bright-state population carries the square of `(γt - 2)`; without it the
/// expression is negative at `t = 0` and disagrees with both the evolution
/// under `H_eff` and the `N = 2` Laguerre solution.
pub fn two_atom_chiral_populations(gamma: f64, t: f64) -> Result<(f64, f64)> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidGamma(gamma));
    }
    check_time(t)?;
    let x = gamma * t;
    let w = (-x).exp() / 4.0;
    Ok((w * (x - 2.0) * (x - 2.0), w * x * x))
}

/// Where the finite-`N` chiral solution leaves the `N → ∞` algebraic regime.
///
/// Scans the local maxima of `pw_chiral_exact(n, κ/n, t)` in `κt` and returns
/// the first one that exceeds `factor` times the algebraic envelope
/// `1 / (π (κt)^{3/2})`, or `None` if that does not happen before
/// `κt = max_kappa_t`. At finite `N` the revivals eventually decay more slowly
/// than the envelope. Maxima with `κt < 10` are skipped, since the envelope
/// law itself only holds for `κt ≫ 1`.
pub fn algebraic_crossover(n_atoms: usize, factor: f64, max_kappa_t: f64) -> Result<Option<f64>> {
    if !(factor.is_finite() && factor > 1.0) {
        return Err(Error::InvalidParameter(format!("factor must exceed 1, got {factor}")));
    }
    let gamma = 1.0 / n_atoms.max(1) as f64;
    // Oscillations in κt have period ~ π √(κt); sample them finely.
    let mut u: f64 = 10.0;
    let mut prev2 = pw_chiral_exact(n_atoms, gamma, u)?;
    let mut step = 0.02 * u.sqrt();
    let mut prev1 = pw_chiral_exact(n_atoms, gamma, u + step)?;
    u += step;
    while u < max_kappa_t {
        step = 0.02 * u.sqrt();
        let next = pw_chiral_exact(n_atoms, gamma, u + step)?;
        if prev1 > prev2 && prev1 >= next {
            let envelope = 1.0 / (PI * u.powf(1.5));
            if prev1 > factor * envelope {
                return Ok(Some(u));
            }
        }
        prev2 = prev1;
        prev1 = next;
        u += step;
    }
    Ok(None)
}
