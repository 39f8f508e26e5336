//! Photon propagators and the coupling matrices they induce.
//!
//! After eliminating the waveguide photons, the atoms see a coherent exchange
//! `J` and a correlated decay `Γ`, both obtained from the propagator `G` via
//!
//! ```text
//! J_jl = -γ (G*(θ_l, θ_j) + G(θ_j, θ_l)) / 2
//! Γ_jl =  iγ (G*(θ_l, θ_j) - G(θ_j, θ_l))
//! ```
//!
//! This relation does not assume `G` to be symmetric, which matters for the
//! chiral waveguide.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Direction structure of the waveguide modes the atoms couple to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveguideKind {
    /// Coupling to forward-propagating photons only.
    Chiral,
    /// Equal coupling to forward- and backward-propagating photons.
    Bidirectional,
}

impl WaveguideKind {
    /// Single-atom decay rate in units of `γ`.
    pub fn single_atom_rate(self) -> f64 {
        match self {
            WaveguideKind::Chiral => 1.0,
            WaveguideKind::Bidirectional => 2.0,
        }
    }
}

impl std::fmt::Display for WaveguideKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WaveguideKind::Chiral => "chiral",
            WaveguideKind::Bidirectional => "bidirectional",
        })
    }
}

impl std::str::FromStr for WaveguideKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chiral" => Ok(WaveguideKind::Chiral),
            "bidirectional" => Ok(WaveguideKind::Bidirectional),
            other => Err(Error::InvalidParameter(format!(
                "unknown waveguide kind `{other}` (expected chiral or bidirectional)"
            ))),
        }
    }
}

/// `N` atoms on a waveguide, described by their optical phases `θ_j = k x_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomEnsemble {
    phases: Vec<f64>,
    gamma: f64,
    kind: WaveguideKind,
}

impl AtomEnsemble {
    pub fn new(phases: Vec<f64>, gamma: f64, kind: WaveguideKind) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidGamma(gamma));
        }
        if let Some((index, &value)) = phases.iter().enumerate().find(|(_, p)| !p.is_finite()) {
            return Err(Error::NonFinitePhase { index, value });
        }
        Ok(Self { phases, gamma, kind })
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn kind(&self) -> WaveguideKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Collective rate `κ = N γ`.
    pub fn kappa(&self) -> f64 {
        self.gamma * self.phases.len() as f64
    }
}

/// Heaviside step with the symmetric convention `θ(0) = 1/2`.
fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Photon propagator `G(θ_j, θ_l)` from atom `l` to atom `j`.
pub fn propagator(kind: WaveguideKind, theta_j: f64, theta_l: f64) -> C64 {
    let delta = theta_j - theta_l;
    match kind {
        WaveguideKind::Chiral => C64::i() * C64::cis(delta) * heaviside(delta),
        WaveguideKind::Bidirectional => C64::i() * C64::cis(delta.abs()),
    }
}

/// Coupling matrices of an ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrices {
    /// Coherent exchange `J` (Hermitian).
    pub exchange: DMatrix<C64>,
    /// Correlated decay `Γ` (Hermitian, positive semidefinite).
    pub decay: DMatrix<C64>,
    /// `H_eff = J - (i/2) Γ`.
    pub h_eff: DMatrix<C64>,
}

impl KernelMatrices {
    pub fn dim(&self) -> usize {
        self.h_eff.nrows()
    }
}

/// Builds `J`, `Γ` and `H_eff` from the waveguide propagator.
///
/// The diagonal of `J` (a Lamb shift absorbed in the transition frequency)
/// vanishes for both waveguide kinds.
pub fn build_kernels(ensemble: &AtomEnsemble) -> KernelMatrices {
    let n = ensemble.len();
    let gamma = ensemble.gamma();
    let kind = ensemble.kind();
    let theta = ensemble.phases();
    let half_i = C64::new(0.0, 0.5);

    let mut exchange = DMatrix::zeros(n, n);
    let mut decay = DMatrix::zeros(n, n);
    for j in 0..n {
        for l in 0..n {
            let forward = propagator(kind, theta[j], theta[l]);
            let backward = propagator(kind, theta[l], theta[j]).conj();
            exchange[(j, l)] = -(backward + forward) * (gamma / 2.0);
            decay[(j, l)] = C64::i() * (backward - forward) * gamma;
        }
    }
    let h_eff = &exchange - &decay * half_i;
    KernelMatrices { exchange, decay, h_eff }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn propagator_coincident_atoms() {
        assert!(close(propagator(WaveguideKind::Chiral, 0.3, 0.3), C64::new(0.0, 0.5), 1e-15));
        assert!(close(propagator(WaveguideKind::Bidirectional, 1.1, 1.1), C64::i(), 1e-15));
    }

    #[test]
    fn chiral_propagator_half_wavelength() {
        let g = propagator(WaveguideKind::Chiral, std::f64::consts::PI, 0.0);
        let independent = C64::i() * C64::new(std::f64::consts::PI.cos(), std::f64::consts::PI.sin());
        assert!(close(g, C64::new(0.0, -1.0), 1e-15));
        assert!(close(g, independent, 1e-15));
        // no backward propagation
        assert_eq!(propagator(WaveguideKind::Chiral, 0.0, 1.0), C64::new(0.0, 0.0));
    }

    #[test]
    fn bidirectional_propagator_is_symmetric() {
        let a = propagator(WaveguideKind::Bidirectional, 0.2, 2.9);
        let b = propagator(WaveguideKind::Bidirectional, 2.9, 0.2);
        assert!(close(a, b, 1e-15));
    }

    #[test]
    fn ensemble_validation() {
        assert_eq!(
            AtomEnsemble::new(vec![], 1.0, WaveguideKind::Chiral),
            Err(Error::EmptyEnsemble)
        );
        assert_eq!(
            AtomEnsemble::new(vec![0.0], 0.0, WaveguideKind::Chiral),
            Err(Error::InvalidGamma(0.0))
        );
        assert!(matches!(
            AtomEnsemble::new(vec![0.0], -1.0, WaveguideKind::Bidirectional),
            Err(Error::InvalidGamma(_))
        ));
        assert!(matches!(
            AtomEnsemble::new(vec![0.0, f64::NAN], 1.0, WaveguideKind::Chiral),
            Err(Error::NonFinitePhase { index: 1, .. })
        ));
    }

    #[test]
    fn closed_form_chiral_kernels() {
        let gamma = 0.7;
        let theta = [0.4, -1.3, 2.2, 2.2];
        let ens = AtomEnsemble::new(theta.to_vec(), gamma, WaveguideKind::Chiral).unwrap();
        let k = build_kernels(&ens);
        for j in 0..4 {
            assert!(close(k.decay[(j, j)], C64::new(gamma, 0.0), 1e-15));
            for l in 0..4 {
                let d = theta[j] - theta[l];
                let sign = if d > 0.0 { 1.0 } else if d < 0.0 { -1.0 } else { 0.0 };
                let j_ref = C64::new(0.0, -gamma / 2.0) * sign * C64::cis(d);
                let g_ref = C64::cis(d) * gamma;
                assert!(close(k.exchange[(j, l)], j_ref, 1e-14), "J[{j},{l}]");
                assert!(close(k.decay[(j, l)], g_ref, 1e-14), "Γ[{j},{l}]");
            }
        }
    }

    #[test]
    fn closed_form_bidirectional_kernels() {
        let gamma = 1.3;
        let theta = [0.0, 0.9, -4.0];
        let ens = AtomEnsemble::new(theta.to_vec(), gamma, WaveguideKind::Bidirectional).unwrap();
        let k = build_kernels(&ens);
        for j in 0..3 {
            assert!(close(k.decay[(j, j)], C64::new(2.0 * gamma, 0.0), 1e-15));
            for l in 0..3 {
                let d = (theta[j] - theta[l]).abs();
                assert!(close(k.exchange[(j, l)], C64::new(gamma * d.sin(), 0.0), 1e-14));
                assert!(close(k.decay[(j, l)], C64::new(2.0 * gamma * d.cos(), 0.0), 1e-14));
            }
        }
    }

    #[test]
    fn bidirectional_close_pair_decays_jointly() {
        let ens = AtomEnsemble::new(vec![0.0, 1e-9], 1.0, WaveguideKind::Bidirectional).unwrap();
        let k = build_kernels(&ens);
        assert!(k.exchange[(0, 1)].norm() < 1e-8);
        assert!(close(k.decay[(0, 1)], C64::new(2.0, 0.0), 1e-12));
    }

    #[test]
    fn chiral_effective_hamiltonian_direct_form() {
        let gamma = 1.0;
        let theta = [0.3, 5.1, -2.4];
        let ens = AtomEnsemble::new(theta.to_vec(), gamma, WaveguideKind::Chiral).unwrap();
        let k = build_kernels(&ens);
        for j in 0..3 {
            for l in 0..3 {
                let d: f64 = theta[j] - theta[l];
                let sign = if d > 0.0 { 1.0 } else if d < 0.0 { -1.0 } else { 0.0 };
                let direct = C64::new(0.0, -gamma / 2.0) * (sign + 1.0) * C64::cis(d);
                assert!(close(k.h_eff[(j, l)], direct, 1e-14));
            }
        }
    }
}
