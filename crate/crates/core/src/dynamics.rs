//! Single-excitation dynamics under the effective non-Hermitian Hamiltonian.
//!
//! With one excitation and no drive, the atomic state is the amplitude vector
//! `c_j` of `σ_j⁺|G⟩`, and it evolves as `c(t) = e^{-i H_eff t} c(0)`. The norm
//! `‖c(t)‖²` is the probability that the excitation has not yet been emitted.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::kernels::{build_kernels, AtomEnsemble, KernelMatrices};
use crate::linalg::{expm, EigenDecomposition};
use crate::{Error, Result, C64};

/// Amplitudes of a state in the single-excitation sector.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationState {
    amplitudes: DVector<C64>,
}

impl ExcitationState {
    pub fn new(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes: DVector::from_vec(amplitudes) }
    }

    pub fn from_vector(amplitudes: DVector<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Surviving excitation probability `‖c‖²`.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &ExcitationState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Population `|⟨self|other⟩|²` of `self` in `other`.
    pub fn population_in(&self, other: &ExcitationState) -> f64 {
        self.overlap(other).norm_sqr()
    }
}

/// The state a resonant plane wave `e^{iθ}` couples to, `c_j = e^{iθ_j}/√N`.
pub fn bright_state(ensemble: &AtomEnsemble) -> ExcitationState {
    let norm = (ensemble.len() as f64).sqrt().recip();
    ExcitationState::new(ensemble.phases().iter().map(|&p| C64::cis(p) * norm).collect())
}

/// The two-atom state orthogonal to the bright state,
/// `(σ₁⁺ - e^{i(θ₂-θ₁)} σ₂⁺)|G⟩/√2`.
pub fn dark_state_two_atoms(ensemble: &AtomEnsemble) -> Result<ExcitationState> {
    if ensemble.len() != 2 {
        return Err(Error::NotTwoAtoms(ensemble.len()));
    }
    let p = ensemble.phases();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(ExcitationState::new(vec![C64::new(s, 0.0), -C64::cis(p[1] - p[0]) * s]))
}

/// Accuracy controls for [`Evolver`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolveOptions {
    /// Target absolute error per amplitude.
    pub tolerance: f64,
    /// Eigenvector condition numbers above this always use the matrix
    /// exponential.
    pub max_condition: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { tolerance: 1e-10, max_condition: 1e8 }
    }
}

/// How an [`Evolver`] applies `e^{-i H_eff t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Through the eigendecomposition of `H_eff`.
    Spectral,
    /// Through Padé scaling-and-squaring matrix exponentials.
    Exponential,
}

#[derive(Debug, Clone)]
enum Strategy {
    Spectral(EigenDecomposition),
    Exponential,
}

/// Time evolution under a fixed `H_eff`.
///
/// The chiral `H_eff` is triangular with a repeated diagonal in the ordered
/// basis, hence defective; such matrices, and any whose eigenvectors are too
/// ill-conditioned for the requested tolerance, fall back to matrix
/// exponentials. An `Evolver` is immutable and can be shared across threads.
#[derive(Debug, Clone)]
pub struct Evolver {
    h_eff: DMatrix<C64>,
    strategy: Strategy,
}

impl Evolver {
    pub fn new(kernels: &KernelMatrices) -> Self {
        Self::with_options(kernels, EvolveOptions::default())
    }

    pub fn with_options(kernels: &KernelMatrices, options: EvolveOptions) -> Self {
        let h_eff = kernels.h_eff.clone();
        // Rounding in V diag(e^{-iλt}) V⁻¹ c grows with cond(V).
        let limit = options
            .max_condition
            .min(options.tolerance / (f64::EPSILON * 16.0));
        let strategy = match EigenDecomposition::new(&h_eff) {
            Some(eig) if eig.condition <= limit => Strategy::Spectral(eig),
            _ => Strategy::Exponential,
        };
        Self { h_eff, strategy }
    }

    pub fn method(&self) -> Method {
        match self.strategy {
            Strategy::Spectral(_) => Method::Spectral,
            Strategy::Exponential => Method::Exponential,
        }
    }

    pub fn dim(&self) -> usize {
        self.h_eff.nrows()
    }

    fn check_state(&self, state: &ExcitationState) -> Result<()> {
        if state.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: state.len() });
        }
        Ok(())
    }

    fn propagator(&self, t: f64) -> Result<DMatrix<C64>> {
        expm(&self.h_eff.map(|z| z * C64::new(0.0, -t)))
            .ok_or_else(|| Error::Numerical(format!("matrix exponential failed at t = {t}")))
    }

    /// `e^{-i H_eff t} c`.
    pub fn evolve(&self, state: &ExcitationState, t: f64) -> Result<ExcitationState> {
        self.check_state(state)?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidTime(t));
        }
        if t == 0.0 {
            return Ok(state.clone());
        }
        match &self.strategy {
            Strategy::Spectral(eig) => {
                let coeffs = spectral_coefficients(eig, state)?;
                Ok(spectral_apply(eig, &coeffs, t))
            }
            Strategy::Exponential => {
                Ok(ExcitationState::from_vector(self.propagator(t)? * state.amplitudes()))
            }
        }
    }

    /// States at every time of a strictly increasing, non-negative grid.
    pub fn trajectory(&self, state: &ExcitationState, times: &[f64]) -> Result<Vec<ExcitationState>> {
        self.check_state(state)?;
        validate_times(times)?;
        match &self.strategy {
            Strategy::Spectral(eig) => {
                let coeffs = spectral_coefficients(eig, state)?;
                Ok(times
                    .iter()
                    .map(|&t| if t == 0.0 { state.clone() } else { spectral_apply(eig, &coeffs, t) })
                    .collect())
            }
            Strategy::Exponential => {
                // Step between consecutive times, reusing the propagator while
                // the increment stays the same (uniform grids need one).
                let mut out = Vec::with_capacity(times.len());
                let mut current = state.amplitudes().clone();
                let mut last_t = 0.0;
                let mut cached: Option<(f64, DMatrix<C64>)> = None;
                for &t in times {
                    let dt = t - last_t;
                    if dt > 0.0 {
                        let reuse = matches!(&cached, Some((step, _)) if (dt - step).abs() <= 1e-12 * step);
                        if !reuse {
                            cached = Some((dt, self.propagator(dt)?));
                        }
                        let (_, prop) = cached.as_ref().expect("propagator cached above");
                        current = prop * current;
                    }
                    last_t = t;
                    out.push(ExcitationState::from_vector(current.clone()));
                }
                Ok(out)
            }
        }
    }
}

fn spectral_coefficients(eig: &EigenDecomposition, state: &ExcitationState) -> Result<DVector<C64>> {
    eig.coefficients(state.amplitudes())
        .ok_or_else(|| Error::Numerical("eigenvector matrix is singular".into()))
}

fn spectral_apply(eig: &EigenDecomposition, coeffs: &DVector<C64>, t: f64) -> ExcitationState {
    let phased = coeffs.zip_map(&eig.eigenvalues, |c, lambda| c * (lambda * C64::new(0.0, -t)).exp());
    ExcitationState::from_vector(&eig.vectors * phased)
}

/// Single-shot `e^{-i H_eff t} c` with default accuracy.
pub fn evolve(kernels: &KernelMatrices, state: &ExcitationState, t: f64) -> Result<ExcitationState> {
    Evolver::new(kernels).evolve(state, t)
}

pub(crate) fn validate_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidTimeGrid("time grid is empty".into()));
    }
    if let Some(&t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::InvalidTime(t));
    }
    if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidTimeGrid(format!(
            "times must be strictly increasing ({} followed by {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Populations sampled on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayCurve {
    /// Sample times, in units of `1/γ` when `γ = 1`.
    pub times: Vec<f64>,
    /// Bright-state population.
    pub p_w: Vec<f64>,
    /// Total excitation probability `‖c‖²`.
    pub p_exc: Vec<f64>,
    /// Dark-state population, only for two atoms.
    pub p_d: Option<Vec<f64>>,
}

impl DecayCurve {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Evolves the bright state of `ensemble` and records its populations.
pub fn simulate_decay(ensemble: &AtomEnsemble, times: &[f64]) -> Result<DecayCurve> {
    simulate_decay_with(ensemble, times, EvolveOptions::default())
}

pub fn simulate_decay_with(
    ensemble: &AtomEnsemble,
    times: &[f64],
    options: EvolveOptions,
) -> Result<DecayCurve> {
    validate_times(times)?;
    let kernels = build_kernels(ensemble);
    let evolver = Evolver::with_options(&kernels, options);
    let bright = bright_state(ensemble);
    let dark = if ensemble.len() == 2 { Some(dark_state_two_atoms(ensemble)?) } else { None };

    let states = evolver.trajectory(&bright, times)?;
    let p_w = states.iter().map(|s| bright.population_in(s)).collect();
    let p_exc = states.iter().map(ExcitationState::norm_sqr).collect();
    let p_d = dark.map(|d| states.iter().map(|s| d.population_in(s)).collect());
    Ok(DecayCurve { times: times.to_vec(), p_w, p_exc, p_d })
}

/// Closed-form `(ρ_WW, ρ_DD)` for two atoms on a bidirectional waveguide at
/// phase separation `d = |θ₁ - θ₂|`, started in the bright state.
///
/// With `Γ = 2γ` and `z = (Γt/2) e^{id}`,
/// `ρ_WW = e^{-Γt} |cosh z - cos d sinh z|²` and
/// `ρ_DD = e^{-Γt} sin² d |sinh z|²`. The weight `e^{-Γt/2}` is folded into
/// the exponentials before squaring so that large `Γt` cannot overflow.
pub fn two_atom_bidirectional_analytic(d: f64, gamma: f64, t: f64) -> Result<(f64, f64)> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(Error::InvalidParameter(format!("separation must be finite and non-negative, got {d}")));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidGamma(gamma));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidTime(t));
    }
    let half = gamma * t; // Γt/2
    let z = C64::cis(d) * half;
    let up = (z - half).exp();
    let down = (-z - half).exp();
    let cosh_w = (up + down) * 0.5;
    let sinh_w = (up - down) * 0.5;
    let rho_ww = (cosh_w - sinh_w * d.cos()).norm_sqr();
    let rho_dd = d.sin().powi(2) * sinh_w.norm_sqr();
    Ok((rho_ww, rho_dd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::laguerre_gen;
    use crate::WaveguideKind;

    fn chiral(phases: Vec<f64>) -> AtomEnsemble {
        AtomEnsemble::new(phases, 1.0, WaveguideKind::Chiral).unwrap()
    }

    #[test]
    fn bright_state_normalization() {
        let one = bright_state(&chiral(vec![0.7]));
        assert!((one.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
        let two = bright_state(&chiral(vec![0.0, 0.0]));
        for a in two.amplitudes().iter() {
            assert!((a - C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
        let four = bright_state(&chiral(vec![0.3, -2.0, 7.1, 1e3]));
        assert!((four.norm_sqr() - 1.0).abs() < 1e-15);
        assert!(four.amplitudes().iter().all(|a| (a.norm() - 0.5).abs() < 1e-15));
    }

    #[test]
    fn dark_state_orthogonality() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let d = dark_state_two_atoms(&chiral(vec![0.0, 0.0])).unwrap();
        assert!((d.amplitudes()[0] - C64::new(s, 0.0)).norm() < 1e-15);
        assert!((d.amplitudes()[1] - C64::new(-s, 0.0)).norm() < 1e-15);

        let ens = chiral(vec![0.0, std::f64::consts::PI]);
        let d = dark_state_two_atoms(&ens).unwrap();
        // -e^{iπ} = 1
        assert!((d.amplitudes()[1] - C64::new(s, 0.0)).norm() < 1e-15);
        assert!(d.overlap(&bright_state(&ens)).norm() < 1e-15);

        for (a, b) in [(0.3, 2.1), (-5.0, 4.4), (100.0, 0.0)] {
            let ens = chiral(vec![a, b]);
            let d = dark_state_two_atoms(&ens).unwrap();
            assert!(d.overlap(&bright_state(&ens)).norm() < 1e-15);
        }
        assert_eq!(dark_state_two_atoms(&chiral(vec![0.0; 3])), Err(Error::NotTwoAtoms(3)));
    }

    #[test]
    fn evolve_rejects_bad_input() {
        let k = build_kernels(&chiral(vec![0.0, 1.0]));
        let s = ExcitationState::new(vec![C64::new(1.0, 0.0)]);
        assert!(matches!(evolve(&k, &s, 1.0), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
        let s = bright_state(&chiral(vec![0.0, 1.0]));
        assert!(matches!(evolve(&k, &s, f64::NAN), Err(Error::InvalidTime(_))));
        assert!(matches!(evolve(&k, &s, -1.0), Err(Error::InvalidTime(_))));
    }

    #[test]
    fn evolve_at_zero_is_identity() {
        let ens = AtomEnsemble::new(vec![0.1, 0.9, 3.3], 1.0, WaveguideKind::Bidirectional).unwrap();
        let k = build_kernels(&ens);
        let s = ExcitationState::new(vec![C64::new(0.2, 0.1), C64::new(0.0, -0.5), C64::new(0.3, 0.3)]);
        assert_eq!(evolve(&k, &s, 0.0).unwrap(), s);
    }

    #[test]
    fn single_atom_amplitude() {
        let ens = chiral(vec![0.4]);
        let k = build_kernels(&ens);
        let s = bright_state(&ens);
        for t in [0.5, 1.0, 4.0] {
            let out = evolve(&k, &s, t).unwrap();
            assert!((out.amplitudes()[0] - s.amplitudes()[0] * (-t / 2.0).exp()).norm() < 1e-14);
            assert!((out.norm_sqr() - (-t).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn chiral_three_atoms_matches_laguerre() {
        let ens = chiral(vec![0.2, 1.7, -0.4]);
        let k = build_kernels(&ens);
        let evolver = Evolver::new(&k);
        assert_eq!(evolver.method(), Method::Exponential);
        let w = bright_state(&ens);
        let out = evolver.evolve(&w, 0.7).unwrap();
        // independent: explicit L_2^(1)(x) = 3 - 3x + x²/2
        let l2 = 3.0 - 3.0 * 0.7 + 0.5 * 0.49;
        let expected = (-0.7f64).exp() * l2 * l2 / 9.0;
        assert!((w.population_in(&out) - expected).abs() < 1e-12);
        assert!((laguerre_gen(2, 1, 0.7).unwrap() - l2).abs() < 1e-14);
    }

    #[test]
    fn chiral_pair_populations() {
        let ens = chiral(vec![0.0, 2.5]);
        let times: Vec<f64> = (0..=80).map(|i| i as f64 * 0.1).collect();
        let curve = simulate_decay(&ens, &times).unwrap();
        let p_d = curve.p_d.as_ref().unwrap();
        for (i, &t) in times.iter().enumerate() {
            let e = (-t).exp() / 4.0;
            assert!((curve.p_w[i] - e * (t - 2.0) * (t - 2.0)).abs() < 1e-10);
            assert!((p_d[i] - e * t * t).abs() < 1e-10);
            assert!(curve.p_w[i] + p_d[i] <= curve.p_exc[i] + 1e-9);
        }
        assert!(curve.p_w[20] < 1e-10);
    }

    #[test]
    fn trajectory_matches_single_shots() {
        for kind in [WaveguideKind::Chiral, WaveguideKind::Bidirectional] {
            let ens = AtomEnsemble::new(vec![0.0, 0.8, 2.9, 4.1], 1.0, kind).unwrap();
            let k = build_kernels(&ens);
            let ev = Evolver::new(&k);
            let s = bright_state(&ens);
            let times = [0.0, 0.3, 0.6, 0.9, 2.0, 2.5];
            let traj = ev.trajectory(&s, &times).unwrap();
            for (state, &t) in traj.iter().zip(&times) {
                let single = ev.evolve(&s, t).unwrap();
                assert!((state.amplitudes() - single.amplitudes()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn time_grid_validation() {
        let ens = chiral(vec![0.0, 1.0]);
        assert!(simulate_decay(&ens, &[]).is_err());
        assert!(simulate_decay(&ens, &[0.0, 1.0, 1.0]).is_err());
        assert!(simulate_decay(&ens, &[-1.0, 1.0]).is_err());
        assert!(simulate_decay(&ens, &[0.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn bidirectional_pair_limits() {
        // t = 0
        let (ww, dd) = two_atom_bidirectional_analytic(1.2, 1.0, 0.0).unwrap();
        assert!((ww - 1.0).abs() < 1e-15 && dd.abs() < 1e-15);
        // coincident atoms: e^{-2Γt}, Γ = 2γ
        for t in [0.1, 0.5, 2.0] {
            let (ww, dd) = two_atom_bidirectional_analytic(0.0, 1.0, t).unwrap();
            assert!((ww - (-4.0 * t).exp()).abs() < 1e-14);
            assert!(dd.abs() < 1e-30);
        }
        // no overflow far out
        let (ww, dd) = two_atom_bidirectional_analytic(1.0, 1.0, 5000.0).unwrap();
        assert!(ww.is_finite() && dd.is_finite());
        assert!(two_atom_bidirectional_analytic(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn bidirectional_pair_matches_evolution() {
        let d = 1.3;
        let gamma = 1.0;
        let t = 0.8 / (2.0 * gamma); // Γt = 0.8
        let ens = AtomEnsemble::new(vec![0.4, 0.4 + d], gamma, WaveguideKind::Bidirectional).unwrap();
        let curve = simulate_decay(&ens, &[t]).unwrap();
        let (ww, dd) = two_atom_bidirectional_analytic(d, gamma, t).unwrap();
        assert!((curve.p_w[0] - ww).abs() < 1e-12);
        assert!((curve.p_d.unwrap()[0] - dd).abs() < 1e-12);
    }
}
