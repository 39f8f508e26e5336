//! Invariant checks shared by the property tests and the acceptance runner.
//! Each returns `Err` with a short description of the first violation.

#![allow(dead_code)]

use nalgebra::DMatrix;
use proptest::prelude::*;
use wgqed::dynamics::simulate_decay;
use wgqed::kernels::build_kernels;
use wgqed::montecarlo::{average_decay, AverageSpec, PositionDistribution};
use wgqed::{AtomEnsemble, WaveguideKind, C64};

pub type Check = Result<(), String>;

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    m.clone().symmetric_eigen().eigenvalues.iter().copied().collect()
}

pub fn kinds() -> impl Strategy<Value = WaveguideKind> {
    prop_oneof![Just(WaveguideKind::Chiral), Just(WaveguideKind::Bidirectional)]
}

pub fn phases(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0f64..50.0, 1..=max_len)
}

/// `J` and `Γ` are Hermitian and `Γ` is positive semidefinite.
pub fn kernels_hermitian_psd(phases: &[f64], gamma: f64, kind: WaveguideKind) -> Check {
    let ens = AtomEnsemble::new(phases.to_vec(), gamma, kind).map_err(|e| e.to_string())?;
    let k = build_kernels(&ens);
    let scale = gamma * phases.len() as f64;
    for (name, m) in [("J", &k.exchange), ("Γ", &k.decay)] {
        let skew = max_abs(&(m - m.adjoint()));
        if skew > 1e-13 * scale {
            return Err(format!("{name} is not Hermitian ({skew:e})"));
        }
    }
    let min = hermitian_eigenvalues(&k.decay).into_iter().fold(f64::INFINITY, f64::min);
    if min < -1e-12 * scale {
        return Err(format!("Γ has eigenvalue {min:e}"));
    }
    let h = &k.exchange - k.decay.map(|z| z * C64::new(0.0, 0.5));
    let diff = max_abs(&(h - &k.h_eff));
    if diff > 1e-13 * scale {
        return Err(format!("H_eff differs from J - iΓ/2 by {diff:e}"));
    }
    Ok(())
}

/// Chiral `Γ` has rank one, bidirectional `Γ` rank at most two.
pub fn decay_rank(phases: &[f64], gamma: f64, kind: WaveguideKind) -> Check {
    let ens = AtomEnsemble::new(phases.to_vec(), gamma, kind).map_err(|e| e.to_string())?;
    let k = build_kernels(&ens);
    let scale = gamma * phases.len() as f64;
    let rank = hermitian_eigenvalues(&k.decay).into_iter().filter(|&v| v > 1e-9 * scale).count();
    let limit = match kind {
        WaveguideKind::Chiral => 1,
        WaveguideKind::Bidirectional => 2,
    };
    if rank > limit {
        return Err(format!("{kind} Γ has numerical rank {rank}"));
    }
    Ok(())
}

fn grid() -> Vec<f64> {
    wgqed::linspace(0.0, 6.0, 25)
}

/// A common phase shift leaves every population unchanged.
pub fn gauge_invariance(phases: &[f64], shift: f64, kind: WaveguideKind) -> Check {
    let times = grid();
    let a = simulate_decay(&AtomEnsemble::new(phases.to_vec(), 1.0, kind).unwrap(), &times)
        .map_err(|e| e.to_string())?;
    let shifted: Vec<f64> = phases.iter().map(|p| p + shift).collect();
    let b = simulate_decay(&AtomEnsemble::new(shifted, 1.0, kind).unwrap(), &times)
        .map_err(|e| e.to_string())?;
    for i in 0..times.len() {
        if (a.p_w[i] - b.p_w[i]).abs() > 1e-9 || (a.p_exc[i] - b.p_exc[i]).abs() > 1e-9 {
            return Err(format!("shift {shift} changes populations at t = {}", times[i]));
        }
    }
    Ok(())
}

/// Chiral `P_W` for distinct positions depends on the number of atoms only,
/// and equals the closed-form Laguerre law. Coincident atoms are excluded:
/// with `θ(0) = 1/2` they couple symmetrically.
pub fn chiral_position_independence(phases: &[f64]) -> Check {
    let times = grid();
    let n = phases.len();
    let c = simulate_decay(&AtomEnsemble::new(phases.to_vec(), 1.0, WaveguideKind::Chiral).unwrap(), &times)
        .map_err(|e| e.to_string())?;
    for (i, &t) in times.iter().enumerate() {
        let exact = wgqed::analytic::pw_chiral_exact(n, 1.0, t).map_err(|e| e.to_string())?;
        if (c.p_w[i] - exact).abs() > 1e-9 {
            return Err(format!("chiral P_W depends on positions at t = {t}"));
        }
    }
    Ok(())
}

/// `‖c(t)‖²` never increases and bounds `P_W`.
pub fn norm_monotone(phases: &[f64], kind: WaveguideKind) -> Check {
    let times = wgqed::linspace(0.0, 10.0, 101);
    let c = simulate_decay(&AtomEnsemble::new(phases.to_vec(), 1.0, kind).unwrap(), &times)
        .map_err(|e| e.to_string())?;
    if (c.p_exc[0] - 1.0).abs() > 1e-12 {
        return Err(format!("initial norm {}", c.p_exc[0]));
    }
    for i in 1..times.len() {
        if c.p_exc[i] > c.p_exc[i - 1] + 1e-12 {
            return Err(format!("norm grows at t = {}", times[i]));
        }
        if c.p_w[i] > c.p_exc[i] + 1e-12 {
            return Err(format!("P_W exceeds the norm at t = {}", times[i]));
        }
    }
    Ok(())
}

/// Equal seeds give bit-identical averages; different seeds do not.
pub fn montecarlo_determinism(seed: u64, n_atoms: usize, sigma_phase: f64) -> Check {
    let times = wgqed::linspace(0.0, 4.0, 17);
    let spec = |seed| AverageSpec {
        kind: WaveguideKind::Bidirectional,
        gamma: 1.0,
        distribution: PositionDistribution::Gaussian { mean: 0.0, sigma_phase },
        n_atoms,
        realizations: 8,
        seed,
        keep_realizations: true,
    };
    let a = average_decay(&spec(seed), &times).map_err(|e| e.to_string())?;
    let b = average_decay(&spec(seed), &times).map_err(|e| e.to_string())?;
    if a != b {
        return Err(format!("seed {seed} gives different averages"));
    }
    if n_atoms > 1 {
        let c = average_decay(&spec(seed.wrapping_add(1)), &times).map_err(|e| e.to_string())?;
        if c.per_realization == a.per_realization {
            return Err(format!("seeds {seed} and {} coincide", seed.wrapping_add(1)));
        }
    }
    Ok(())
}
