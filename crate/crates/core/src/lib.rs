//! Decay of a single collective excitation shared by `N` two-level atoms that
//! are coupled to a one-dimensional waveguide.
//!
//! The photon field is integrated out, leaving a coherent exchange matrix `J`
//! and a correlated decay matrix `Γ` whose combination
//! `H_eff = J - (i/2) Γ` generates the single-excitation dynamics. The crate
//! provides
//!
//! * [`kernels`]: the propagators and coupling matrices for chiral and
//!   bidirectional waveguides,
//! * [`dynamics`]: exact evolution under `H_eff` and bright/dark-state
//!   populations,
//! * [`analytic`]: closed-form decay laws (Laguerre, Bessel, algebraic tail)
//!   and the special functions behind them,
//! * [`montecarlo`]: disorder averages over random atomic positions,
//! * [`continuum`]: the `N → ∞` integro-differential field equation.
//!
//! Positions are dimensionless optical phases `θ = k x`, rates are in units of
//! the per-mode coupling `γ`, and `ħ = 1`.

pub mod analytic;
pub mod continuum;
pub mod dynamics;
mod error;
pub mod kernels;
pub mod linalg;
pub mod montecarlo;
mod stats;

pub use error::{Error, Result};
pub use kernels::{AtomEnsemble, KernelMatrices, WaveguideKind};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Uniform grid of `n` points on `[start, stop]`, both ends included.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}
