//! Continuum limit `N → ∞` of the single-excitation dynamics.
//!
//! The amplitude becomes a field `ψ(x, t)` obeying
//!
//! ```text
//! ∂_t ψ(x, t) = -γ ∫ dy K(x - y) n(y) ψ(y, t),    ψ(x, 0) = e^{ix},
//! ```
//!
//! with `K(s) = e^{i|s|}` for a bidirectional waveguide and the forward-only
//! `K(s) = e^{is} θ(s)` for a chiral one (`x` in phase units). The density
//! `n` integrates to `N` and `κ = γN`.
//!
//! The kernel splits into `e^{ix} e^{-iy}` for `y < x` and `e^{-ix} e^{iy}` for
//! `y > x`, so the trapezoid-rule integral at all nodes follows from one
//! forward and one backward running sum, `O(M)` per evaluation on `M` nodes.
//! Time stepping is classical fourth-order Runge–Kutta with a fixed step.

use serde::{Deserialize, Serialize};

use crate::analytic::bessel_j0;
use crate::dynamics::{validate_times, DecayCurve};
use crate::{Error, Result, WaveguideKind, C64};

/// Largest kernel phase a single grid cell may span.
pub const MAX_CELL_PHASE: f64 = 0.5;

/// Recommended grid spacing when the sample is many wavelengths long.
pub const DEFAULT_SPACING: f64 = 0.2;

/// Gaussian profiles are truncated at this many standard deviations.
const GAUSSIAN_CUTOFF: f64 = 6.0;

const MIN_CELLS: usize = 64;

/// Shape of the atomic density, with extents in phase units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum DensityShape {
    /// Constant density on `[0, kσ]`.
    Uniform { sigma_phase: f64 },
    /// Zero-mean normal density with standard deviation `kσ`.
    Gaussian { sigma_phase: f64 },
}

/// Atomic density `n(x)` with `∫ n dx = total`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub shape: DensityShape,
    pub total: f64,
}

impl DensityProfile {
    pub fn new(shape: DensityShape, total: f64) -> Result<Self> {
        let profile = Self { shape, total };
        profile.validate()?;
        Ok(profile)
    }

    pub fn uniform(sigma_phase: f64, total: f64) -> Result<Self> {
        Self::new(DensityShape::Uniform { sigma_phase }, total)
    }

    pub fn gaussian(sigma_phase: f64, total: f64) -> Result<Self> {
        Self::new(DensityShape::Gaussian { sigma_phase }, total)
    }

    pub fn validate(&self) -> Result<()> {
        let sigma = self.sigma_phase();
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter(format!("sigma_phase must be positive, got {sigma}")));
        }
        if !(self.total.is_finite() && self.total > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "total atom number must be positive, got {}",
                self.total
            )));
        }
        Ok(())
    }

    pub fn sigma_phase(&self) -> f64 {
        match self.shape {
            DensityShape::Uniform { sigma_phase } | DensityShape::Gaussian { sigma_phase } => sigma_phase,
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match self.shape {
            DensityShape::Uniform { sigma_phase } => {
                if (0.0..=sigma_phase).contains(&x) {
                    self.total / sigma_phase
                } else {
                    0.0
                }
            }
            DensityShape::Gaussian { sigma_phase } => {
                let z = x / sigma_phase;
                self.total / (sigma_phase * (2.0 * std::f64::consts::PI).sqrt()) * (-0.5 * z * z).exp()
            }
        }
    }

    /// Interval outside of which the density is treated as zero.
    pub fn support(&self) -> (f64, f64) {
        match self.shape {
            DensityShape::Uniform { sigma_phase } => (0.0, sigma_phase),
            DensityShape::Gaussian { sigma_phase } => {
                (-GAUSSIAN_CUTOFF * sigma_phase, GAUSSIAN_CUTOFF * sigma_phase)
            }
        }
    }

    /// Uniform grid over the support with spacing at most `spacing` and at
    /// least 64 cells.
    pub fn default_grid(&self, spacing: f64) -> Result<Vec<f64>> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidParameter(format!("grid spacing must be positive, got {spacing}")));
        }
        let (lo, hi) = self.support();
        let cells = (((hi - lo) / spacing).ceil() as usize).max(MIN_CELLS);
        Ok(crate::linspace(lo, hi, cells + 1))
    }
}

/// `ψ(x, t)` on a space-time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumField {
    pub x_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    /// Row-major: `psi[it * x_grid.len() + ix]`.
    psi: Vec<C64>,
}

impl ContinuumField {
    pub fn psi(&self, it: usize, ix: usize) -> C64 {
        self.psi[it * self.x_grid.len() + ix]
    }

    /// The field at time index `it`.
    pub fn row(&self, it: usize) -> &[C64] {
        let m = self.x_grid.len();
        &self.psi[it * m..(it + 1) * m]
    }
}

/// Step control for [`solve_continuum_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuumOptions {
    /// Upper bound on `κ Δt` for a Runge–Kutta step.
    pub max_kappa_step: f64,
}

impl Default for ContinuumOptions {
    fn default() -> Self {
        Self { max_kappa_step: 0.02 }
    }
}

fn check_x_grid(x_grid: &[f64]) -> Result<()> {
    if x_grid.len() < 2 {
        return Err(Error::InvalidParameter("spatial grid needs at least two points".into()));
    }
    if let Some(x) = x_grid.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("grid point {x} is not finite")));
    }
    for (cell, w) in x_grid.windows(2).enumerate() {
        let h = w[1] - w[0];
        if h <= 0.0 {
            return Err(Error::InvalidParameter("spatial grid must be strictly increasing".into()));
        }
        if h > MAX_CELL_PHASE {
            return Err(Error::UnderResolvedGrid { cell, phase: h, limit: MAX_CELL_PHASE });
        }
    }
    Ok(())
}

fn check_support(profile: &DensityProfile, x_grid: &[f64]) -> Result<()> {
    let (lo, hi) = match profile.shape {
        DensityShape::Uniform { sigma_phase } => (0.0, sigma_phase),
        // the tail beyond 5σ carries less than 1e-6 of the atoms
        DensityShape::Gaussian { sigma_phase } => (-5.0 * sigma_phase, 5.0 * sigma_phase),
    };
    let first = x_grid[0];
    let last = x_grid[x_grid.len() - 1];
    if first > lo || last < hi {
        return Err(Error::InvalidParameter(format!(
            "grid [{first}, {last}] does not cover the density support [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Precomputed quantities for the kernel integral.
struct Quadrature {
    kind: WaveguideKind,
    phase: Vec<C64>,
    density: Vec<f64>,
    half_cells: Vec<f64>,
}

impl Quadrature {
    fn new(kind: WaveguideKind, profile: &DensityProfile, x_grid: &[f64]) -> Self {
        Self {
            kind,
            phase: x_grid.iter().map(|&x| C64::cis(x)).collect(),
            density: x_grid.iter().map(|&x| profile.density(x)).collect(),
            half_cells: x_grid.windows(2).map(|w| 0.5 * (w[1] - w[0])).collect(),
        }
    }

    /// `out_i = ∫ dy K(x_i - y) n(y) ψ(y)` by the trapezoid rule.
    fn apply(&self, psi: &[C64], out: &mut [C64]) {
        let m = psi.len();
        let mut running = C64::new(0.0, 0.0);
        let mut prev = self.phase[0].conj() * self.density[0] * psi[0];
        out[0] = C64::new(0.0, 0.0);
        for i in 1..m {
            let g = self.phase[i].conj() * self.density[i] * psi[i];
            running += (prev + g) * self.half_cells[i - 1];
            out[i] = self.phase[i] * running;
            prev = g;
        }
        if self.kind == WaveguideKind::Bidirectional {
            let mut running = C64::new(0.0, 0.0);
            let mut prev = self.phase[m - 1] * self.density[m - 1] * psi[m - 1];
            for i in (0..m - 1).rev() {
                let g = self.phase[i] * self.density[i] * psi[i];
                running += (prev + g) * self.half_cells[i];
                out[i] += self.phase[i].conj() * running;
                prev = g;
            }
        }
    }

    /// `∫ n(x) f(x) dx` by the trapezoid rule.
    fn integrate<F: Fn(usize) -> C64>(&self, f: F) -> C64 {
        self.half_cells
            .iter()
            .enumerate()
            .map(|(i, &h)| (f(i) * self.density[i] + f(i + 1) * self.density[i + 1]) * h)
            .sum()
    }
}

/// Solves the continuum field equation with default step control.
pub fn solve_continuum(
    profile: &DensityProfile,
    gamma: f64,
    x_grid: &[f64],
    t_grid: &[f64],
    kind: WaveguideKind,
) -> Result<ContinuumField> {
    solve_continuum_with(profile, gamma, x_grid, t_grid, kind, ContinuumOptions::default())
}

pub fn solve_continuum_with(
    profile: &DensityProfile,
    gamma: f64,
    x_grid: &[f64],
    t_grid: &[f64],
    kind: WaveguideKind,
    options: ContinuumOptions,
) -> Result<ContinuumField> {
    profile.validate()?;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidGamma(gamma));
    }
    if !(options.max_kappa_step.is_finite() && options.max_kappa_step > 0.0) {
        return Err(Error::InvalidParameter("max_kappa_step must be positive".into()));
    }
    check_x_grid(x_grid)?;
    check_support(profile, x_grid)?;
    validate_times(t_grid)?;

    let m = x_grid.len();
    let quad = Quadrature::new(kind, profile, x_grid);
    let max_step = options.max_kappa_step / (gamma * profile.total);

    let rate = C64::new(-gamma, 0.0);
    let mut psi = quad.phase.clone();
    let mut out = Vec::with_capacity(m * t_grid.len());
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![C64::default(); m], vec![C64::default(); m], vec![C64::default(); m], vec![C64::default(); m]);
    let mut stage = vec![C64::default(); m];
    let mut now = 0.0;

    for &target in t_grid {
        let span = target - now;
        if span > 0.0 {
            let steps = (span / max_step).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                quad.apply(&psi, &mut k1);
                for i in 0..m {
                    stage[i] = psi[i] + k1[i] * rate * (0.5 * h);
                }
                quad.apply(&stage, &mut k2);
                for i in 0..m {
                    stage[i] = psi[i] + k2[i] * rate * (0.5 * h);
                }
                quad.apply(&stage, &mut k3);
                for i in 0..m {
                    stage[i] = psi[i] + k3[i] * rate * h;
                }
                quad.apply(&stage, &mut k4);
                for i in 0..m {
                    psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * rate * (h / 6.0);
                }
            }
            if psi.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::Numerical(format!("continuum field diverged before t = {target}")));
            }
        }
        now = target;
        out.extend_from_slice(&psi);
    }

    Ok(ContinuumField { x_grid: x_grid.to_vec(), t_grid: t_grid.to_vec(), psi: out })
}

/// Closed-form field of a long uniform sample, `ψ = e^{ix} J₀(2√(κ t x / kσ))`.
pub fn analytic_continuum_field(x: f64, t: f64, kappa: f64, sigma_phase: f64) -> Result<C64> {
    if !(sigma_phase.is_finite() && sigma_phase > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma_phase must be positive, got {sigma_phase}")));
    }
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::InvalidParameter(format!("kappa must be positive, got {kappa}")));
    }
    if !(x.is_finite() && t.is_finite() && (0.0..=sigma_phase).contains(&x) && t >= 0.0) {
        return Err(Error::OutsideDomain { x, t });
    }
    Ok(C64::cis(x) * bessel_j0(2.0 * (kappa * t * x / sigma_phase).sqrt()))
}

/// Bright-state population `|(1/N) ∫ n(x) e^{-ix} ψ(x, t) dx|²` and surviving
/// excitation `(1/N) ∫ n |ψ|² dx`, with the solver's quadrature.
///
/// `N` is the quadrature value of `∫ n dx`, so `P_W(0) = 1` on any grid.
pub fn pw_from_field(field: &ContinuumField, profile: &DensityProfile) -> Result<DecayCurve> {
    profile.validate()?;
    check_x_grid(&field.x_grid)?;
    let quad = Quadrature::new(WaveguideKind::Bidirectional, profile, &field.x_grid);
    let norm = quad.integrate(|_| C64::new(1.0, 0.0)).re;
    if norm <= 0.0 {
        return Err(Error::InvalidParameter("density vanishes on the grid".into()));
    }
    let mut p_w = Vec::with_capacity(field.t_grid.len());
    let mut p_exc = Vec::with_capacity(field.t_grid.len());
    for it in 0..field.t_grid.len() {
        let row = field.row(it);
        let overlap = quad.integrate(|i| quad.phase[i].conj() * row[i]) / norm;
        p_w.push(overlap.norm_sqr());
        p_exc.push(quad.integrate(|i| C64::new(row[i].norm_sqr(), 0.0)).re / norm);
    }
    Ok(DecayCurve { times: field.t_grid.clone(), p_w, p_exc, p_d: None })
}
