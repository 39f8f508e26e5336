//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported operation returns a [`Plot`]: one shared x axis and a few
//! named y series. The `*_plot` functions are plain Rust so they can be
//! tested natively; the `#[wasm_bindgen]` wrappers only translate errors.

use wasm_bindgen::prelude::*;
use wgqed::analytic::{pw_chiral_asymptotic, pw_chiral_exact, pw_longtime, AsymptoticParams};
use wgqed::continuum::{analytic_continuum_field, solve_continuum, DensityProfile};
use wgqed::montecarlo::{average_decay, AverageSpec, PositionDistribution};
use wgqed::{linspace, WaveguideKind};

/// Upper bounds that keep a single call interactive.
pub const MAX_POINTS: usize = 2000;
pub const MAX_ATOMS_AVERAGED: usize = 200;
pub const MAX_REALIZATIONS: usize = 500;
pub const MAX_CONTINUUM_CELLS: usize = 50_000;

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    x: Vec<f64>,
    names: Vec<String>,
    series: Vec<Vec<f64>>,
}

#[wasm_bindgen]
impl Plot {
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    pub fn names(&self) -> Vec<String> {
        self.names.clone()
    }

    /// Series `i`; `NaN` marks points where it is undefined.
    pub fn series(&self, i: usize) -> Vec<f64> {
        self.series.get(i).cloned().unwrap_or_default()
    }
}

impl Plot {
    fn new(x: Vec<f64>) -> Self {
        Self { x, names: Vec::new(), series: Vec::new() }
    }

    fn with(mut self, name: &str, values: Vec<f64>) -> Self {
        self.names.push(name.to_string());
        self.series.push(values);
        self
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.names.iter().position(|n| n == name).map(|i| self.series[i].as_slice())
    }

    pub fn x_values(&self) -> &[f64] {
        &self.x
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> wgqed::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(wgqed::Error::InvalidParameter(msg()))
    }
}

fn kappa_grid(kappa_t_max: f64, points: usize) -> wgqed::Result<Vec<f64>> {
    check(kappa_t_max.is_finite() && kappa_t_max > 0.0, || format!("κt range must be positive, got {kappa_t_max}"))?;
    check((2..=MAX_POINTS).contains(&points), || format!("points must lie in 2..={MAX_POINTS}"))?;
    Ok(linspace(0.0, kappa_t_max, points))
}

/// Chiral `P_W` against `κt`: finite `N`, the `N → ∞` Bessel law and the
/// long-time envelope (from `κt = 1`).
pub fn chiral_plot(n_atoms: usize, kappa_t_max: f64, points: usize) -> wgqed::Result<Plot> {
    let x = kappa_grid(kappa_t_max, points)?;
    check(n_atoms >= 1, || "at least one atom is required".into())?;
    let params = AsymptoticParams::new(1.0)?;
    let gamma = 1.0 / n_atoms as f64;
    let exact = x.iter().map(|&u| pw_chiral_exact(n_atoms, gamma, u)).collect::<wgqed::Result<Vec<_>>>()?;
    let bessel = x.iter().map(|&u| pw_chiral_asymptotic(params, u)).collect();
    let longtime = x.iter().map(|&u| pw_longtime(params, u).unwrap_or(f64::NAN)).collect();
    Ok(Plot::new(x).with("finite N", exact).with("N → ∞", bessel).with("long time", longtime))
}

/// Bidirectional disorder average over Gaussian positions against the
/// chiral curve for the same `N`.
pub fn disorder_plot(
    n_atoms: usize,
    ksigma: f64,
    realizations: usize,
    seed: u64,
    kappa_t_max: f64,
    points: usize,
) -> wgqed::Result<Plot> {
    let x = kappa_grid(kappa_t_max, points)?;
    check((1..=MAX_ATOMS_AVERAGED).contains(&n_atoms), || format!("atoms must lie in 1..={MAX_ATOMS_AVERAGED}"))?;
    check((1..=MAX_REALIZATIONS).contains(&realizations), || {
        format!("realizations must lie in 1..={MAX_REALIZATIONS}")
    })?;
    let gamma = 1.0 / n_atoms as f64;
    let spec = AverageSpec {
        kind: WaveguideKind::Bidirectional,
        gamma,
        distribution: PositionDistribution::Gaussian { mean: 0.0, sigma_phase: ksigma },
        n_atoms,
        realizations,
        seed,
        keep_realizations: false,
    };
    // with κ = 1 the time grid is the κt grid
    let avg = average_decay(&spec, &x)?;
    let chiral = x.iter().map(|&t| pw_chiral_exact(n_atoms, gamma, t)).collect::<wgqed::Result<Vec<_>>>()?;
    let upper = avg.mean_curve.p_w.iter().zip(&avg.p_w_stderr).map(|(p, s)| p + s).collect();
    let lower = avg.mean_curve.p_w.iter().zip(&avg.p_w_stderr).map(|(p, s)| p - s).collect();
    Ok(Plot::new(x)
        .with("bidirectional average", avg.mean_curve.p_w)
        .with("chiral", chiral)
        .with("+1 s.e.", upper)
        .with("-1 s.e.", lower))
}

/// `|ψ(x)|` across a uniform sample at one `κt`, solved numerically with the
/// bidirectional kernel, against the Bessel field of the forward-only limit.
pub fn continuum_plot(kappa_t: f64, ksigma: f64, points: usize) -> wgqed::Result<Plot> {
    check(kappa_t.is_finite() && kappa_t >= 0.0, || format!("κt must be non-negative, got {kappa_t}"))?;
    check((2..=MAX_POINTS).contains(&points), || format!("points must lie in 2..={MAX_POINTS}"))?;
    let total = 100.0;
    let profile = DensityProfile::uniform(ksigma, total)?;
    let grid = profile.default_grid(wgqed::continuum::DEFAULT_SPACING)?;
    check(grid.len() <= MAX_CONTINUUM_CELLS + 1, || {
        format!("kσ = {ksigma} needs more than {MAX_CONTINUUM_CELLS} grid cells")
    })?;
    let t = kappa_t / total;
    let times = if kappa_t > 0.0 { vec![0.0, t] } else { vec![0.0] };
    let field = solve_continuum(&profile, 1.0 / total, &grid, &times, WaveguideKind::Bidirectional)?;
    let last = times.len() - 1;
    let stride = (grid.len() - 1).div_ceil(points - 1).max(1);
    let mut picks: Vec<usize> = (0..grid.len()).step_by(stride).collect();
    if picks.last() != Some(&(grid.len() - 1)) {
        picks.push(grid.len() - 1);
    }
    let x: Vec<f64> = picks.iter().map(|&i| grid[i] / ksigma).collect();
    let numeric = picks.iter().map(|&i| field.psi(last, i).norm()).collect();
    let exact = picks
        .iter()
        .map(|&i| analytic_continuum_field(grid[i].min(ksigma), t, 1.0, ksigma).map(|z| z.norm()))
        .collect::<wgqed::Result<Vec<_>>>()?;
    Ok(Plot::new(x).with("numerical", numeric).with("Bessel field", exact))
}

fn js(e: wgqed::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = chiralCurves)]
pub fn chiral_curves(n_atoms: usize, kappa_t_max: f64, points: usize) -> Result<Plot, JsError> {
    chiral_plot(n_atoms, kappa_t_max, points).map_err(js)
}

#[wasm_bindgen(js_name = disorderAverage)]
pub fn disorder_average(
    n_atoms: usize,
    ksigma: f64,
    realizations: usize,
    seed: u64,
    kappa_t_max: f64,
    points: usize,
) -> Result<Plot, JsError> {
    disorder_plot(n_atoms, ksigma, realizations, seed, kappa_t_max, points).map_err(js)
}

#[wasm_bindgen(js_name = continuumProfile)]
pub fn continuum_profile(kappa_t: f64, ksigma: f64, points: usize) -> Result<Plot, JsError> {
    continuum_plot(kappa_t, ksigma, points).map_err(js)
}
