//! Scenario configuration: an optional TOML file, overridden by flags, and
//! resolved into a fully specified [`Scenario`].

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use wgqed::montecarlo::{AverageSpec, PositionDistribution};
use wgqed::WaveguideKind;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simulate,
    Analytic,
    Montecarlo,
    Continuum,
    Compare,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Simulate => "simulate",
            Mode::Analytic => "analytic",
            Mode::Montecarlo => "montecarlo",
            Mode::Continuum => "continuum",
            Mode::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// Finite-N chiral law with a generalized Laguerre polynomial.
    Laguerre,
    /// N → ∞ chiral law J₁(2√κt)²/κt.
    Bessel,
    /// Long-time algebraic envelope, valid for κt ≥ 1.
    Longtime,
    /// Sub-wavelength sample, e^{-2κt}.
    Superradiant,
    /// Two atoms on a chiral waveguide, bright and dark populations.
    TwoAtomChiral,
    /// Two atoms on a bidirectional waveguide at a given separation.
    TwoAtomBidirectional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Uniform,
    Gaussian,
}

/// Contents of a config file. Every key is optional; unknown keys are
/// rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mode: Option<Mode>,
    pub kind: Option<WaveguideKind>,
    pub n_atoms: Option<usize>,
    pub gamma: Option<f64>,
    pub ksigma: Option<f64>,
    pub distribution: Option<PositionDistribution>,
    pub m_realizations: Option<usize>,
    pub seed: Option<u64>,
    pub keep_realizations: Option<bool>,
    pub t_max: Option<f64>,
    pub t_min: Option<f64>,
    pub n_points: Option<usize>,
    pub spacing: Option<Spacing>,
    pub formula: Option<Formula>,
    pub separation: Option<f64>,
    pub profile: Option<Profile>,
    pub dx: Option<f64>,
    pub out: Option<PathBuf>,
    pub json: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Values set in `other` replace those in `self`.
    pub fn overridden_by(self, other: FileConfig) -> FileConfig {
        FileConfig {
            mode: other.mode.or(self.mode),
            kind: other.kind.or(self.kind),
            n_atoms: other.n_atoms.or(self.n_atoms),
            gamma: other.gamma.or(self.gamma),
            ksigma: other.ksigma.or(self.ksigma),
            distribution: other.distribution.or(self.distribution),
            m_realizations: other.m_realizations.or(self.m_realizations),
            seed: other.seed.or(self.seed),
            keep_realizations: other.keep_realizations.or(self.keep_realizations),
            t_max: other.t_max.or(self.t_max),
            t_min: other.t_min.or(self.t_min),
            n_points: other.n_points.or(self.n_points),
            spacing: other.spacing.or(self.spacing),
            formula: other.formula.or(self.formula),
            separation: other.separation.or(self.separation),
            profile: other.profile.or(self.profile),
            dx: other.dx.or(self.dx),
            out: other.out.or(self.out),
            json: other.json.or(self.json),
        }
    }
}

/// Fully resolved scenario. Everything that influences the data file lives
/// here; output locations do not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub mode: Mode,
    pub kind: WaveguideKind,
    pub n_atoms: usize,
    pub gamma: f64,
    pub ksigma: f64,
    pub distribution: PositionDistribution,
    pub m_realizations: usize,
    pub seed: u64,
    pub keep_realizations: bool,
    /// Last sample, as `γt`.
    pub t_max: f64,
    /// First nonzero sample of a log grid, as `γt`.
    pub t_min: f64,
    pub n_points: usize,
    pub spacing: Spacing,
    pub formula: Formula,
    pub separation: Option<f64>,
    pub profile: Profile,
    pub dx: f64,
}

/// Where results go.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputTarget {
    /// Data file; standard output when absent.
    pub path: Option<PathBuf>,
    /// Also write a JSON twin next to the data file.
    pub json: bool,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be a positive number, got {v}")))
    }
}

pub fn resolve(cfg: FileConfig) -> Result<(Scenario, OutputTarget), CliError> {
    let mode = cfg.mode.ok_or_else(|| invalid("no mode given"))?;
    let n_atoms = cfg.n_atoms.unwrap_or(2);
    if n_atoms == 0 {
        return Err(invalid("n_atoms must be at least 1"));
    }
    let gamma = positive("gamma", cfg.gamma.unwrap_or(1.0))?;
    let ksigma = positive("ksigma", cfg.ksigma.unwrap_or(1000.0))?;
    let distribution = cfg
        .distribution
        .unwrap_or(PositionDistribution::Gaussian { mean: 0.0, sigma_phase: ksigma });
    let t_max = positive("t_max", cfg.t_max.unwrap_or(10.0))?;
    let spacing = cfg.spacing.unwrap_or(Spacing::Linear);
    let t_min = match cfg.t_min {
        Some(t) => positive("t_min", t)?,
        None => t_max * 1e-3,
    };
    if spacing == Spacing::Log && t_min >= t_max {
        return Err(invalid(format!("t_min {t_min} must be below t_max {t_max}")));
    }
    let n_points = cfg.n_points.unwrap_or(201);
    if n_points < 2 {
        return Err(invalid("n_points must be at least 2"));
    }
    if let Some(d) = cfg.separation {
        if !d.is_finite() {
            return Err(invalid(format!("separation {d} is not finite")));
        }
    }
    let scenario = Scenario {
        mode,
        kind: cfg.kind.unwrap_or(WaveguideKind::Chiral),
        n_atoms,
        gamma,
        ksigma,
        distribution,
        m_realizations: cfg.m_realizations.unwrap_or_else(|| AverageSpec::default_realizations(n_atoms)),
        seed: cfg.seed.unwrap_or(0),
        keep_realizations: cfg.keep_realizations.unwrap_or(false),
        t_max,
        t_min,
        n_points,
        spacing,
        formula: cfg.formula.unwrap_or(Formula::Laguerre),
        separation: cfg.separation,
        profile: cfg.profile.unwrap_or(Profile::Uniform),
        dx: positive("dx", cfg.dx.unwrap_or(wgqed::continuum::DEFAULT_SPACING))?,
    };
    scenario.distribution.validate().map_err(CliError::from_core)?;
    if scenario.m_realizations == 0 {
        return Err(invalid("m_realizations must be at least 1"));
    }
    let output = OutputTarget { path: cfg.out, json: cfg.json.unwrap_or(false) };
    Ok((scenario, output))
}

impl Scenario {
    /// Sample points in `γt`.
    pub fn gamma_times(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => wgqed::linspace(0.0, self.t_max, self.n_points),
            Spacing::Log => {
                let (a, b) = (self.t_min.ln(), self.t_max.ln());
                let mut t: Vec<f64> = wgqed::linspace(a, b, self.n_points).into_iter().map(f64::exp).collect();
                // keep the end point exact
                *t.last_mut().expect("at least two points") = self.t_max;
                t
            }
        }
    }

    /// Physical sample times, `γt / γ`.
    pub fn times(&self) -> Vec<f64> {
        self.gamma_times().into_iter().map(|x| x / self.gamma).collect()
    }

    pub fn kappa(&self) -> f64 {
        self.gamma * self.n_atoms as f64
    }
}
