//! Turns a resolved [`Scenario`] into columns of numbers.

use wgqed::analytic::{
    pw_chiral_asymptotic, pw_chiral_exact, pw_longtime, pw_superradiant, two_atom_chiral_populations,
    AsymptoticParams,
};
use wgqed::continuum::{pw_from_field, solve_continuum, DensityProfile};
use wgqed::dynamics::{simulate_decay, two_atom_bidirectional_analytic};
use wgqed::montecarlo::{average_decay, realization_rng, sample_positions, AverageSpec};
use wgqed::{AtomEnsemble, WaveguideKind};

use crate::config::{Formula, Mode, Profile, Scenario};
use crate::CliError;

/// Named columns of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<(String, Vec<f64>)>,
}

impl Table {
    fn with_times(s: &Scenario, times: &[f64]) -> Self {
        let gamma_t = s.gamma_times();
        debug_assert_eq!(gamma_t.len(), times.len());
        let kappa_t = gamma_t.iter().map(|x| x * s.n_atoms as f64).collect();
        Self { columns: vec![("gamma_t".into(), gamma_t), ("kappa_t".into(), kappa_t)] }
    }

    fn push(&mut self, name: &str, values: Vec<f64>) {
        self.columns.push((name.to_string(), values));
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, v)| v.len())
    }
}

/// Everything a run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub table: Table,
    /// Per-realization `p_w`, when requested for a Monte-Carlo run.
    pub realizations: Option<Table>,
}

/// Atom phases for single-ensemble modes: the explicit separation if given,
/// otherwise realization 0 of the configured distribution.
fn positions(s: &Scenario) -> Result<Vec<f64>, CliError> {
    if let Some(d) = s.separation {
        if s.n_atoms != 2 {
            return Err(CliError::Config("separation requires n_atoms = 2".into()));
        }
        return Ok(vec![0.0, d]);
    }
    sample_positions(&s.distribution, s.n_atoms, &mut realization_rng(s.seed, 0)).map_err(CliError::from_core)
}

fn ensemble(s: &Scenario) -> Result<AtomEnsemble, CliError> {
    AtomEnsemble::new(positions(s)?, s.gamma, s.kind).map_err(CliError::from_core)
}

pub fn run(s: &Scenario) -> Result<Output, CliError> {
    let times = s.times();
    let table = match s.mode {
        Mode::Simulate => simulate(s, &times)?,
        Mode::Analytic => analytic(s, &times)?,
        Mode::Montecarlo => return montecarlo(s, &times),
        Mode::Continuum => continuum(s, &times)?,
        Mode::Compare => compare(s, &times)?,
    };
    Ok(Output { table, realizations: None })
}

fn simulate(s: &Scenario, times: &[f64]) -> Result<Table, CliError> {
    let curve = simulate_decay(&ensemble(s)?, times).map_err(CliError::from_core)?;
    let mut table = Table::with_times(s, times);
    table.push("p_w", curve.p_w);
    if let Some(p_d) = curve.p_d {
        table.push("p_d", p_d);
    }
    table.push("p_exc", curve.p_exc);
    Ok(table)
}

fn montecarlo(s: &Scenario, times: &[f64]) -> Result<Output, CliError> {
    let spec = AverageSpec {
        kind: s.kind,
        gamma: s.gamma,
        distribution: s.distribution.clone(),
        n_atoms: s.n_atoms,
        realizations: s.m_realizations,
        seed: s.seed,
        keep_realizations: s.keep_realizations,
    };
    spec.validate().map_err(CliError::from_core)?;
    let avg = average_decay(&spec, times).map_err(CliError::from_core)?;
    let mut table = Table::with_times(s, times);
    table.push("p_w", avg.mean_curve.p_w);
    table.push("p_w_stderr", avg.p_w_stderr);
    if let Some(p_d) = avg.mean_curve.p_d {
        table.push("p_d", p_d);
    }
    table.push("p_exc", avg.mean_curve.p_exc);
    let realizations = avg.per_realization.map(|curves| {
        let mut r = Table::with_times(s, times);
        for (i, c) in curves.into_iter().enumerate() {
            r.push(&format!("p_w_{i}"), c.p_w);
        }
        r
    });
    Ok(Output { table, realizations })
}

fn map_times(times: &[f64], f: impl Fn(f64) -> Result<f64, CliError>) -> Result<Vec<f64>, CliError> {
    times.iter().map(|&t| f(t)).collect()
}

fn analytic(s: &Scenario, times: &[f64]) -> Result<Table, CliError> {
    let core = CliError::from_core;
    let params = AsymptoticParams::new(s.kappa()).map_err(core)?;
    let mut table = Table::with_times(s, times);
    match s.formula {
        Formula::Laguerre => {
            table.push("p_w", map_times(times, |t| pw_chiral_exact(s.n_atoms, s.gamma, t).map_err(core))?)
        }
        Formula::Bessel => table.push("p_w", times.iter().map(|&t| pw_chiral_asymptotic(params, t)).collect()),
        Formula::Longtime => {
            if s.kappa() * times[0] < 1.0 {
                return Err(CliError::Config(
                    "the long-time law needs κt ≥ 1 on the whole grid; use log spacing with t_min ≥ 1/κ".into(),
                ));
            }
            table.push("p_w", map_times(times, |t| pw_longtime(params, t).map_err(core))?)
        }
        Formula::Superradiant => table.push("p_w", times.iter().map(|&t| pw_superradiant(params, t)).collect()),
        Formula::TwoAtomChiral | Formula::TwoAtomBidirectional => {
            if s.n_atoms != 2 {
                return Err(CliError::Config("two-atom formulas require n_atoms = 2".into()));
            }
            let pairs = if s.formula == Formula::TwoAtomChiral {
                times
                    .iter()
                    .map(|&t| two_atom_chiral_populations(s.gamma, t).map_err(core))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                let d = s
                    .separation
                    .ok_or_else(|| CliError::Config("two-atom-bidirectional needs a separation".into()))?
                    .abs();
                times
                    .iter()
                    .map(|&t| two_atom_bidirectional_analytic(d, s.gamma, t).map_err(core))
                    .collect::<Result<Vec<_>, _>>()?
            };
            table.push("p_w", pairs.iter().map(|p| p.0).collect());
            table.push("p_d", pairs.iter().map(|p| p.1).collect());
            table.push("p_exc", pairs.iter().map(|p| p.0 + p.1).collect());
        }
    }
    Ok(table)
}

fn continuum(s: &Scenario, times: &[f64]) -> Result<Table, CliError> {
    let core = CliError::from_core;
    let total = s.n_atoms as f64;
    let profile = match s.profile {
        Profile::Uniform => DensityProfile::uniform(s.ksigma, total),
        Profile::Gaussian => DensityProfile::gaussian(s.ksigma, total),
    }
    .map_err(core)?;
    let grid = profile.default_grid(s.dx).map_err(core)?;
    let field = solve_continuum(&profile, s.gamma, &grid, times, s.kind).map_err(core)?;
    let curve = pw_from_field(&field, &profile).map_err(core)?;
    let mut table = Table::with_times(s, times);
    table.push("p_w", curve.p_w);
    table.push("p_exc", curve.p_exc);
    Ok(table)
}

fn compare(s: &Scenario, times: &[f64]) -> Result<Table, CliError> {
    let core = CliError::from_core;
    let ens = ensemble(s)?;
    let analytic: Vec<f64> = match s.kind {
        WaveguideKind::Chiral => map_times(times, |t| pw_chiral_exact(s.n_atoms, s.gamma, t).map_err(core))?,
        WaveguideKind::Bidirectional if s.n_atoms == 2 => {
            let d = (ens.phases()[1] - ens.phases()[0]).abs();
            map_times(times, |t| two_atom_bidirectional_analytic(d, s.gamma, t).map(|p| p.0).map_err(core))?
        }
        WaveguideKind::Bidirectional => {
            return Err(CliError::Config(
                "compare has closed forms for chiral ensembles and bidirectional pairs only".into(),
            ))
        }
    };
    let numeric = simulate_decay(&ens, times).map_err(core)?.p_w;
    let err = numeric.iter().zip(&analytic).map(|(a, b)| (a - b).abs()).collect();
    let mut table = Table::with_times(s, times);
    table.push("p_w_numeric", numeric);
    table.push("p_w_analytic", analytic);
    table.push("abs_err", err);
    Ok(table)
}

