//! `wgqed`: batch runner for single-excitation waveguide decay scenarios.
//!
//! Exit status 0 on success, 1 for an invalid configuration, 2 when the
//! numerics fail.

mod config;
mod output;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use wgqed::montecarlo::PositionDistribution;
use wgqed::WaveguideKind;

use config::{FileConfig, Formula, Mode, OutputTarget, Profile, Scenario, Spacing};
use output::Metadata;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    /// Precondition violations are configuration errors; failures inside the
    /// numerics are not.
    pub fn from_core(e: wgqed::Error) -> Self {
        match e {
            wgqed::Error::Numerical(_) | wgqed::Error::LaguerreOverflow { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "wgqed", version, about = "Decay of a single collective excitation on a 1D waveguide")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one ensemble under H_eff.
    Simulate(ScenarioArgs),
    /// Evaluate a closed-form decay law.
    Analytic(ScenarioArgs),
    /// Average over random atomic positions.
    Montecarlo(ScenarioArgs),
    /// Solve the continuum field equation.
    Continuum(ScenarioArgs),
    /// Numerical evolution against the matching closed form.
    Compare(ScenarioArgs),
    /// Run the mode named in the config file.
    Run(ScenarioArgs),
    /// Repeat a run from its metadata sidecar.
    Rerun {
        meta: PathBuf,
        /// Write to this path instead of the recorded one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Default)]
struct ScenarioArgs {
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    kind: Option<WaveguideKind>,
    /// Number of atoms.
    #[arg(long = "n")]
    n_atoms: Option<usize>,
    /// Emission rate into one waveguide direction.
    #[arg(long)]
    gamma: Option<f64>,
    /// Sample size kσ in phase units.
    #[arg(long)]
    ksigma: Option<f64>,
    /// Monte-Carlo realizations.
    #[arg(long = "m")]
    m_realizations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Keep every realization (written to <out>.realizations.csv).
    #[arg(long)]
    keep_realizations: bool,
    /// Last time, as γt.
    #[arg(long)]
    t_max: Option<f64>,
    /// First nonzero time for log spacing, as γt.
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    spacing: Option<Spacing>,
    #[arg(long, value_enum)]
    formula: Option<Formula>,
    /// Phase separation k|x₁ - x₂| of a pair, instead of sampling positions.
    #[arg(long)]
    separation: Option<f64>,
    /// Atom phases, comma separated, instead of sampling positions.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    phases: Option<Vec<f64>>,
    /// Continuum density profile.
    #[arg(long, value_enum)]
    profile: Option<Profile>,
    /// Continuum grid spacing in phase units.
    #[arg(long)]
    dx: Option<f64>,
    /// Data file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a JSON twin next to the data file.
    #[arg(long)]
    json: bool,
}

impl ScenarioArgs {
    fn into_config(self, mode: Option<Mode>) -> Result<FileConfig, CliError> {
        let base = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let flags = FileConfig {
            mode,
            kind: self.kind,
            n_atoms: self.n_atoms,
            gamma: self.gamma,
            ksigma: self.ksigma,
            distribution: self.phases.map(|phases| PositionDistribution::Fixed { phases }),
            m_realizations: self.m_realizations,
            seed: self.seed,
            keep_realizations: self.keep_realizations.then_some(true),
            t_max: self.t_max,
            t_min: self.t_min,
            n_points: self.points,
            spacing: self.spacing,
            formula: self.formula,
            separation: self.separation,
            profile: self.profile,
            dx: self.dx,
            out: self.out,
            json: self.json.then_some(true),
        };
        let mut merged = base.overridden_by(flags);
        // a kσ flag re-derives the default Gaussian unless positions were given explicitly
        if let (Some(ks), Some(PositionDistribution::Gaussian { mean, .. })) = (self.ksigma, &merged.distribution) {
            merged.distribution = Some(PositionDistribution::Gaussian { mean: *mean, sigma_phase: ks });
        }
        Ok(merged)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("WGQED_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("WGQED_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn execute(scenario: Scenario, target: OutputTarget) -> Result<(), CliError> {
    let start = Instant::now();
    let result = run::run(&scenario)?;
    let csv = output::csv(&scenario, &result.table)?;
    let Some(path) = target.path.clone() else {
        print!("{csv}");
        return Ok(());
    };
    output::write(&path, &csv)?;
    if target.json {
        output::write(&output::sibling(&path, "json"), &output::json(&scenario, &result.table)?)?;
    }
    if let Some(r) = &result.realizations {
        output::write(&output::sibling(&path, "realizations.csv"), &output::csv(&scenario, r)?)?;
    }
    if let Some(err) = result.table.column("abs_err") {
        eprintln!("max abs_err = {:e}", err.iter().copied().fold(0.0, f64::max));
    }
    let meta = Metadata {
        tool: "wgqed".into(),
        version: output::VERSION.into(),
        seed: scenario.seed,
        scenario,
        output: target,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&meta).map_err(|e| CliError::Config(e.to_string()))?;
    output::write(&output::sibling(&path, "meta.json"), &(text + "\n"))
}

fn main_inner(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let (mode, args) = match cli.command {
        Command::Rerun { meta, out } => {
            let meta = Metadata::load(&meta)?;
            let mut target = meta.output;
            if out.is_some() {
                target.path = out;
            }
            return execute(meta.scenario, target);
        }
        Command::Simulate(a) => (Some(Mode::Simulate), a),
        Command::Analytic(a) => (Some(Mode::Analytic), a),
        Command::Montecarlo(a) => (Some(Mode::Montecarlo), a),
        Command::Continuum(a) => (Some(Mode::Continuum), a),
        Command::Compare(a) => (Some(Mode::Compare), a),
        Command::Run(a) => (None, a),
    };
    let (scenario, target) = config::resolve(args.into_config(mode)?)?;
    execute(scenario, target)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wgqed: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
