//! CSV, JSON and metadata writers.
//!
//! Data files hold only what the resolved scenario determines, so a rerun
//! reproduces them byte for byte. Wall time and output paths live in the
//! metadata sidecar.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{OutputTarget, Scenario};
use crate::run::Table;
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn describe(column: &str) -> &'static str {
    match column {
        "gamma_t" => "time in units of 1/gamma",
        "kappa_t" => "time in units of 1/kappa, kappa = N gamma",
        "p_w" => "bright-state population",
        "p_w_stderr" => "standard error of the mean p_w",
        "p_d" => "dark-state population",
        "p_exc" => "total excited-state population",
        "p_w_numeric" => "bright-state population from H_eff evolution",
        "p_w_analytic" => "bright-state population from the closed form",
        "abs_err" => "|p_w_numeric - p_w_analytic|",
        c if c.starts_with("p_w_") => "bright-state population of one realization",
        _ => "",
    }
}

/// Shortest round-trip representation, in exponent form for very small or
/// large magnitudes.
pub fn number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

/// CSV text with a `#` comment header carrying the resolved scenario.
pub fn csv(scenario: &Scenario, table: &Table) -> Result<String, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "# wgqed {VERSION} {}", scenario.mode.name());
    let config = toml::to_string(scenario).map_err(|e| CliError::Config(e.to_string()))?;
    for line in config.lines().filter(|l| !l.is_empty()) {
        let _ = writeln!(out, "#   {line}");
    }
    for (name, _) in &table.columns {
        let _ = writeln!(out, "# column {name}: {}", describe(name));
    }
    let names: Vec<&str> = table.columns.iter().map(|(n, _)| n.as_str()).collect();
    let _ = writeln!(out, "{}", names.join(","));
    for row in 0..table.rows() {
        let cells: Vec<String> = table.columns.iter().map(|(_, v)| number(v[row])).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    Ok(out)
}

#[derive(Serialize)]
struct JsonTable<'a> {
    tool: &'static str,
    version: &'static str,
    scenario: &'a Scenario,
    columns: Vec<&'a str>,
    data: serde_json::Map<String, serde_json::Value>,
}

pub fn json(scenario: &Scenario, table: &Table) -> Result<String, CliError> {
    let mut data = serde_json::Map::new();
    for (name, values) in &table.columns {
        data.insert(name.clone(), serde_json::json!(values));
    }
    let doc = JsonTable {
        tool: "wgqed",
        version: VERSION,
        scenario,
        columns: table.columns.iter().map(|(n, _)| n.as_str()).collect(),
        data,
    };
    serde_json::to_string_pretty(&doc).map(|s| s + "\n").map_err(|e| CliError::Config(e.to_string()))
}

/// Sidecar written next to every data file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub scenario: Scenario,
    pub output: OutputTarget,
    pub seed: u64,
    pub wall_time_seconds: f64,
}

impl Metadata {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// `data.csv` → `data.csv.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0, 0.1 + 0.2, 4.440892098500626e-16, -3.5e-7, 2.5e20, f64::MIN_POSITIVE] {
            assert_eq!(number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(number(4.440892098500626e-16), "4.440892098500626e-16");
        assert_eq!(number(0.25), "0.25");
    }

    #[test]
    fn sibling_appends() {
        assert_eq!(sibling(Path::new("out/a.csv"), "meta.json"), PathBuf::from("out/a.csv.meta.json"));
    }
}
