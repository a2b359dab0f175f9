//! `bloch-lab` command line.
//!
//! Exit codes: 0 on success, 2 when a certification campaign records a
//! violation, 1 on usage or runtime errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::constants;
use crate::error::{Error, Result};
use crate::harmonic::{HarmonicMap, MapSpec};
use crate::seminorms::{bloch_type_seminorm, harmonic_bloch_seminorm, SupConfig, SupEstimate};
use crate::verify::campaign::write_csv;
use crate::verify::{
    non_lipschitz_witness, run_campaign, sharpness_search, CampaignConfig, CampaignKind, SharpnessConfig,
    SharpnessKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

const DEFAULT_TRIALS: usize = 1000;
const DEFAULT_BUDGET: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "bloch-lab", version, about = "Harmonic Bloch seminorms and Lipschitz certification on the unit disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Print the certified constants and how they relate.
    Constants,
    /// Estimate the seminorms of a map given by --map.
    Seminorm,
    /// Run a certification campaign.
    Verify,
    /// Search for the largest quotient (--trials is the evaluation budget).
    Sharpness,
    /// Difference quotients of log(1 − z²) near the boundary.
    Witness,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Campaign kind: theorem_a, theorem1, theorem2, lemma21, lemma22, lemma23.
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// JSON map file, or the literal `log_fixture`.
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// Dilatation bound k in (0, 1) for quasiregular campaigns.
    #[arg(long, global = true)]
    pub k: Option<f64>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, global = true, env = "BLOCH_LAB_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true)]
    pub grid_radial: Option<usize>,
    #[arg(long, global = true)]
    pub grid_angular: Option<usize>,
    /// Multiply every campaign bound (testing the violation path).
    #[arg(long, global = true, default_value_t = 1.0)]
    pub bound_scale: f64,
    /// Include wall-clock runtime in reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Common {
    fn sup(&self) -> Result<SupConfig> {
        let mut sup = SupConfig::default();
        if let Some(n) = self.grid_radial {
            sup.n_radial = n;
        }
        if let Some(n) = self.grid_angular {
            sup.n_angular = n;
        }
        sup.validate()?;
        Ok(sup)
    }

    fn trials(&self, default: usize) -> Result<usize> {
        match self.trials {
            Some(0) => Err(Error::Config("--trials must be at least 1".into())),
            Some(n) => Ok(n),
            None => Ok(default),
        }
    }
}

enum Rendered {
    Json(String),
    Csv(Vec<u8>),
}

struct Outcome {
    body: Rendered,
    violation: bool,
}

fn json<T: Serialize>(value: &T) -> Result<Rendered> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(Rendered::Json(text))
}

fn load_map(arg: &str) -> Result<HarmonicMap> {
    if arg.trim() == "log_fixture" {
        return Ok(MapSpec::parse(arg)?.into());
    }
    let text = fs::read_to_string(arg)?;
    Ok(MapSpec::parse(&text).map_err(|e| Error::MapSpec(format!("{arg}: {e}")))?.into())
}

#[derive(Serialize)]
struct ConstantsOutput {
    c1: f64,
    r_star: f64,
    c2: f64,
    c3: f64,
    c3_tight: f64,
    theorem_a_constant: f64,
    relations: [&'static str; 5],
}

fn constants_output() -> ConstantsOutput {
    let c = constants();
    ConstantsOutput {
        c1: c.c1,
        r_star: c.r_star,
        c2: c.c2,
        c3: c.c3,
        c3_tight: c.c3_tight,
        theorem_a_constant: c.theorem_a_constant,
        relations: [
            "c1 = min over 0 < r < 1 of (1 + r^2/9) / (r (1 - r^2))",
            "r_star^4 + 28 r_star^2 - 9 = 0",
            "c2 = 2 c1 + 1/3",
            "c3 = c1 + 1",
            "c3_tight = c1 + 1/6",
        ],
    }
}

#[derive(Serialize)]
struct SeminormOutput {
    /// Harmonic Bloch seminorm `sup (1 − |z|²)Λ_f`.
    value: f64,
    /// `|f(0)| + value`
    norm: f64,
    estimate: SupEstimate,
    bloch_type: Option<SupEstimate>,
    h: SupEstimate,
    g: SupEstimate,
}

fn seminorm(common: &Common) -> Result<Rendered> {
    let map = load_map(common.map.as_deref().ok_or_else(|| Error::Config("seminorm requires --map".into()))?)?;
    let sup = common.sup()?;
    let estimate = harmonic_bloch_seminorm(&map, &sup)?;
    let h = crate::seminorms::bloch_seminorm(&map.h, &sup)?;
    let g = crate::seminorms::bloch_seminorm(&map.g, &sup)?;
    json(&SeminormOutput {
        value: estimate.value,
        norm: map.eval(num_complex::Complex64::new(0.0, 0.0)).norm() + estimate.value,
        estimate,
        bloch_type: bloch_type_seminorm(&map, &sup).ok(),
        h,
        g,
    })
}

fn verify(common: &Common) -> Result<Outcome> {
    let kind: CampaignKind = common.kind.as_deref().unwrap_or("theorem1").parse()?;
    let mut cfg = CampaignConfig::new(kind, common.seed, common.trials(DEFAULT_TRIALS)?).with_sup(common.sup()?);
    cfg.dilatation = common.k;
    cfg.bound_scale = common.bound_scale;
    let report = run_campaign(&cfg)?;
    let report = if common.timing { report } else { report.without_timing() };
    let body = match common.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&report.records, &mut buf)?;
            Rendered::Csv(buf)
        }
    };
    Ok(Outcome {
        body,
        violation: report.has_violations(),
    })
}

fn sharpness(common: &Common) -> Result<Rendered> {
    let kind: SharpnessKind = common.kind.as_deref().unwrap_or("theorem1").parse()?;
    let mut cfg = SharpnessConfig::new(kind, common.seed, common.trials(DEFAULT_BUDGET)?);
    cfg.sup = common.sup()?;
    let report = sharpness_search(&cfg)?;
    let report = if common.timing { report } else { report.without_timing() };
    match common.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            Ok(Rendered::Csv(buf))
        }
    }
}

#[derive(Serialize)]
struct WitnessRow {
    x: f64,
    t: f64,
    quotient: f64,
    reference: f64,
}

fn witness() -> Result<Rendered> {
    let rows = [0.9, 0.99, 0.999, 0.9999]
        .into_iter()
        .map(|x| {
            let t = (1.0 - x) / 100.0;
            let (quotient, reference) = non_lipschitz_witness(x, t)?;
            Ok(WitnessRow { x, t, quotient, reference })
        })
        .collect::<Result<Vec<_>>>()?;
    json(&rows)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    if common.format == Format::Csv && !matches!(cli.command, Command::Verify | Command::Sharpness) {
        return Err(Error::Config("--format csv is only available for verify and sharpness".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        let plain = |body: Result<Rendered>| body.map(|body| Outcome { body, violation: false });
        match cli.command {
            Command::Constants => plain(json(&constants_output())),
            Command::Seminorm => plain(seminorm(common)),
            Command::Verify => verify(common),
            Command::Sharpness => plain(sharpness(common)),
            Command::Witness => plain(witness()),
        }
    })
}

fn emit(body: &Rendered, output: Option<&PathBuf>) -> Result<()> {
    let bytes = match body {
        Rendered::Json(s) => s.as_bytes(),
        Rendered::Csv(b) => b.as_slice(),
    };
    match output {
        Some(path) => fs::write(path, bytes)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|outcome| {
        emit(&outcome.body, cli.common.output.as_ref())?;
        Ok(outcome.violation)
    }) {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_VIOLATION,
        Err(e) => {
            eprintln!("bloch-lab: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_grammar() {
        let cli = Cli::try_parse_from([
            "bloch-lab", "verify", "--kind", "theorem2", "--k", "0.5", "--trials", "10", "--seed", "3",
            "--threads", "2", "--grid-radial", "16", "--grid-angular", "32", "--format", "csv",
        ])
        .unwrap();
        assert_eq!(cli.command, Command::Verify);
        assert_eq!(cli.common.k, Some(0.5));
        assert_eq!(cli.common.format, Format::Csv);
        let sup = cli.common.sup().unwrap();
        assert_eq!((sup.n_radial, sup.n_angular), (16, 32));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["bloch-lab", "frobnicate"]), EXIT_ERROR);
        assert_eq!(run(["bloch-lab", "verify", "--trials", "0"]), EXIT_ERROR);
        assert_eq!(run(["bloch-lab", "constants", "--format", "csv"]), EXIT_ERROR);
        assert_eq!(run(["bloch-lab", "verify", "--kind", "theorem9"]), EXIT_ERROR);
        assert_eq!(run(["bloch-lab", "seminorm"]), EXIT_ERROR);
        assert_eq!(run(["bloch-lab", "seminorm", "--grid-radial", "2", "--map", "log_fixture"]), EXIT_ERROR);
    }

    #[test]
    fn constants_output_carries_relations() {
        let out = constants_output();
        assert!((out.c2 - 5.7174).abs() < 2e-3);
        assert_eq!(out.relations.len(), 5);
    }
}
