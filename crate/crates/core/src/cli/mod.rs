//! Command-line front end: `verify-all`, `tabulate`, `overlap`, `evolve`.
//!
//! Exit codes: 0 success, 1 a check or computation failed, 2 usage or
//! configuration error.

mod commands;
mod config;
mod report;
mod suite;

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use commands::{evolve, overlap, tabulate, verify_all, Output};
pub use config::{
    is_free_family, is_wedge_family, CommandKind, Format, RunConfig, DEFAULT_CUTOFFS, DEFAULT_TIMES,
    MIN_GRID_EXTENT, STANDARD_CONVENTION,
};
pub use report::{fmt_float, Bound, CheckRecord, Comparison, Report, REPORT_VERSION};
pub use suite::{run_suite, LITERAL_ENVELOPE_SLACK, LOG_RATIO_BOUND, RESIDUAL_BOUND, STATE_SEED};

use crate::error::Error;
use crate::numerics::UnitScale;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sho-verify", version, about = "Oscillator mode checks, tables, overlaps and Jordan-block evolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check and write a report.
    VerifyAll {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sample one mode family over the grid and times.
    Tabulate {
        #[command(flatten)]
        common: CommonArgs,
        /// psiN, fbarN, negative, linearN, free-eigen, free-linear, wedge-psi0hat, wedge-linear
        #[arg(long)]
        family: String,
    },
    /// Truncated overlaps of two families and their growth law.
    Overlap {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        family_a: String,
        #[arg(long)]
        family_b: String,
    },
    /// Evolve a state under the block-diagonal Jordan Hamiltonian.
    Evolve {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Comma-separated complex components, e.g. `0,1` or `1+2i,0.5`.
        #[arg(long, value_delimiter = ',', value_parser = parse_complex)]
        state: Option<Vec<Complex64>>,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Half-width of the symmetric grid, in length units.
    #[arg(long, default_value_t = 4.0)]
    pub grid_extent: f64,
    /// Grid spacing, decimal or fraction such as `1/256`.
    #[arg(long, default_value = "1/256", value_parser = parse_fraction)]
    pub grid_step: f64,
    #[arg(long, value_delimiter = ',')]
    pub cutoffs: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub times: Option<Vec<f64>>,
    /// Replaces the default bound of every residual check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => Ok(parse(n)? / parse(d)?),
        None => parse(s),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    Complex64::from_str(s.trim()).map_err(|e| format!("{s:?}: {e}"))
}

impl CommonArgs {
    fn apply(&self, c: &mut RunConfig) -> Result<(), Error> {
        c.grid_extent = self.grid_extent;
        c.grid_step = self.grid_step;
        if let Some(v) = &self.cutoffs {
            c.cutoffs = v.clone();
        }
        if let Some(v) = &self.times {
            c.times = v.clone();
        }
        c.tol = self.tol;
        c.format = self.format;
        c.out = self.out.clone();
        c.units = UnitScale::new(self.hbar, self.mass, self.omega)?;
        Ok(())
    }
}

impl Command {
    /// Build and validate the run configuration.
    pub fn config(&self) -> Result<RunConfig, Error> {
        let mut c;
        match self {
            Command::VerifyAll { common } => {
                c = RunConfig::new(CommandKind::VerifyAll);
                common.apply(&mut c)?;
            }
            Command::Tabulate { common, family } => {
                c = RunConfig::new(CommandKind::Tabulate);
                common.apply(&mut c)?;
                c.family = Some(family.clone());
            }
            Command::Overlap {
                common,
                family_a,
                family_b,
            } => {
                c = RunConfig::new(CommandKind::Overlap);
                common.apply(&mut c)?;
                c.family_a = Some(family_a.clone());
                c.family_b = Some(family_b.clone());
            }
            Command::Evolve { common, levels, state } => {
                c = RunConfig::new(CommandKind::Evolve);
                common.apply(&mut c)?;
                c.levels = *levels;
                c.state = match state {
                    Some(s) => s.clone(),
                    None => (0..*levels)
                        .flat_map(|_| [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
                        .collect(),
                };
            }
        }
        c.validate()?;
        Ok(c)
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let config = match cli.command.config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match config.command {
        CommandKind::VerifyAll => verify_all(&config),
        CommandKind::Tabulate => tabulate(&config),
        CommandKind::Overlap => overlap(&config),
        CommandKind::Evolve => evolve(&config),
    };
    match result {
        Ok(out) => match out.write(config.out.as_deref()) {
            Ok(()) => {
                if !out.pass {
                    for id in &out.failing {
                        eprintln!("failed: {id}");
                    }
                }
                if out.pass {
                    EXIT_PASS
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAIL
            }
        },
        Err(e @ (Error::Config(_) | Error::UnknownFamily(_) | Error::DimensionMismatch { .. } | Error::BadCutoffs { .. })) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_parser() {
        assert_eq!(parse_fraction("1/256").unwrap(), 1.0 / 256.0);
        assert_eq!(parse_fraction("0.5").unwrap(), 0.5);
        assert!(parse_fraction("a/2").is_err());
    }

    #[test]
    fn complex_parser() {
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("0").unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn config_errors_are_usage() {
        assert_eq!(run(["sho-verify", "verify-all", "--grid-extent", "0.5"]), EXIT_USAGE);
        assert_eq!(run(["sho-verify", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["sho-verify", "tabulate", "--family", "nope"]), EXIT_USAGE);
    }

    fn run_to(args: &[&str], dir: &tempfile::TempDir, name: &str) -> (i32, String) {
        let path = dir.path().join(name);
        let mut full = vec!["sho-verify"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path.to_str().unwrap()]);
        let code = run(full);
        (code, std::fs::read_to_string(&path).unwrap_or_default())
    }

    #[test]
    fn verify_all_is_deterministic_and_passes() {
        let dir = tempfile::tempdir().unwrap();
        let (c1, a) = run_to(&["verify-all"], &dir, "a.json");
        let (c2, b) = run_to(&["verify-all"], &dir, "b.json");
        assert_eq!((c1, c2), (EXIT_PASS, EXIT_PASS));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        let anchors: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["paper_anchor"].as_str().unwrap()).collect();
        for n in 1..=11 {
            assert!(anchors.contains(&format!("(1.{n})").as_str()), "(1.{n})");
        }
        for a in ["(2.4)", "(2.6)", "(2.7)", "(3.3)", "(3.5)", "(3.6)", "(4.1)", "(4.2)", "(4.3)", "(4.4)", "(4.5)", "(4.7)"] {
            assert!(anchors.contains(&a), "{a}");
        }
    }

    #[test]
    fn tight_tolerance_fails_residuals() {
        let dir = tempfile::tempdir().unwrap();
        let (code, out) = run_to(&["verify-all", "--tol", "1e-15", "--format", "csv"], &dir, "r.csv");
        assert_eq!(code, EXIT_FAIL);
        assert!(out.lines().any(|l| l.starts_with("eq01.02.standard_n0.residual,") && l.contains(",false,false,")));
    }

    #[test]
    fn overlap_reproduces_linear_growth() {
        let dir = tempfile::tempdir().unwrap();
        let (code, out) = run_to(&["overlap", "--family-a", "psi1", "--family-b", "fbar0"], &dir, "o.json");
        assert_eq!(code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["classification"], "linear");
        assert!((v["report"]["fit_slope"].as_f64().unwrap() - 1.0).abs() < 0.01);
    }

    #[test]
    fn evolve_dimension_mismatch_is_usage() {
        assert_eq!(run(["sho-verify", "evolve", "--levels", "2", "--state", "0,1"]), EXIT_USAGE);
    }
}

