use std::path::Path;

use serde::Serialize;

use super::config::{is_free_family, is_wedge_family, RunConfig};
use super::config::Format;
use super::report::{fmt_float, to_csv, to_json, Report, REPORT_VERSION};
use super::suite::run_suite;
use crate::error::{Error, Result};
use crate::jordan::assemble;
use crate::verify::{classify_divergence, DivergenceReport};

/// Rendered command output and whether the run passed.
#[derive(Debug, Clone)]
pub struct Output {
    pub content: String,
    pub pass: bool,
    pub failing: Vec<String>,
}

impl Output {
    fn ok(content: String) -> Self {
        Self {
            content,
            pass: true,
            failing: Vec::new(),
        }
    }

    /// Write to `path`, or to stdout when absent.
    pub fn write(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => std::fs::write(p, &self.content).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
            None => {
                print!("{}", self.content);
                Ok(())
            }
        }
    }
}

pub fn verify_all(config: &RunConfig) -> Result<Output> {
    let report = Report::new(config, run_suite(config));
    let content = match config.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    Ok(Output {
        content,
        pass: report.all_pass(),
        failing: report.records.iter().filter(|r| r.fails()).map(|r| r.check_id.clone()).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
struct Sample {
    q: f64,
    t: f64,
    re: f64,
    im: f64,
    /// Sign of `Re ψ`, or of `Im ψ` where the real part vanishes.
    sign: i8,
    logmag: f64,
}

#[derive(Serialize)]
struct Table<'a> {
    version: &'static str,
    config_echo: &'a RunConfig,
    family: &'a str,
    sector: String,
    rows: Vec<Sample>,
}

fn signum(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

pub fn tabulate(config: &RunConfig) -> Result<Output> {
    let name = config.family.as_deref().ok_or_else(|| Error::Config("--family is required".into()))?;
    let family = config.family(name)?;
    let grid = if is_wedge_family(name) {
        config.half_line_grid()?
    } else {
        config.symmetric_grid()?
    };
    let units = &config.units;
    let mut rows = Vec::with_capacity(grid.len() * config.times.len());
    for &t in &config.times {
        for &q in grid.points() {
            let x = units.from_dimensionless_q(q);
            let v = if is_free_family(name) {
                family.value_scaled(x, t)
            } else {
                family.value_scaled(q, units.to_dimensionless_t(t))
            };
            let z = v.to_complex();
            let sign = match signum(v.mantissa.re) {
                0 => signum(v.mantissa.im),
                s => s,
            };
            rows.push(Sample {
                q: x,
                t,
                re: z.re,
                im: z.im,
                sign,
                logmag: v.log_abs(),
            });
        }
    }
    let content = match config.format {
        Format::Json => to_json(&Table {
            version: REPORT_VERSION,
            config_echo: config,
            family: name,
            sector: family.sector().to_string(),
            rows,
        })?,
        Format::Csv => to_csv(
            &["q", "t", "re", "im", "sign", "logmag"],
            rows.iter().map(|r| {
                vec![
                    fmt_float(r.q),
                    fmt_float(r.t),
                    fmt_float(r.re),
                    fmt_float(r.im),
                    r.sign.to_string(),
                    fmt_float(r.logmag),
                ]
            }),
        )?,
    };
    Ok(Output::ok(content))
}

#[derive(Serialize)]
struct OverlapFile<'a> {
    version: &'static str,
    config_echo: &'a RunConfig,
    family_a: &'a str,
    family_b: &'a str,
    report: DivergenceReport,
}

pub fn overlap(config: &RunConfig) -> Result<Output> {
    let names = [config.family_a.as_deref(), config.family_b.as_deref()];
    let [Some(a), Some(b)] = names else {
        return Err(Error::Config("--family-a and --family-b are required".into()));
    };
    let cutoffs = config.dimensionless_cutoffs();
    for name in [a, b] {
        if is_wedge_family(name) {
            return Err(Error::Config(format!("{name} lives on the half-line; overlaps use [-L, L]")));
        }
        let max = cutoffs.iter().fold(0.0f64, |m, l| m.max(*l));
        if name.starts_with("linear") && max > config.extent() {
            return Err(Error::Config(format!("cutoff {max} exceeds the grid extent {} of {name}", config.extent())));
        }
    }
    let report = classify_divergence(&config.family(a)?, &config.family(b)?, &cutoffs)?;
    let content = match config.format {
        Format::Json => to_json(&OverlapFile {
            version: REPORT_VERSION,
            config_echo: config,
            family_a: a,
            family_b: b,
            report,
        })?,
        Format::Csv => to_csv(
            &["cutoff", "value", "classification", "fit_slope", "fit_residual"],
            report.cutoffs.iter().zip(&report.values).map(|(l, v)| {
                vec![
                    fmt_float(*l),
                    fmt_float(*v),
                    report.classification.name().to_string(),
                    fmt_float(report.fit_slope),
                    fmt_float(report.fit_residual),
                ]
            }),
        )?,
    };
    Ok(Output::ok(content))
}

#[derive(Serialize)]
struct EvolveRow {
    t: f64,
    state: Vec<[f64; 2]>,
    v_norm: f64,
}

#[derive(Serialize)]
struct Trajectory<'a> {
    version: &'static str,
    config_echo: &'a RunConfig,
    rows: Vec<EvolveRow>,
}

pub fn evolve(config: &RunConfig) -> Result<Output> {
    let h = assemble(config.levels)?;
    let mut rows = Vec::with_capacity(config.times.len());
    for &t in &config.times {
        let state = h.evolve(&config.state, config.units.to_dimensionless_t(t))?;
        rows.push(EvolveRow {
            t,
            v_norm: h.v_norm(&state)?,
            state: state.iter().map(|z| [z.re, z.im]).collect(),
        });
    }
    let content = match config.format {
        Format::Json => to_json(&Trajectory {
            version: REPORT_VERSION,
            config_echo: config,
            rows,
        })?,
        Format::Csv => {
            let mut header = vec!["t".to_string()];
            for k in 0..h.dim() {
                header.push(format!("c{k}_re"));
                header.push(format!("c{k}_im"));
            }
            header.push("v_norm".into());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            to_csv(
                &header,
                rows.iter().map(|r| {
                    let mut row = vec![fmt_float(r.t)];
                    for [re, im] in &r.state {
                        row.push(fmt_float(*re));
                        row.push(fmt_float(*im));
                    }
                    row.push(fmt_float(r.v_norm));
                    row
                }),
            )?
        }
    };
    Ok(Output::ok(content))
}
