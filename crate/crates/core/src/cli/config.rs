use std::path::PathBuf;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{free_eigen_mode, free_linear_mode, free_cubic_coefficient, make_fg_pair, ModeFamily, PLAIN_RANGE};
use crate::numerics::{Grid, UnitScale};
use crate::wedge::{make_wedge_pair, wedge_ground_mode, wedge_linear_mode};

/// Smallest accepted half-width of the working grid (dimensionless).
pub const MIN_GRID_EXTENT: f64 = 2.0;

/// Convention for `psiN` family names.
pub const STANDARD_CONVENTION: &str = "psiN = (H_N(q) / 2^N) exp(-q^2/2), leading coefficient dropped";

pub const DEFAULT_CUTOFFS: [f64; 4] = [3.0, 4.0, 5.0, 6.0];
pub const DEFAULT_TIMES: [f64; 3] = [0.0, 1.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    VerifyAll,
    Tabulate,
    Overlap,
    Evolve,
}

/// Validated settings shared by every subcommand. Lengths and times are in
/// the units given by `units`; they are reduced before evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub grid_extent: f64,
    pub grid_step: f64,
    pub cutoffs: Vec<f64>,
    pub times: Vec<f64>,
    pub tol: Option<f64>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub units: UnitScale,
    pub family: Option<String>,
    pub family_a: Option<String>,
    pub family_b: Option<String>,
    pub levels: usize,
    #[serde(serialize_with = "serialize_state")]
    pub state: Vec<Complex64>,
    pub standard_convention: &'static str,
}

fn serialize_state<S: serde::Serializer>(state: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(state.len()))?;
    for z in state {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            grid_extent: 4.0,
            grid_step: 1.0 / 256.0,
            cutoffs: DEFAULT_CUTOFFS.to_vec(),
            times: DEFAULT_TIMES.to_vec(),
            tol: None,
            format: Format::Json,
            out: None,
            units: UnitScale::default(),
            family: None,
            family_a: None,
            family_b: None,
            levels: 1,
            state: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            standard_convention: STANDARD_CONVENTION,
        }
    }

    /// Dimensionless half-width of the grid.
    pub fn extent(&self) -> f64 {
        self.units.to_dimensionless_q(self.grid_extent)
    }

    /// Dimensionless grid spacing.
    pub fn step(&self) -> f64 {
        self.units.to_dimensionless_q(self.grid_step)
    }

    pub fn dimensionless_times(&self) -> Vec<f64> {
        self.times.iter().map(|&t| self.units.to_dimensionless_t(t)).collect()
    }

    pub fn dimensionless_cutoffs(&self) -> Vec<f64> {
        self.cutoffs.iter().map(|&l| self.units.to_dimensionless_q(l)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return bad(format!("--tol must be positive, got {t}"));
            }
        }
        let extent = self.extent();
        if !(extent.is_finite() && extent >= MIN_GRID_EXTENT) {
            return bad(format!("grid extent {extent} (dimensionless) is below the minimum {MIN_GRID_EXTENT}"));
        }
        if extent > PLAIN_RANGE {
            return bad(format!("grid extent {extent} (dimensionless) exceeds {PLAIN_RANGE}"));
        }
        self.symmetric_grid()?;
        if self.times.iter().any(|t| !t.is_finite()) {
            return bad("times must be finite".into());
        }
        if self.cutoffs.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return bad("cutoffs must be positive".into());
        }
        if self.levels == 0 {
            return bad("--levels must be at least 1".into());
        }
        Ok(())
    }

    /// `[-extent, extent]` in dimensionless units.
    pub fn symmetric_grid(&self) -> Result<Grid> {
        Grid::symmetric(self.extent(), self.step()).map_err(|e| Error::Config(e.to_string()))
    }

    /// `[0, extent]` in dimensionless units, for wedge families.
    pub fn half_line_grid(&self) -> Result<Grid> {
        Grid::with_step(0.0, self.extent(), self.step()).map_err(|e| Error::Config(e.to_string()))
    }

    /// Resolve a family name. `psiN` uses [`STANDARD_CONVENTION`].
    pub fn family(&self, name: &str) -> Result<ModeFamily> {
        let level = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix).and_then(|n| n.parse().ok()) };
        if let Some(n) = level("psi") {
            return Ok(ModeFamily::standard_monic(n));
        }
        if let Some(n) = level("fbar") {
            return Ok(ModeFamily::fbar(n));
        }
        if let Some(n) = level("linear") {
            let pair = make_fg_pair(n, &self.symmetric_grid()?)?;
            return Ok(ModeFamily::linear(Arc::new(pair)));
        }
        match name {
            "negative" => Ok(ModeFamily::negative_energy()),
            "free-eigen" => Ok(free_eigen_mode(&self.units)),
            "free-linear" => Ok(free_linear_mode(&self.units, free_cubic_coefficient(&self.units))),
            "wedge-psi0hat" => Ok(wedge_ground_mode()),
            "wedge-linear" => Ok(wedge_linear_mode(Arc::new(make_wedge_pair(&self.half_line_grid()?)?))),
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }
}

/// Whether a family name lives on the half-line `r ≥ 0`.
pub fn is_wedge_family(name: &str) -> bool {
    name.starts_with("wedge-")
}

/// Whether a family name refers to the free particle, whose coordinate is physical.
pub fn is_free_family(name: &str) -> bool {
    name.starts_with("free-")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::new(CommandKind::VerifyAll).validate().unwrap();
    }

    #[test]
    fn small_extent_rejected() {
        let mut c = RunConfig::new(CommandKind::VerifyAll);
        c.grid_extent = 0.5;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn family_names() {
        let c = RunConfig::new(CommandKind::Tabulate);
        assert!(c.family("psi3").is_ok());
        assert!(c.family("fbar0").is_ok());
        assert!(c.family("wedge-psi0hat").is_ok());
        assert!(matches!(c.family("phi2"), Err(Error::UnknownFamily(_))));
        let psi1 = c.family("psi1").unwrap();
        assert!((psi1.value(2.0, 0.0).re - 2.0 * (-2.0f64).exp()).abs() < 1e-16);
    }
}
