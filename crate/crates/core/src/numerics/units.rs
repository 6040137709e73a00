use serde::Serialize;

use crate::error::{Error, Result};

/// Physical constants ħ, m, ω. Every formula in the crate is evaluated in the
/// dimensionless form ħ = m = ω = 1; this type converts into and out of it.
///
/// Lengths scale with `sqrt(ħ / mω)`, energies with `ħω` and times with `1/ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitScale {
    hbar: f64,
    mass: f64,
    omega: f64,
}

impl Default for UnitScale {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            omega: 1.0,
        }
    }
}

impl UnitScale {
    pub fn new(hbar: f64, mass: f64, omega: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(hbar) && ok(mass) && ok(omega) {
            Ok(Self { hbar, mass, omega })
        } else {
            Err(Error::InvalidUnitScale)
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Characteristic oscillator length `sqrt(ħ / mω)`.
    pub fn length(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    pub fn energy(&self) -> f64 {
        self.hbar * self.omega
    }

    pub fn to_dimensionless_q(&self, q: f64) -> f64 {
        q / self.length()
    }

    pub fn from_dimensionless_q(&self, x: f64) -> f64 {
        x * self.length()
    }

    pub fn to_dimensionless_t(&self, t: f64) -> f64 {
        t * self.omega
    }

    pub fn from_dimensionless_t(&self, tau: f64) -> f64 {
        tau / self.omega
    }

    pub fn to_dimensionless_energy(&self, e: f64) -> f64 {
        e / self.energy()
    }

    pub fn from_dimensionless_energy(&self, e: f64) -> f64 {
        e * self.energy()
    }
}
