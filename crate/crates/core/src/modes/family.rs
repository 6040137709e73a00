use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::modes::tags::{Energy, Hamiltonian, Parity, SectorTag};
use crate::numerics::{LogScaledReal, ScaledComplex};

type Spatial = Arc<dyn Fn(f64) -> LogScaledReal + Send + Sync>;
type Evolving = Arc<dyn Fn(f64, f64) -> (ScaledComplex, ScaledComplex) + Send + Sync>;

#[derive(Clone)]
enum Profile {
    Stationary(Spatial),
    Evolving(Evolving),
}

/// An evaluable solution `ψ(q, t)` with its bookkeeping labels.
///
/// Stationary families store the real profile `u(q)` and evolve it by the
/// phase `e^{-iEt/ħ}`. Evolving families supply the value and its analytic
/// time derivative together.
#[derive(Clone)]
pub struct ModeFamily {
    sector: SectorTag,
    energy: Energy,
    parity: Parity,
    hamiltonian: Hamiltonian,
    factor: f64,
    profile: Profile,
}

impl fmt::Debug for ModeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModeFamily")
            .field("sector", &self.sector)
            .field("energy", &self.energy)
            .field("parity", &self.parity)
            .field("hamiltonian", &self.hamiltonian)
            .field("factor", &self.factor)
            .finish()
    }
}

impl ModeFamily {
    /// An energy eigenstate with real spatial profile `u`.
    pub fn stationary<F>(sector: SectorTag, energy: f64, parity: Parity, hamiltonian: Hamiltonian, u: F) -> Self
    where
        F: Fn(f64) -> LogScaledReal + Send + Sync + 'static,
    {
        Self {
            sector,
            energy: Energy::Eigen(energy),
            parity,
            hamiltonian,
            factor: 1.0,
            profile: Profile::Stationary(Arc::new(u)),
        }
    }

    /// A non-eigenstate; `eval(q, t)` returns `(ψ, ∂ψ/∂t)`.
    pub fn evolving<F>(sector: SectorTag, parity: Parity, hamiltonian: Hamiltonian, eval: F) -> Self
    where
        F: Fn(f64, f64) -> (ScaledComplex, ScaledComplex) + Send + Sync + 'static,
    {
        Self {
            sector,
            energy: Energy::NotEigenstate,
            parity,
            hamiltonian,
            factor: 1.0,
            profile: Profile::Evolving(Arc::new(eval)),
        }
    }

    /// The same family multiplied by a constant.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.factor *= factor;
        self
    }

    pub fn sector(&self) -> SectorTag {
        self.sector
    }

    pub fn energy(&self) -> Energy {
        self.energy
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn hamiltonian(&self) -> Hamiltonian {
        self.hamiltonian
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn is_eigenstate(&self) -> bool {
        matches!(self.energy, Energy::Eigen(_))
    }

    /// Time-independent profile of an eigenstate.
    pub fn spatial(&self, q: f64) -> Option<LogScaledReal> {
        match &self.profile {
            Profile::Stationary(u) => Some(u(q).mul_f64(self.factor)),
            Profile::Evolving(_) => None,
        }
    }

    /// `(ψ(q,t), ∂ψ/∂t)` in scaled form.
    pub fn eval_scaled(&self, q: f64, t: f64) -> (ScaledComplex, ScaledComplex) {
        match &self.profile {
            Profile::Stationary(u) => {
                let e = self.energy.value().unwrap_or(0.0);
                let phase = Complex64::from_polar(1.0, -e * t / self.hamiltonian.hbar());
                let v = ScaledComplex::from_real(u(q)).scale_by(phase * self.factor);
                let dt = v.scale_by(Complex64::new(0.0, -e / self.hamiltonian.hbar()));
                (v, dt)
            }
            Profile::Evolving(f) => {
                let (v, dt) = f(q, t);
                let k = Complex64::new(self.factor, 0.0);
                (v.scale_by(k), dt.scale_by(k))
            }
        }
    }

    pub fn value_scaled(&self, q: f64, t: f64) -> ScaledComplex {
        self.eval_scaled(q, t).0
    }

    /// Plain complex value; overflows for very large growing tails.
    pub fn value(&self, q: f64, t: f64) -> Complex64 {
        self.value_scaled(q, t).to_complex()
    }

    pub fn time_derivative(&self, q: f64, t: f64) -> Complex64 {
        self.eval_scaled(q, t).1.to_complex()
    }
}
