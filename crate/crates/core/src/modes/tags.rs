use std::fmt;

use serde::Serialize;

/// Which solution family a mode belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SectorTag {
    /// Normalizable Hermite mode at level `n`.
    Standard(usize),
    /// `e^{+q²/2}` with energy `-1/2`.
    NegativeEnergy,
    /// Non-normalizable partner of `Standard(n)`.
    FBar(usize),
    /// `e^{-iE_n t} e^{-q²/2} (f t + i g)` at level `n`.
    LinearInTime(usize),
    FreeZeroEnergyEigen,
    FreeZeroEnergyLinear,
    /// `e^{r²/2} G(r)` under the rotated Hamiltonian.
    WedgeGround,
    /// Linear-in-time mode under the rotated Hamiltonian.
    WedgeLinear,
}

impl fmt::Display for SectorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Standard(n) => write!(f, "Standard({n})"),
            Self::NegativeEnergy => write!(f, "NegativeEnergy"),
            Self::FBar(n) => write!(f, "FBar({n})"),
            Self::LinearInTime(n) => write!(f, "LinearInTime({n})"),
            Self::FreeZeroEnergyEigen => write!(f, "FreeZeroEnergyEigen"),
            Self::FreeZeroEnergyLinear => write!(f, "FreeZeroEnergyLinear"),
            Self::WedgeGround => write!(f, "WedgeGround"),
            Self::WedgeLinear => write!(f, "WedgeLinear"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    /// `(-1)^n`.
    pub fn of_level(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Self::Even
        } else {
            Self::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Self::Even => Self::Odd,
            Self::Odd => Self::Even,
            Self::None => Self::None,
        }
    }

    /// `ψ(-q) = sign · ψ(q)`.
    pub fn sign(self) -> Option<f64> {
        match self {
            Self::Even => Some(1.0),
            Self::Odd => Some(-1.0),
            Self::None => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Even => "even",
            Self::Odd => "odd",
            Self::None => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Energy {
    Eigen(f64),
    NotEigenstate,
}

impl Energy {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Eigen(e) => Some(e),
            Self::NotEigenstate => None,
        }
    }
}

/// The operator a mode evolves under, in dimensionless form:
/// `H = kinetic · ∂² + potential(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Hamiltonian {
    /// `-½∂² + q²/2`.
    Oscillator,
    /// `-(-½∂² + r²/2)`, the oscillator after `q → -ir`.
    RotatedOscillator,
    /// `-(ħ²/2m)∂²`, in physical units.
    Free { hbar: f64, mass: f64 },
}

impl Hamiltonian {
    pub fn kinetic(&self) -> f64 {
        match *self {
            Self::Oscillator => -0.5,
            Self::RotatedOscillator => 0.5,
            Self::Free { hbar, mass } => -hbar * hbar / (2.0 * mass),
        }
    }

    pub fn potential(&self, q: f64) -> f64 {
        match self {
            Self::Oscillator => 0.5 * q * q,
            Self::RotatedOscillator => -0.5 * q * q,
            Self::Free { .. } => 0.0,
        }
    }

    pub fn hbar(&self) -> f64 {
        match *self {
            Self::Free { hbar, .. } => hbar,
            _ => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_bookkeeping() {
        assert_eq!(Parity::of_level(3), Parity::Odd);
        assert_eq!(Parity::Odd.flip(), Parity::Even);
        assert_eq!(Parity::None.flip(), Parity::None);
        assert_eq!(Parity::Even.sign(), Some(1.0));
    }

    #[test]
    fn display_names() {
        assert_eq!(SectorTag::FBar(2).to_string(), "FBar(2)");
        assert_eq!(Parity::Odd.to_string(), "odd");
    }
}
