use num_complex::Complex64;

use crate::modes::family::ModeFamily;
use crate::modes::tags::{Hamiltonian, Parity, SectorTag};
use crate::numerics::{LogScaledReal, ScaledComplex, UnitScale};

/// The cubic coefficient as printed in the literature, `1/6`. It solves the
/// free equation only when `m/ħ = 1/2`.
pub const PRINTED_FREE_CUBIC_COEFFICIENT: f64 = 1.0 / 6.0;

/// Coefficient `c` that makes `t x - i c x³` solve `iħ∂ₜψ = -(ħ²/2m)∂²ψ`:
/// `c = m / 3ħ`.
pub fn free_cubic_coefficient(units: &UnitScale) -> f64 {
    units.mass() / (3.0 * units.hbar())
}

fn free_hamiltonian(units: &UnitScale) -> Hamiltonian {
    Hamiltonian::Free {
        hbar: units.hbar(),
        mass: units.mass(),
    }
}

/// `ψ = x` at zero energy.
pub fn free_eigen_mode(units: &UnitScale) -> ModeFamily {
    ModeFamily::stationary(SectorTag::FreeZeroEnergyEigen, 0.0, Parity::Odd, free_hamiltonian(units), LogScaledReal::from_f64)
}

/// `ψ(x, t) = t x - i c x³` for an arbitrary coefficient `c`.
pub fn free_linear_mode(units: &UnitScale, c: f64) -> ModeFamily {
    ModeFamily::evolving(SectorTag::FreeZeroEnergyLinear, Parity::Odd, free_hamiltonian(units), move |x, t| {
        let v = Complex64::new(t * x, -c * x * x * x);
        (ScaledComplex::from_complex(v), ScaledComplex::from_complex(Complex64::new(x, 0.0)))
    })
}

/// The zero-energy eigenmode and its linear-in-time companion with the
/// coefficient fixed by [`free_cubic_coefficient`].
pub fn free_zero_energy_modes(units: &UnitScale) -> (ModeFamily, ModeFamily) {
    (free_eigen_mode(units), free_linear_mode(units, free_cubic_coefficient(units)))
}

/// Pointwise `iħ∂ₜψ - Hψ` for `t x - i c x³`, from the exact polynomial forms.
pub fn free_linear_residual(units: &UnitScale, c: f64, x: f64) -> Complex64 {
    let lhs = Complex64::new(0.0, units.hbar() * x);
    let d2 = Complex64::new(0.0, -6.0 * c * x);
    let rhs = d2 * (-units.hbar() * units.hbar() / (2.0 * units.mass()));
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensionless_coefficient_is_one_third() {
        let u = UnitScale::default();
        assert!((free_cubic_coefficient(&u) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(free_linear_residual(&u, 1.0 / 3.0, 2.0).norm(), 0.0);
    }

    #[test]
    fn printed_coefficient_leaves_residual() {
        let u = UnitScale::default();
        let r = free_linear_residual(&u, PRINTED_FREE_CUBIC_COEFFICIENT, 2.0);
        assert!((r - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let half = UnitScale::new(1.0, 0.5, 1.0).unwrap();
        assert!((free_cubic_coefficient(&half) - PRINTED_FREE_CUBIC_COEFFICIENT).abs() < 1e-16);
    }

    #[test]
    fn modes_carry_tags() {
        let (e, l) = free_zero_energy_modes(&UnitScale::default());
        assert_eq!(e.sector(), SectorTag::FreeZeroEnergyEigen);
        assert!(!l.is_eigenstate());
        assert_eq!(l.value(2.0, 3.0), Complex64::new(6.0, -8.0 / 3.0));
    }
}
