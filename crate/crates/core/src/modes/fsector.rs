//! The non-normalizable sector built on `ψ̄₀ = e^{-q²/2} F(q)`.
//!
//! Writing `ψ̄_n = e^{q²/2} R_n(q)`, the raising operator
//! `a† = (q - d/dq)/√2` acts as `R_{n+1} = -R_n'/√2`. Since `R_0` is Dawson's
//! function, `R_n = (-1/√2)ⁿ D⁽ⁿ⁾`. The ladder carries no `√(n+1)` factor.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::error::{Error, Result};
use crate::modes::family::ModeFamily;
use crate::modes::tags::{Hamiltonian, Parity, SectorTag};
use crate::modes::PLAIN_RANGE;
use crate::numerics::{dawson, dawson_derivative, first_derivative, growing_integral, Grid, LogScaledReal};

/// Coarsest spacing accepted by [`psi_bar_n`].
pub const LADDER_MAX_SPACING: f64 = 1.0 / 32.0;

/// `e^{-q²/2} F(q)`.
pub fn psi_bar0(q: f64) -> LogScaledReal {
    growing_integral(q).mul_exp(-0.5 * q * q)
}

/// `√2 q e^{-q²/2} F(q) - e^{q²/2}/√2`, the first raised state.
pub fn psi_bar1(q: f64) -> LogScaledReal {
    let first = psi_bar0(q).mul_f64(SQRT_2 * q);
    first.sub(LogScaledReal::exp(0.5 * q * q).mul_f64(FRAC_1_SQRT_2))
}

/// `R_n(q) = e^{-q²/2} ψ̄_n(q) = (-1/√2)ⁿ D⁽ⁿ⁾(q)`.
pub fn fbar_reduced(n: usize, q: f64) -> f64 {
    let d = if n == 0 { dawson(q) } else { dawson_derivative(n, q) };
    (-FRAC_1_SQRT_2).powi(n as i32) * d
}

/// `R_n'(q) = (-1/√2)ⁿ D⁽ⁿ⁺¹⁾(q)`.
pub fn fbar_reduced_derivative(n: usize, q: f64) -> f64 {
    (-FRAC_1_SQRT_2).powi(n as i32) * dawson_derivative(n + 1, q)
}

/// `ψ̄_n(q) = (a†)ⁿ ψ̄₀` in closed form.
pub fn fbar(n: usize, q: f64) -> LogScaledReal {
    LogScaledReal::from_parts(fbar_reduced(n, q), 0.5 * q * q)
}

/// `e^{+q²/2}`.
pub fn negative_energy_mode(q: f64) -> LogScaledReal {
    LogScaledReal::exp(0.5 * q * q)
}

/// `ψ̄_n` on a grid by `n` stencil applications of `(q - d/dq)/√2` to `ψ̄₀`.
pub fn psi_bar_n(n: usize, grid: &Grid) -> Result<Vec<f64>> {
    if grid.spacing() > LADDER_MAX_SPACING {
        return Err(Error::GridTooCoarse {
            spacing: grid.spacing(),
            max: LADDER_MAX_SPACING,
        });
    }
    let edge = grid.start().abs().max(grid.end().abs());
    if edge > PLAIN_RANGE {
        return Err(Error::OutOfPlainRange {
            q: edge,
            limit: PLAIN_RANGE,
        });
    }
    let mut v: Vec<f64> = grid.points().iter().map(|&q| psi_bar0(q).to_f64()).collect();
    for _ in 0..n {
        let d = first_derivative(&v, grid)?;
        v = grid
            .points()
            .iter()
            .zip(v.iter().zip(&d))
            .map(|(&q, (&x, &dx))| (q * x - dx) * FRAC_1_SQRT_2)
            .collect();
    }
    Ok(v)
}

impl ModeFamily {
    /// `FBar(n)`: energy `n + 1/2`, parity `(-1)^{n+1}`.
    pub fn fbar(n: usize) -> Self {
        Self::stationary(
            SectorTag::FBar(n),
            n as f64 + 0.5,
            Parity::of_level(n + 1),
            Hamiltonian::Oscillator,
            move |q| fbar(n, q),
        )
    }

    /// `e^{q²/2}` at energy `-1/2`.
    pub fn negative_energy() -> Self {
        Self::stationary(SectorTag::NegativeEnergy, -0.5, Parity::Even, Hamiltonian::Oscillator, negative_energy_mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_bar0_values() {
        assert!(psi_bar0(0.0).is_zero());
        let v = psi_bar0(1.0).to_f64();
        assert!((v - (-0.5f64).exp() * 1.462_651_745_907_181_6).abs() < 1e-14);
        assert!((v - 0.8872).abs() < 1e-4);
        assert_eq!(psi_bar0(-2.0).to_f64(), -psi_bar0(2.0).to_f64());
    }

    #[test]
    fn psi_bar1_values() {
        assert!((psi_bar1(0.0).to_f64() + FRAC_1_SQRT_2).abs() < 1e-16);
        for q in [0.5, 1.0, 2.0] {
            assert_eq!(psi_bar1(-q).to_f64(), psi_bar1(q).to_f64());
        }
        for q in [0.3, 1.1, 3.7] {
            assert!((psi_bar1(q).to_f64() - fbar(1, q).to_f64()).abs() < 1e-13 * psi_bar1(q).to_f64().abs().max(1.0));
        }
    }

    #[test]
    fn psi_bar1_large_q_form() {
        let q: f64 = 5.0;
        let lead = (q * q / 2.0).exp() / (2.0 * q * q * SQRT_2);
        let r = psi_bar1(q).to_f64() / lead;
        assert!((r - 1.0).abs() < 0.25, "{r}");
    }

    #[test]
    fn ladder_matches_closed_form() {
        let g = Grid::symmetric(4.0, 1.0 / 256.0).unwrap();
        let p0 = psi_bar_n(0, &g).unwrap();
        assert_eq!(p0[100], psi_bar0(g.points()[100]).to_f64());
        let p1 = psi_bar_n(1, &g).unwrap();
        for i in 10..g.len() - 10 {
            let q = g.points()[i];
            assert!((p1[i] - psi_bar1(q).to_f64()).abs() < 1e-8, "q={q}");
        }
        let p2 = psi_bar_n(2, &g).unwrap();
        let n = g.len();
        for i in 10..n / 2 {
            assert!((p2[i] + p2[n - 1 - i]).abs() < 1e-9 * p2[i].abs().max(1.0));
        }
    }

    #[test]
    fn ladder_rejects_coarse_grid() {
        let g = Grid::symmetric(4.0, 0.25).unwrap();
        assert!(matches!(psi_bar_n(1, &g), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn family_parities() {
        assert_eq!(ModeFamily::fbar(0).parity(), Parity::Odd);
        assert_eq!(ModeFamily::fbar(3).parity(), Parity::Even);
        assert_eq!(ModeFamily::negative_energy().spatial(0.0).unwrap().to_f64(), 1.0);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn psi_bar0_is_odd(q in -15.0f64..15.0) {
            let (a, b) = (psi_bar0(q), psi_bar0(-q));
            prop_assert_eq!(a.sign(), -b.sign());
            if !a.is_zero() {
                prop_assert!((a.logmag() - b.logmag()).abs() <= 1e-14 * a.logmag().abs().max(1.0));
            }
        }

        #[test]
        fn psi_bar0_corrected_envelope(q in 4.0f64..20.0) {
            let ratio = psi_bar0(q).mul_exp(-0.5 * q * q).to_f64() * 2.0 * q;
            let lead = 1.0 + 1.0 / (2.0 * q * q);
            let t2 = 3.0 / (4.0 * q.powi(4));
            prop_assert!(ratio >= lead + t2 - 1e-14 && ratio <= lead + 2.0 * t2 + 1e-14, "q={} ratio={}", q, ratio);
        }

        #[test]
        fn ladder_flips_parity(n in 0usize..6) {
            let p = ModeFamily::fbar(n).parity();
            prop_assert_eq!(p, Parity::of_level(n).flip());
            prop_assert_eq!(ModeFamily::fbar(n + 1).parity(), p.flip());
        }
    }
}
