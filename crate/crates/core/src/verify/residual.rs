use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{ModeFamily, SectorTag};
use crate::numerics::{second_derivative, Grid, GridDescriptor, STENCIL_HALF_WIDTH};

/// Edge points excluded from every sup norm.
pub const INTERIOR_MARGIN: usize = STENCIL_HALF_WIDTH + 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub mode: SectorTag,
    pub energy_used: Option<f64>,
    pub sup_residual: f64,
    pub grid: GridDescriptor,
    pub interior_margin: usize,
}

/// `sup |Hu - Eu| / sup |u|` over the grid interior for an eigenstate profile.
///
/// Samples are rescaled by the largest log-magnitude on the grid before
/// differencing, so growing tails never overflow.
pub fn stationary_residual(mode: &ModeFamily, energy: f64, grid: &Grid) -> Result<ResidualReport> {
    if !mode.is_eigenstate() {
        return Err(Error::NotEigenstate(mode.sector().to_string()));
    }
    let profile: Vec<_> = grid
        .points()
        .iter()
        .map(|&q| mode.spatial(q).expect("eigenstate has a profile"))
        .collect();
    let reference = profile.iter().map(|u| u.logmag()).fold(f64::NEG_INFINITY, f64::max);
    let reference = if reference.is_finite() { reference } else { 0.0 };
    let u: Vec<f64> = profile.iter().map(|v| v.relative_to(reference)).collect();
    let d2 = second_derivative(&u, grid)?;
    let h = mode.hamiltonian();
    let norm = u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sup = interior(grid)
        .map(|i| {
            let q = grid.points()[i];
            (h.kinetic() * d2[i] + (h.potential(q) - energy) * u[i]).abs()
        })
        .fold(0.0f64, f64::max);
    Ok(report(mode, Some(energy), ratio(sup, norm), grid))
}

/// `sup |iħ∂ₜψ - Hψ| / sup |ψ|` over interior × times, using the analytic
/// time derivative each family provides.
pub fn timedep_residual(mode: &ModeFamily, grid: &Grid, times: &[f64]) -> Result<ResidualReport> {
    let h = mode.hamiltonian();
    let mut worst = 0.0f64;
    for &t in times {
        let vals: Vec<_> = grid.points().iter().map(|&q| mode.eval_scaled(q, t)).collect();
        let reference = vals.iter().map(|(v, _)| v.log_abs()).fold(f64::NEG_INFINITY, f64::max);
        let reference = if reference.is_finite() { reference } else { 0.0 };
        let psi: Vec<Complex64> = vals.iter().map(|(v, _)| v.relative_to(reference)).collect();
        let dpsi: Vec<Complex64> = vals.iter().map(|(_, d)| d.relative_to(reference)).collect();
        let re: Vec<f64> = psi.iter().map(|z| z.re).collect();
        let im: Vec<f64> = psi.iter().map(|z| z.im).collect();
        let d2re = second_derivative(&re, grid)?;
        let d2im = second_derivative(&im, grid)?;
        let norm = psi.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let sup = interior(grid)
            .map(|i| {
                let q = grid.points()[i];
                let hpsi = Complex64::new(d2re[i], d2im[i]) * h.kinetic() + psi[i] * h.potential(q);
                (Complex64::new(0.0, h.hbar()) * dpsi[i] - hpsi).norm()
            })
            .fold(0.0f64, f64::max);
        worst = worst.max(ratio(sup, norm));
    }
    Ok(report(mode, mode.energy().value(), worst, grid))
}

fn interior(grid: &Grid) -> std::ops::Range<usize> {
    let n = grid.len();
    if n <= 2 * INTERIOR_MARGIN {
        0..0
    } else {
        INTERIOR_MARGIN..n - INTERIOR_MARGIN
    }
}

fn ratio(sup: f64, norm: f64) -> f64 {
    if norm > 0.0 {
        sup / norm
    } else {
        sup
    }
}

fn report(mode: &ModeFamily, energy: Option<f64>, sup: f64, grid: &Grid) -> ResidualReport {
    ResidualReport {
        mode: mode.sector(),
        energy_used: energy,
        sup_residual: sup,
        grid: grid.descriptor(),
        interior_margin: INTERIOR_MARGIN,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::modes::{free_linear_mode, free_zero_energy_modes, make_fg_pair};
    use crate::numerics::UnitScale;

    fn grid() -> Grid {
        Grid::symmetric(4.0, 1.0 / 256.0).unwrap()
    }

    #[test]
    fn standard_ground_state() {
        let r = stationary_residual(&ModeFamily::standard(0), 0.5, &grid()).unwrap();
        assert!(r.sup_residual <= 1e-8, "{}", r.sup_residual);
        assert_eq!(r.interior_margin, 5);
        let wrong = stationary_residual(&ModeFamily::standard(0), 1.5, &grid()).unwrap();
        assert!(wrong.sup_residual >= 0.5);
    }

    #[test]
    fn fbar_ground_state() {
        let r = stationary_residual(&ModeFamily::fbar(0), 0.5, &grid()).unwrap();
        assert!(r.sup_residual <= 1e-7, "{}", r.sup_residual);
    }

    #[test]
    fn negative_energy_distinguished() {
        let g = grid();
        assert!(stationary_residual(&ModeFamily::negative_energy(), -0.5, &g).unwrap().sup_residual <= 1e-8);
        let small = Grid::symmetric(2.0, 1.0 / 256.0).unwrap();
        let off = stationary_residual(&ModeFamily::negative_energy(), 0.5, &small).unwrap();
        assert!(off.sup_residual >= 0.1);
    }

    #[test]
    fn evolving_mode_rejected_by_stationary_check() {
        let (_, lin) = free_zero_energy_modes(&UnitScale::default());
        assert!(matches!(stationary_residual(&lin, 0.0, &grid()), Err(Error::NotEigenstate(_))));
    }

    #[test]
    fn linear_in_time_residual() {
        let g = grid();
        let pair = Arc::new(make_fg_pair(0, &g).unwrap());
        let r = timedep_residual(&ModeFamily::linear(pair), &g, &[0.0, 1.0, 5.0]).unwrap();
        assert!(r.sup_residual <= 1e-7, "{}", r.sup_residual);
    }

    #[test]
    fn stationary_embeds_in_timedep() {
        let r = timedep_residual(&ModeFamily::standard(1), &grid(), &[0.0, 0.3, 2.0]).unwrap();
        assert!(r.sup_residual <= 1e-8);
    }

    #[test]
    fn free_companion_residuals() {
        let u = UnitScale::default();
        let g = Grid::symmetric(2.0, 1.0 / 64.0).unwrap();
        let (eig, lin) = free_zero_energy_modes(&u);
        assert!(stationary_residual(&eig, 0.0, &g).unwrap().sup_residual <= 1e-10);
        assert!(timedep_residual(&lin, &g, &[0.0, 1.0]).unwrap().sup_residual <= 1e-10);
        let printed = free_linear_mode(&u, 1.0 / 6.0);
        assert!(timedep_residual(&printed, &g, &[1.0]).unwrap().sup_residual > 0.1);
    }
}
