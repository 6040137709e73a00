//! Standard and f-sector eigenmodes with their stationary residuals and parities.
//!
//! Run with `cargo run --example stationary_modes`.

use sho_exceptional::modes::{psi_bar0, psi_bar1, psi_bar_n, ModeFamily};
use sho_exceptional::numerics::Grid;
use sho_exceptional::verify::{parity_check, stationary_residual};

fn main() -> sho_exceptional::Result<()> {
    let grid = Grid::symmetric(4.0, 1.0 / 256.0)?;
    let samples = [0.5, 1.0, 2.0];

    println!("{:<16} {:>6} {:>12} {:>8}", "mode", "E", "residual", "parity");
    let mut families: Vec<(ModeFamily, f64)> = (0..=3).map(|n| (ModeFamily::standard(n), n as f64 + 0.5)).collect();
    families.extend((0..=3).map(|n| (ModeFamily::fbar(n), n as f64 + 0.5)));
    families.push((ModeFamily::negative_energy(), -0.5));
    for (mode, e) in &families {
        let r = stationary_residual(mode, *e, &grid)?;
        let p = parity_check(mode, &samples)?;
        println!("{:<16} {:>6} {:>12.3e} {:>8}", mode.sector().to_string(), e, r.sup_residual, p.to_string());
    }

    println!("\nψ̄₀ and ψ̄₁ at large q against their leading asymptotes:");
    for q in [4.0f64, 5.0, 6.0] {
        let r0 = psi_bar0(q).mul_exp(-0.5 * q * q).to_f64() * 2.0 * q;
        let r1 = psi_bar1(q).mul_exp(-0.5 * q * q).to_f64() * 2.0 * std::f64::consts::SQRT_2 * q * q;
        println!("  q = {q}: 2q e^(-q²/2) ψ̄₀ = {r0:.6}   2√2 q² e^(-q²/2) ψ̄₁ = {r1:.6}");
    }

    let ladder = psi_bar_n(2, &grid)?;
    let mid = grid.len() / 2;
    println!("\nψ̄₂ from the ladder: ψ̄₂(1) = {:.10}, ψ̄₂(-1) = {:.10}", ladder[mid + 256], ladder[mid - 256]);
    Ok(())
}
