//! The zero-energy free particle: ψ = x and the companion t x - i c x³.
//!
//! Run with `cargo run --example free_particle`.

use sho_exceptional::modes::{free_cubic_coefficient, free_linear_residual, PRINTED_FREE_CUBIC_COEFFICIENT};
use sho_exceptional::numerics::UnitScale;

fn main() -> sho_exceptional::Result<()> {
    for units in [UnitScale::default(), UnitScale::new(1.0, 0.5, 1.0)?, UnitScale::new(2.0, 3.0, 1.0)?] {
        let c = free_cubic_coefficient(&units);
        let worst = |c: f64| [0.5, 1.0, 2.0].iter().map(|&x| free_linear_residual(&units, c, x).norm()).fold(0.0, f64::max);
        println!(
            "ħ = {}, m = {}: c = m/(3ħ) = {c:.6} residual {:.1e};  c = 1/6 residual {:.3e}",
            units.hbar(),
            units.mass(),
            worst(c),
            worst(PRINTED_FREE_CUBIC_COEFFICIENT)
        );
    }
    Ok(())
}
