//! The f, g pair and the mode e^{-it/2} e^{-q²/2} (f t + i g) that grows linearly in time.
//!
//! Run with `cargo run --example linear_in_time`.

use std::sync::Arc;

use sho_exceptional::modes::{make_fg_pair, ModeFamily};
use sho_exceptional::numerics::Grid;
use sho_exceptional::verify::timedep_residual;

fn main() -> sho_exceptional::Result<()> {
    let grid = Grid::symmetric(6.0, 1.0 / 256.0)?;
    let pair = Arc::new(make_fg_pair(0, &grid)?);

    println!("{:>4} {:>18} {:>18} {:>12}", "q", "f", "g", "g ratio");
    for q in [1.0f64, 2.0, 3.0, 4.0, 5.0, 6.0] {
        let v = pair.at(q)?;
        // -4q g / (e^{q²} ln q²) tends to 1, logarithmically slowly.
        let ratio = if q > 1.0 { -4.0 * q * v.g / ((q * q).exp() * (q * q).ln()) } else { f64::NAN };
        println!("{q:>4} {:>18.10e} {:>18.10e} {:>12.5}", v.f, v.g, ratio);
    }

    let mode = ModeFamily::linear(pair.clone());
    let inner = Grid::symmetric(4.0, 1.0 / 256.0)?;
    let r = timedep_residual(&mode, &inner, &[0.0, 1.0, 5.0])?;
    println!("\ntime-dependent residual on [-4, 4] at t = 0, 1, 5: {:.3e}", r.sup_residual);

    println!("\n|ψ(1, t)| / t approaches e^(-1/2) |f(1)| = {:.8}", (-0.5f64).exp() * pair.at(1.0)?.f);
    for t in [1.0, 10.0, 100.0, 1000.0] {
        println!("  t = {t:>6}: {:.8}", mode.value(1.0, t).norm() / t);
    }
    Ok(())
}
