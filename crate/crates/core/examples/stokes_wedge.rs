//! The rotated sector on the half-line r ≥ 0: ground state e^{r²/2} G(r),
//! the bounded pair (f, g) and its finite, time-independent overlaps.
//!
//! Run with `cargo run --example stokes_wedge`.

use std::sync::Arc;

use sho_exceptional::numerics::Grid;
use sho_exceptional::wedge::{
    coordinate_map_check, make_wedge_pair, rotated_residual, rotated_timedep_residual, wedge_f_tail_ratio,
    wedge_g_limit, wedge_g_tail_ratio, wedge_ground_mode, wedge_inner_products, wedge_linear_mode,
};

fn main() -> sho_exceptional::Result<()> {
    let grid = Grid::with_step(0.0, 8.0, 1.0 / 128.0)?;
    let ground = wedge_ground_mode();
    println!("ψ̂₀ residual at E = +1/2: {:.3e}", rotated_residual(&ground, 0.5, &grid)?.sup_residual);

    let pair = Arc::new(make_wedge_pair(&grid)?);
    let linear = wedge_linear_mode(pair.clone());
    let r = rotated_timedep_residual(&linear, &grid, &[0.0, 1.0, 5.0])?;
    println!("linear mode residual: {:.3e}", r.sup_residual);
    println!("g(8) = {:.12}, g(∞) = {:.12}", pair.g_at(8.0)?.0, wedge_g_limit());

    println!("\n{:>3} {:>14} {:>14}", "r", "f tail ratio", "g tail ratio");
    for r in [3.0, 4.0, 5.0, 6.0] {
        println!("{r:>3} {:>14.8} {:>14.8}", wedge_f_tail_ratio(r), wedge_g_tail_ratio(r));
    }

    let ip = wedge_inner_products(&pair, &[0.0, 1.0, 10.0])?;
    let o = ip.overlaps[0];
    println!("\noverlaps on [0, 8] (tail below {:.1e}, drift over t {:.1e}):", ip.tail_estimate, ip.time_drift);
    println!("  L·R = {:.12}\n  L₀·R₀ = {}\n  L·R₀ = {:.12}\n  L₀·R = {:.12}", o.lr, o.zero_norm, o.l_r0, o.l0_r);

    let cm = coordinate_map_check(16);
    println!("\ncoordinate map q → -ir: transport {:.1e}, Gauss identity {:.1e}", cm.transport_mismatch, cm.gauss_mismatch);
    Ok(())
}
