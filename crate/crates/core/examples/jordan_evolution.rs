//! A Jordan block at E = 1/2: zero-norm eigenvector, linear-in-time evolution,
//! and the conserved σ₁ inner product.
//!
//! Run with `cargo run --example jordan_evolution`.

use num_complex::Complex64;
use sho_exceptional::jordan::{assemble, v_norm, JordanBlock, StateVec2};

fn main() -> sho_exceptional::Result<()> {
    let block = JordanBlock::new(0.5);
    let (r, l) = (block.right_eigenvector(), block.left_eigenvector());
    println!("left · right = {}", l.dot(&r));
    println!("nilpotent residual = {}, eigenspace dimension = {}", block.nilpotent_residual(), block.eigenspace_dimension());
    println!("pseudo-Hermiticity: {:?}", block.pseudo_hermiticity_check());

    let s = StateVec2::new(Complex64::new(0.2, 0.1), Complex64::new(0.0, 1.0));
    println!("\n{:>6} {:>26} {:>26} {:>10} {:>12}", "t", "a", "b", "|s|", "V-norm");
    for t in [0.0, 1.0, 10.0, 100.0] {
        let e = block.evolve(&s, t);
        println!(
            "{t:>6} {:>26} {:>26} {:>10.4} {:>12.3e}",
            format!("{:.4}", e.a),
            format!("{:.4}", e.b),
            e.norm(),
            v_norm(&e)
        );
    }

    let h = assemble(3)?;
    println!("\nthree levels, dimension {}:", h.dim());
    let state: Vec<Complex64> = (0..h.dim()).map(|k| Complex64::new(k as f64, 1.0)).collect();
    for t in [0.0, 2.0, 20.0] {
        println!("  t = {t:>4}: V-norm {:.12}", h.v_norm(&h.evolve(&state, t)?)?);
    }
    Ok(())
}
