//! Dawson's function, the growing Gaussian integral F(q) and its asymptotic series.
//!
//! Run with `cargo run --example special_functions`.

use sho_exceptional::numerics::{dawson, erfi_asymptotic, gauss_integral_upper, growing_integral};

fn main() -> sho_exceptional::Result<()> {
    println!("{:>5} {:>22} {:>22} {:>14}", "q", "D(q)", "F(q)", "ln F(q)");
    for q in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let f = growing_integral(q);
        println!("{q:>5} {:>22.15e} {:>22.15e} {:>14.6}", dawson(q), f.to_f64(), f.logmag());
    }

    // F(30) = e^900 · D(30) overflows f64 but stays representable in log-scaled form.
    let big = growing_integral(30.0);
    println!("\nF(30): mantissa {:.15} scale {} (to_f64 = {})", big.mantissa(), big.scale(), big.to_f64());

    println!("\nAsymptotic series of F(z) at z = 4:");
    let exact = growing_integral(4.0);
    for k in 0..=5 {
        let sum = erfi_asymptotic(4.0, k)?;
        let remainder = exact.sub(sum.value);
        println!(
            "  K = {k}: remainder / next term = {:.4}",
            (remainder / sum.next_term).to_f64()
        );
    }

    println!("\nG(r) = ∫_r^∞ e^(-s²) ds:");
    for r in [0.0, 1.0, 3.0, 6.0] {
        println!("  G({r}) = {:.15e}", gauss_integral_upper(r));
    }
    Ok(())
}
