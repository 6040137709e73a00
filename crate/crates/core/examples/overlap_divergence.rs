//! Truncated overlaps between sectors and the growth law of each sequence.
//!
//! Run with `cargo run --example overlap_divergence`.

use sho_exceptional::modes::ModeFamily;
use sho_exceptional::numerics::growing_integral;
use sho_exceptional::verify::classify_divergence;

fn main() -> sho_exceptional::Result<()> {
    let cutoffs = [3.0, 4.0, 5.0, 6.0];
    let pairs = [
        ("ψ₀ · ψ̄₀", ModeFamily::standard_monic(0), ModeFamily::fbar(0)),
        ("ψ₁ · ψ̄₀", ModeFamily::standard_monic(1), ModeFamily::fbar(0)),
        ("ψ₀ · ψ₀", ModeFamily::standard_monic(0), ModeFamily::standard_monic(0)),
        ("ψ₂ · ψ̄₁", ModeFamily::standard_monic(2), ModeFamily::fbar(1)),
        ("ψ₁ · ψ̄₂", ModeFamily::standard_monic(1), ModeFamily::fbar(2)),
        ("ψ₃ · ψ̄₀", ModeFamily::standard_monic(3), ModeFamily::fbar(0)),
        ("ψ̄₀ · ψ̄₀", ModeFamily::fbar(0), ModeFamily::fbar(0)),
    ];
    for (label, a, b) in &pairs {
        let r = classify_divergence(a, b, &cutoffs)?;
        let values: Vec<String> = r.values.iter().map(|v| format!("{v:.6e}")).collect();
        println!(
            "{label:<10} {:<12} slope {:>10.5} misfit {:.1e}  [{}]",
            r.classification.name(),
            r.fit_slope,
            r.fit_residual,
            values.join(", ")
        );
    }

    println!("\nψ₁ · ψ̄₀ against L - e^(-L²) F(L):");
    let a = ModeFamily::standard_monic(1);
    let b = ModeFamily::fbar(0);
    let r = classify_divergence(&a, &b, &cutoffs)?;
    for (l, v) in r.cutoffs.iter().zip(&r.values) {
        let oracle = l - growing_integral(*l).mul_exp(-l * l).to_f64();
        println!("  L = {l}: {v:.12}  oracle {oracle:.12}");
    }
    Ok(())
}
