use num_complex::Complex64;

use crate::error::Result;
use crate::modes::ModeFamily;
use crate::numerics::{integrate, QuadOptions};

/// Relative accuracy asked of every overlap quadrature.
pub const OVERLAP_REL_TOL: f64 = 1e-12;

/// `Re ∫_{-L}^{L} a*(q,0) b(q,0) dq`.
///
/// The integrand is folded onto `[0, L]` as `h(q) + h(-q)`, so products with
/// exact opposite parity cancel to zero before quadrature.
pub fn overlap_truncated(a: &ModeFamily, b: &ModeFamily, cutoff: f64, tol: f64) -> Result<f64> {
    let h = |q: f64| (a.value(q, 0.0).conj() * b.value(q, 0.0)).re;
    folded(h, cutoff, tol)
}

/// Complex version of [`overlap_truncated`].
pub fn overlap_truncated_complex(a: &ModeFamily, b: &ModeFamily, cutoff: f64, tol: f64) -> Result<Complex64> {
    let h = |q: f64| a.value(q, 0.0).conj() * b.value(q, 0.0);
    let re = folded(|q| h(q).re, cutoff, tol)?;
    let im = folded(|q| h(q).im, cutoff, tol)?;
    Ok(Complex64::new(re, im))
}

fn folded(h: impl Fn(f64) -> f64, cutoff: f64, tol: f64) -> Result<f64> {
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: OVERLAP_REL_TOL,
        ..QuadOptions::default()
    };
    Ok(integrate(|q| h(q) + h(-q), 0.0, cutoff, &opts)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{growing_integral, SQRT_PI};

    #[test]
    fn opposite_parity_vanishes() {
        for l in [1.0, 3.0, 6.0] {
            let v = overlap_truncated(&ModeFamily::standard(0), &ModeFamily::fbar(0), l, 1e-12).unwrap();
            assert!(v.abs() <= 1e-10);
        }
        let v = overlap_truncated(&ModeFamily::standard(1), &ModeFamily::fbar(1), 4.0, 1e-12).unwrap();
        assert!(v.abs() <= 1e-9);
    }

    #[test]
    fn cross_sector_linear_growth() {
        let l: f64 = 5.0;
        let v = overlap_truncated(&ModeFamily::standard_monic(1), &ModeFamily::fbar(0), l, 1e-12).unwrap();
        let oracle = l - (-l * l).exp() * growing_integral(l).to_f64();
        assert!((v - oracle).abs() < 1e-9, "{v} {oracle}");
        assert!((v - 4.898).abs() < 1e-3);
    }

    #[test]
    fn gaussian_norm() {
        let v = overlap_truncated(&ModeFamily::standard(0), &ModeFamily::standard(0), 8.0, 1e-13).unwrap();
        assert!((v - SQRT_PI).abs() < 1e-12);
    }
}
