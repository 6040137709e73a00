//! Gaussian-integral kernels.
//!
//! `F(q) = ∫₀^q e^{y²} dy` is carried as `e^{q²}·D(q)` with `D` Dawson's
//! function, so it never overflows. `G(r) = ∫_r^∞ e^{-y²} dy` goes through
//! `erfc` and its scaled form.

use crate::error::{Error, Result};
use crate::numerics::logscaled::LogScaledReal;
use crate::numerics::quad::{integrate, QuadOptions};

pub const SQRT_PI: f64 = 1.772_453_850_905_516;

const SERIES_LIMIT: f64 = 7.0;
const DERIVATIVE_ASYMPTOTIC_LIMIT: f64 = 12.0;
const ERFCX_ASYMPTOTIC_LIMIT: f64 = 26.0;

/// `x*x` split into a rounded head and the exact rounding error.
fn square_split(x: f64) -> (f64, f64) {
    let hi = x * x;
    (hi, x.mul_add(x, -hi))
}

/// Dawson's function `D(x) = e^{-x²} ∫₀^x e^{y²} dy`.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < SERIES_LIMIT {
        dawson_series(ax)
    } else {
        dawson_asymptotic(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn dawson_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 1.0;
    loop {
        term *= x2 / k;
        let add = term / (2.0 * k + 1.0);
        sum += add;
        if k > x2 && add < 1e-17 * sum {
            break;
        }
        k += 1.0;
    }
    let (hi, lo) = square_split(x);
    sum * (-hi).exp() * (1.0 - lo)
}

fn dawson_asymptotic(x: f64) -> f64 {
    let t = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0) * t;
        if next >= term || next < 1e-18 {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    sum / (2.0 * x)
}

/// `F(q) = ∫₀^q e^{y²} dy`, odd in `q`.
pub fn growing_integral(q: f64) -> LogScaledReal {
    let (hi, lo) = square_split(q);
    LogScaledReal::from_parts(dawson(q) * (1.0 + lo), hi)
}

/// `n`-th derivative of Dawson's function.
///
/// For moderate `|x|` this uses
/// `D^{(n)}(x) = (-2)^n I_n(x) + Σ_{j<n} ∂^{n-1-j}[(-2x)^j e^{-x²}]` with
/// `I_n(x) = ∫₀^x s^n e^{s²-2xs} ds`, which has no cancellation between
/// exponentially large pieces. Large `|x|` uses the differentiated
/// asymptotic series and `x = 0` the exact Taylor coefficients.
pub fn dawson_derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        return dawson(x);
    }
    let ax = x.abs();
    let v = if ax == 0.0 {
        derivative_at_origin(n)
    } else if ax >= DERIVATIVE_ASYMPTOTIC_LIMIT {
        derivative_asymptotic(n, ax)
    } else {
        derivative_integral(n, ax)
    };
    let odd_result = n.is_multiple_of(2);
    if x < 0.0 && odd_result {
        -v
    } else {
        v
    }
}

fn derivative_at_origin(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        return 0.0;
    }
    let k = (n - 1) / 2;
    let mut v = 1.0;
    for j in 1..=k {
        v *= 4.0 * j as f64;
    }
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

fn derivative_asymptotic(n: usize, x: f64) -> f64 {
    let mut sum: f64 = 0.0;
    let mut coeff = 0.5;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        if k > 0 {
            coeff *= (2 * k - 1) as f64 * 0.5;
        }
        let m = 2 * k + 1;
        let mut rising = 1.0;
        for j in 0..n {
            rising *= (m + j) as f64;
        }
        let term = coeff * rising * x.powi(-((m + n) as i32));
        if term >= prev || term < 1e-18 * sum.abs() {
            break;
        }
        sum += term;
        prev = term;
    }
    if n % 2 == 1 {
        -sum
    } else {
        sum
    }
}

fn derivative_integral(n: usize, x: f64) -> f64 {
    let integrand = |s: f64| s.powi(n as i32) * (s * (s - 2.0 * x)).exp();
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: 2e-13,
        max_subdivisions: 2_000,
    };
    let i_n = match integrate(integrand, 0.0, x, &opts) {
        Ok(e) => e.value,
        Err(Error::QuadratureNotConverged { estimate, .. }) => estimate,
        Err(_) => f64::NAN,
    };
    let mut boundary = 0.0;
    for j in 0..n {
        let mut p = vec![0.0; j + 1];
        p[j] = (-2.0f64).powi(j as i32);
        for _ in 0..n - 1 - j {
            p = gaussian_derivative_poly(&p);
        }
        boundary += horner(&p, x);
    }
    let (hi, lo) = square_split(x);
    (-2.0f64).powi(n as i32) * i_n + boundary * (-hi).exp() * (1.0 - lo)
}

/// Coefficients of `p' - 2xp`, i.e. `(p e^{-x²})' e^{x²}`.
fn gaussian_derivative_poly(p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        if k > 0 {
            out[k - 1] += k as f64 * c;
        }
        out[k + 1] -= 2.0 * c;
    }
    out
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `G(r) = ∫_r^∞ e^{-y²} dy = (√π/2)·erfc(r)`.
pub fn gauss_integral_upper(r: f64) -> f64 {
    0.5 * SQRT_PI * libm::erfc(r)
}

/// Scaled complementary error function `e^{x²} erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x < 0.0 {
        let (hi, lo) = square_split(x);
        return 2.0 * hi.exp() * (1.0 + lo) - erfcx(-x);
    }
    if x < ERFCX_ASYMPTOTIC_LIMIT {
        let (hi, lo) = square_split(x);
        return libm::erfc(x) * hi.exp() * (1.0 + lo);
    }
    let t = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        term *= -((2 * k - 1) as f64) * t;
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum / (x * SQRT_PI)
}

/// `G(r)` in log-scaled form, accurate far into the tail.
pub fn gauss_integral_upper_scaled(r: f64) -> LogScaledReal {
    if r <= 0.0 {
        return LogScaledReal::from_f64(gauss_integral_upper(r));
    }
    let (hi, lo) = square_split(r);
    LogScaledReal::from_parts(0.5 * SQRT_PI * erfcx(r) * (1.0 - lo), -hi)
}

/// A truncated asymptotic sum with the magnitude of its first omitted term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSum {
    pub value: LogScaledReal,
    pub next_term: LogScaledReal,
}

/// `(e^{z²}/2z) Σ_{k=0}^{K} (2k-1)!!/(2z²)^k`, the large-`z` expansion of `F(z)`.
pub fn erfi_asymptotic(z: f64, terms: usize) -> Result<AsymptoticSum> {
    if z == 0.0 {
        return Err(Error::SeriesAtOrigin);
    }
    let x2 = 2.0 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=terms {
        term *= (2 * k - 1) as f64 / x2;
        sum += term;
    }
    let next = term * (2 * terms + 1) as f64 / x2;
    let (hi, lo) = square_split(z);
    let prefactor = (1.0 + lo) / (2.0 * z);
    Ok(AsymptoticSum {
        value: LogScaledReal::from_parts(prefactor * sum, hi),
        next_term: LogScaledReal::from_parts(prefactor.abs() * next, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::adaptive_quad;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn dawson_reference_values() {
        let table = [
            (0.5, 0.424_436_383_502_022_3),
            (1.0, 0.538_079_506_912_768_4),
            (2.0, 0.301_340_388_923_791_97),
            (3.5, 0.149_621_593_080_756_48),
            (6.9, 0.073_250_120_258_635_26),
            (7.1, 0.071_142_926_911_234_62),
            (10.0, 0.050_253_847_187_598_53),
            (30.0, 0.016_675_941_401_059_176),
        ];
        for (x, d) in table {
            assert!(close(dawson(x), d, 1e-14), "D({x}) = {}", dawson(x));
            assert_eq!(dawson(-x), -dawson(x));
        }
    }

    #[test]
    fn derivative_reference_values() {
        let table = [
            (1, 0.7, 0.285_294_319_417_075_6),
            (1, 3.0, -0.069_626_183_663_349_72),
            (2, 0.7, -1.420_420_162_302_369_3),
            (2, 9.0, 0.001_425_045_240_848_346_6),
            (3, 3.0, -0.088_785_509_900_491_72),
            (3, 15.0, -0.000_060_607_704_037_912),
            (5, 0.7, -17.049_891_498_652_19),
            (5, 9.0, -0.000_129_371_512_092_097_1),
            (5, 15.0, -5.523_557_347_403_535e-6),
        ];
        for (n, x, d) in table {
            let v = dawson_derivative(n, x);
            assert!(close(v, d, 1e-11), "D^({n})({x}) = {v}, want {d}");
        }
    }

    #[test]
    fn derivative_parity_and_origin() {
        for n in 1..6 {
            let s = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(dawson_derivative(n, -1.3), s * dawson_derivative(n, 1.3));
        }
        assert_eq!(dawson_derivative(1, 0.0), 1.0);
        assert_eq!(dawson_derivative(3, 0.0), -4.0);
        assert_eq!(dawson_derivative(5, 0.0), 32.0);
        assert_eq!(dawson_derivative(4, 0.0), 0.0);
    }

    #[test]
    fn growing_integral_matches_quadrature() {
        assert!(growing_integral(0.0).is_zero());
        let v = growing_integral(1.0).to_f64();
        let oracle = adaptive_quad(|y| (y * y).exp(), 0.0, 1.0, 1e-13).unwrap();
        assert!(close(v, oracle, 1e-13));
        assert!((v - 1.46265).abs() < 1e-5);
        assert_eq!(growing_integral(-2.5).to_f64(), -growing_integral(2.5).to_f64());
        let huge = growing_integral(40.0);
        assert!((huge.logmag() - (1600.0 - 80f64.ln())).abs() < 1e-3);
    }

    #[test]
    fn erfcx_reference_values() {
        for (x, v) in [
            (0.5, 0.615_690_344_192_925_9),
            (3.0, 0.179_001_151_181_389_95),
            (10.0, 0.056_140_992_743_822_59),
            (30.0, 0.018_795_888_861_416_75),
        ] {
            assert!(close(erfcx(x), v, 1e-14), "erfcx({x}) = {}", erfcx(x));
        }
    }

    #[test]
    fn gauss_integral_values() {
        assert!((gauss_integral_upper(0.0) - SQRT_PI / 2.0).abs() < 1e-16);
        let oracle = adaptive_quad(|y| (-y * y).exp(), 3.0, f64::INFINITY, 1e-16).unwrap();
        assert!(close(gauss_integral_upper(3.0), oracle, 1e-12));
        let lead = (-9.0f64).exp() / 6.0;
        assert!(close(gauss_integral_upper(3.0), lead, 0.06));
        let s = gauss_integral_upper_scaled(3.0).to_f64();
        assert!(close(s, gauss_integral_upper(3.0), 1e-14));
    }

    #[test]
    fn erfi_asymptotic_partial_sums() {
        let e4 = 4f64.exp();
        let s0 = erfi_asymptotic(2.0, 0).unwrap().value.to_f64();
        assert!(close(s0, e4 / 4.0, 1e-15));
        let s3 = erfi_asymptotic(2.0, 3).unwrap().value.to_f64();
        assert!(close(s3, e4 / 4.0 * (1.0 + 1.0 / 8.0 + 3.0 / 64.0 + 15.0 / 512.0), 1e-15));
        assert_eq!(erfi_asymptotic(0.0, 2), Err(Error::SeriesAtOrigin));
        let neg = erfi_asymptotic(-2.0, 3).unwrap().value.to_f64();
        assert_eq!(neg, -s3);
    }

    #[test]
    fn growing_integral_at_four_against_series() {
        let v = growing_integral(4.0);
        let sum = erfi_asymptotic(4.0, 3).unwrap();
        let direct = 16f64.exp() / 8.0 * (1.0 + 1.0 / 32.0 + 3.0 / 1024.0 + 15.0 / 32768.0);
        assert!(close(sum.value.to_f64(), direct, 1e-15));
        let ratio = (v.sub(sum.value) / sum.next_term).to_f64();
        assert!((1.0..2.0).contains(&ratio), "remainder / next term = {ratio}");
    }
}
