use std::cmp::Ordering;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex64;

const RENORM_HI: f64 = 1e150;
const RENORM_LO: f64 = 1e-150;

/// A real number stored as `mantissa · e^scale`.
///
/// Plain values enter with `scale = 0`, so conversion back is exact. Products
/// and quotients add or subtract scales, which keeps `e^{q²}`-sized factors
/// representable far beyond the double-precision overflow point.
#[derive(Debug, Clone, Copy)]
pub struct LogScaledReal {
    mantissa: f64,
    scale: f64,
}

impl LogScaledReal {
    pub const ZERO: Self = Self {
        mantissa: 0.0,
        scale: 0.0,
    };
    pub const ONE: Self = Self {
        mantissa: 1.0,
        scale: 0.0,
    };

    /// Value `mantissa · e^scale`.
    pub fn from_parts(mantissa: f64, scale: f64) -> Self {
        Self { mantissa, scale }.renormalized()
    }

    /// Value `sign · e^logmag`; a zero sign yields zero.
    pub fn from_sign_logmag(sign: i8, logmag: f64) -> Self {
        match sign.signum() {
            0 => Self::ZERO,
            s => Self {
                mantissa: f64::from(s),
                scale: logmag,
            },
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self {
            mantissa: x,
            scale: 0.0,
        }
    }

    /// `e^x`, never overflowing.
    pub fn exp(x: f64) -> Self {
        Self::from_sign_logmag(1, x)
    }

    pub fn sign(&self) -> i8 {
        match self.mantissa.partial_cmp(&0.0) {
            Some(Ordering::Greater) => 1,
            Some(Ordering::Less) => -1,
            _ => 0,
        }
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn logmag(&self) -> f64 {
        if self.mantissa == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.mantissa.abs().ln() + self.scale
        }
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.is_finite() && self.scale.is_finite()
    }

    /// Plain value; overflows to ±inf or underflows to 0 outside double range.
    pub fn to_f64(&self) -> f64 {
        if self.scale == 0.0 {
            self.mantissa
        } else {
            self.mantissa * self.scale.exp()
        }
    }

    pub fn abs(self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            scale: self.scale,
        }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        Self::from_parts(self.mantissa * x, self.scale)
    }

    /// Multiply by `e^delta`.
    pub fn mul_exp(self, delta: f64) -> Self {
        Self {
            mantissa: self.mantissa,
            scale: self.scale + delta,
        }
    }

    /// Value expressed against a reference scale: `self / e^reference`.
    pub fn relative_to(&self, reference: f64) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * (self.scale - reference).exp()
        }
    }

    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let s = self.scale.max(other.scale);
        Self::from_parts(self.relative_to(s) + other.relative_to(s), s)
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(-other)
    }

    fn renormalized(self) -> Self {
        let m = self.mantissa.abs();
        if m == 0.0 || !m.is_finite() {
            return Self {
                mantissa: self.mantissa,
                scale: if m == 0.0 { 0.0 } else { self.scale },
            };
        }
        if !(RENORM_LO..=RENORM_HI).contains(&m) {
            let l = m.ln();
            Self {
                mantissa: self.mantissa.signum(),
                scale: self.scale + l,
            }
        } else {
            self
        }
    }
}

impl PartialEq for LogScaledReal {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.sign() == other.sign() && self.logmag() == other.logmag()
    }
}

impl Mul for LogScaledReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_parts(self.mantissa * rhs.mantissa, self.scale + rhs.scale)
    }
}

impl Div for LogScaledReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::from_parts(self.mantissa / rhs.mantissa, self.scale - rhs.scale)
    }
}

impl Neg for LogScaledReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            scale: self.scale,
        }
    }
}

/// Complex counterpart of [`LogScaledReal`]: `mantissa · e^scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub scale: f64,
}

impl ScaledComplex {
    pub const ZERO: Self = Self {
        mantissa: Complex64::new(0.0, 0.0),
        scale: 0.0,
    };

    pub fn new(mantissa: Complex64, scale: f64) -> Self {
        Self { mantissa, scale }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0.0)
    }

    pub fn from_real(x: LogScaledReal) -> Self {
        Self::new(Complex64::new(x.mantissa(), 0.0), x.scale())
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.scale == 0.0 {
            self.mantissa
        } else {
            self.mantissa * self.scale.exp()
        }
    }

    pub fn log_abs(&self) -> f64 {
        let n = self.mantissa.norm();
        if n == 0.0 {
            f64::NEG_INFINITY
        } else {
            n.ln() + self.scale
        }
    }

    /// `self / e^reference` as a plain complex number.
    pub fn relative_to(&self, reference: f64) -> Complex64 {
        if self.mantissa == Complex64::new(0.0, 0.0) {
            self.mantissa
        } else {
            self.mantissa * (self.scale - reference).exp()
        }
    }

    pub fn scale_by(self, z: Complex64) -> Self {
        Self::new(self.mantissa * z, self.scale)
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn f64_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
            prop_assert_eq!(LogScaledReal::from_f64(x).to_f64(), x);
        }

        #[test]
        fn product_adds_logs(a in -700.0f64..700.0, b in -700.0f64..700.0) {
            let p = LogScaledReal::exp(a) * LogScaledReal::exp(b);
            prop_assert!((p.logmag() - (a + b)).abs() <= 1e-12 * (a.abs() + b.abs()).max(1.0));
        }
    }
}
