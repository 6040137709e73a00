//! Adaptive Gauss–Kronrod (7/15) quadrature.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_subdivisions: 10_000,
        }
    }
}

impl QuadOptions {
    pub fn abs(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            ..Self::default()
        }
    }

    pub fn rel(tol: f64) -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.error.total_cmp(&o.error).is_eq()
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// `∫_a^b f` with absolute error at most `tol`, default budget.
pub fn adaptive_quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate(f, a, b, &QuadOptions::abs(tol)).map(|e| e.value)
}

/// `∫_a^b f` under the given options. Either bound may be infinite; the
/// half-line is mapped onto `[0, 1)` through `x = a + t/(1-t)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadEstimate> {
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::InvalidInterval { a, b });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(&f, a, b, opts),
        (true, false) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            },
            0.0,
            1.0,
            opts,
        ),
        (false, true) => integrate_finite(
            &|t: f64| {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            },
            0.0,
            1.0,
            opts,
        ),
        (false, false) => {
            let half = QuadOptions {
                abs_tol: opts.abs_tol / 2.0,
                ..*opts
            };
            let map = |sign: f64| {
                let f = &f;
                move |t: f64| {
                    let s = 1.0 - t;
                    f(sign * t / s) / (s * s)
                }
            };
            let l = integrate_finite(&map(-1.0), 0.0, 1.0, &half)?;
            let r = integrate_finite(&map(1.0), 0.0, 1.0, &half)?;
            Ok(QuadEstimate {
                value: l.value + r.value,
                error: l.error + r.error,
                subdivisions: l.subdivisions + r.subdivisions,
            })
        }
    }
}

fn integrate_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadEstimate> {
    let first = gk15(f, a, b)?;
    let mut heap = BinaryHeap::new();
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    let mut subdivisions = 0;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            let (v, e) = totals(&heap);
            if e <= opts.abs_tol.max(opts.rel_tol * v.abs()) {
                return Ok(QuadEstimate {
                    value: v,
                    error: e,
                    subdivisions,
                });
            }
            value = v;
            error = e;
        }
        if subdivisions >= opts.max_subdivisions {
            let (v, e) = totals(&heap);
            return Err(Error::QuadratureNotConverged {
                estimate: v,
                error: e,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            let (v, e) = totals(&heap);
            return Err(Error::QuadratureNotConverged {
                estimate: v,
                error: e,
                subdivisions,
            });
        }
        let l = gk15(f, worst.a, mid)?;
        let r = gk15(f, mid, worst.b)?;
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        subdivisions += 1;
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    heap.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { x })
        }
    };
    let fc = eval(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut resabs = kronrod.abs();
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let f1 = eval(c - h * x)?;
        let f2 = eval(c + h * x)?;
        kronrod += w * (f1 + f2);
        resabs += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * h;
    let roundoff = 50.0 * f64::EPSILON * resabs * h.abs();
    Ok(Segment {
        a,
        b,
        value,
        error: ((kronrod - gauss) * h).abs().max(roundoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_on_unit_interval() {
        let oracle: f64 = {
            let mut s = 0.0;
            let mut fact = 1.0;
            for k in 0..30 {
                if k > 0 {
                    fact *= k as f64;
                }
                s += (-1f64).powi(k) / (fact * (2 * k + 1) as f64);
            }
            s
        };
        let v = adaptive_quad(|y| (-y * y).exp(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - 0.746_824_1).abs() < 1e-7);
    }

    #[test]
    fn odd_integrand_vanishes() {
        assert!(adaptive_quad(|y| y, -1.0, 1.0, 1e-12).unwrap().abs() < 1e-15);
    }

    #[test]
    fn whole_line_gaussian() {
        let v = adaptive_quad(|y| (-y * y).exp(), f64::NEG_INFINITY, f64::INFINITY, 1e-10).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn singular_integrand_fails() {
        let r = integrate(|y: f64| 1.0 / y.abs().sqrt().max(1e-300), -1.0, 1.0, &QuadOptions {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_subdivisions: 200,
        });
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn reports_bad_interval_and_nan() {
        assert!(matches!(adaptive_quad(|y| y, 1.0, 0.0, 1e-8), Err(Error::InvalidInterval { .. })));
        assert!(matches!(
            adaptive_quad(|_| f64::NAN, 0.0, 1.0, 1e-8),
            Err(Error::NonFiniteIntegrand { .. })
        ));
    }
}
