//! Linear-in-time modes `e^{-iE_n t} e^{-q²/2} (f t + i g)`.
//!
//! With `ψ = e^{-q²/2} u`, `(H - E_n)ψ = e^{-q²/2}(-½u'' + qu' - nu)`. The
//! time-dependent equation then splits into
//!
//! ```text
//! f'' - 2q f' + 2n f = 0
//! g'' - 2q g' + 2n g = -2f
//! ```
//!
//! `f` starts from `R_n(0), R_n'(0)` so that `e^{-q²/2} f = ψ̄_n`, and `g`
//! from `(0, 0)`, giving `g` the parity of `f`. Other choices of `g` differ by
//! multiples of `f` and of the regular solution.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::family::ModeFamily;
use crate::modes::fsector::{fbar_reduced, fbar_reduced_derivative};
use crate::modes::tags::{Hamiltonian, Parity, SectorTag};
use crate::modes::PLAIN_RANGE;
use crate::numerics::{integrate_to_points, Grid, OdeOptions, ScaledComplex, Trajectory};

/// ODE tolerance used to build `f` and `g`.
pub const FG_TOLERANCE: f64 = 1e-12;

/// `f` and `g` for one level, sampled on a symmetric grid and available
/// between grid points through dense output.
#[derive(Debug, Clone)]
pub struct FGPair {
    level: usize,
    grid: Grid,
    f: Vec<f64>,
    df: Vec<f64>,
    g: Vec<f64>,
    dg: Vec<f64>,
    negative: Trajectory,
    positive: Trajectory,
}

/// `(f, f', g, g')` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FGValue {
    pub f: f64,
    pub df: f64,
    pub g: f64,
    pub dg: f64,
}

/// Integrate the level-`level` pair outward from `q = 0` in both directions.
pub fn make_fg_pair(level: usize, grid: &Grid) -> Result<FGPair> {
    if !grid.is_symmetric() {
        return Err(Error::InvalidGrid("FG pair needs a grid symmetric about 0".into()));
    }
    if grid.end() > PLAIN_RANGE {
        return Err(Error::OutOfPlainRange {
            q: grid.end(),
            limit: PLAIN_RANGE,
        });
    }
    let n = level as f64;
    let rhs = move |q: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = 2.0 * q * y[1] - 2.0 * n * y[0];
        dy[2] = y[3];
        dy[3] = 2.0 * q * y[3] - 2.0 * n * y[2] - 2.0 * y[0];
    };
    let y0 = [fbar_reduced(level, 0.0), fbar_reduced_derivative(level, 0.0), 0.0, 0.0];
    let opts = OdeOptions::with_tol(FG_TOLERANCE);

    let pos_pts: Vec<f64> = grid.points().iter().copied().filter(|&q| q >= 0.0).collect();
    let neg_pts: Vec<f64> = grid.points().iter().rev().copied().filter(|&q| q <= 0.0).collect();
    let pos = integrate_to_points(rhs, &y0, (0.0, grid.end()), &opts, &pos_pts)?;
    let neg = integrate_to_points(rhs, &y0, (0.0, grid.start()), &opts, &neg_pts)?;

    let mut states: Vec<&Vec<f64>> = neg.samples.iter().rev().collect();
    let skip = usize::from(pos.points.first() == Some(&0.0) && neg.points.first() == Some(&0.0));
    states.extend(pos.samples.iter().skip(skip));
    debug_assert_eq!(states.len(), grid.len());
    let col = |k: usize| states.iter().map(|s| s[k]).collect::<Vec<f64>>();
    Ok(FGPair {
        level,
        grid: grid.clone(),
        f: col(0),
        df: col(1),
        g: col(2),
        dg: col(3),
        negative: neg.trajectory,
        positive: pos.trajectory,
    })
}

impl FGPair {
    pub fn level(&self) -> usize {
        self.level
    }

    /// `E_n = n + 1/2`.
    pub fn energy(&self) -> f64 {
        self.level as f64 + 0.5
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn df(&self) -> &[f64] {
        &self.df
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn dg(&self) -> &[f64] {
        &self.dg
    }

    /// `(f, f', g, g')` anywhere inside the grid.
    pub fn at(&self, q: f64) -> Result<FGValue> {
        let traj = if q >= 0.0 { &self.positive } else { &self.negative };
        let y = traj.eval(q).ok_or(Error::OutOfRange {
            q,
            lo: self.grid.start(),
            hi: self.grid.end(),
        })?;
        Ok(FGValue {
            f: y[0],
            df: y[1],
            g: y[2],
            dg: y[3],
        })
    }

    /// Parity shared by `f` and `g`.
    pub fn parity(&self) -> Parity {
        Parity::of_level(self.level + 1)
    }
}

/// `e^{-iE t} e^{-q²/2} (f(q) t + i g(q))`.
pub fn linear_mode(pair: &FGPair, q: f64, t: f64) -> Result<Complex64> {
    let v = pair.at(q)?;
    Ok(linear_value(pair.energy(), q, t, v).0.to_complex())
}

fn linear_value(e: f64, q: f64, t: f64, v: FGValue) -> (ScaledComplex, ScaledComplex) {
    let phase = Complex64::from_polar(1.0, -e * t);
    let body = Complex64::new(v.f * t, v.g);
    let value = ScaledComplex::new(phase * body, -0.5 * q * q);
    let dt = ScaledComplex::new(phase * (Complex64::new(v.f, 0.0) - Complex64::new(0.0, e) * body), -0.5 * q * q);
    (value, dt)
}

impl ModeFamily {
    /// `LinearInTime(n)` from a prebuilt pair. Outside the pair's grid the
    /// evaluator returns NaN.
    pub fn linear(pair: Arc<FGPair>) -> Self {
        let e = pair.energy();
        let parity = pair.parity();
        let sector = SectorTag::LinearInTime(pair.level());
        Self::evolving(sector, parity, Hamiltonian::Oscillator, move |q, t| match pair.at(q) {
            Ok(v) => linear_value(e, q, t, v),
            Err(_) => {
                let nan = ScaledComplex::new(Complex64::new(f64::NAN, f64::NAN), 0.0);
                (nan, nan)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{adaptive_quad, growing_integral, second_derivative};

    fn grid() -> Grid {
        Grid::symmetric(4.0, 1.0 / 64.0).unwrap()
    }

    #[test]
    fn level0_initial_data_and_f_prime() {
        let p = make_fg_pair(0, &grid()).unwrap();
        let v = p.at(0.0).unwrap();
        assert_eq!((v.f, v.df, v.g, v.dg), (0.0, 1.0, 0.0, 0.0));
        for q in [0.5, 1.5, 3.0, -2.0] {
            let v = p.at(q).unwrap();
            assert!(((v.df - (q * q).exp()) / (q * q).exp()).abs() < 1e-10);
            let f = growing_integral(q).to_f64();
            assert!(((v.f - f) / f).abs() < 1e-10);
        }
    }

    #[test]
    fn g_is_odd_on_grid() {
        let p = make_fg_pair(0, &grid()).unwrap();
        let n = p.g().len();
        for i in 0..n {
            assert_eq!(p.g()[i], -p.g()[n - 1 - i]);
        }
    }

    #[test]
    fn g_matches_nested_quadrature() {
        // g(q) = -2 ∫₀^q e^{y²} ∫₀^y e^{-z²} F(z) dz dy
        let p = make_fg_pair(0, &grid()).unwrap();
        let inner = |y: f64| adaptive_quad(|z| (-z * z).exp() * growing_integral(z).to_f64(), 0.0, y, 1e-14).unwrap_or(0.0);
        for q in [0.5, 1.0, 2.0] {
            let oracle = -2.0 * adaptive_quad(|y| (y * y).exp() * inner(y), 0.0, q, 1e-12).unwrap();
            assert!((p.at(q).unwrap().g - oracle).abs() < 1e-7, "q={q}");
        }
    }

    #[test]
    fn ode_residuals_small() {
        let g = Grid::symmetric(4.0, 1.0 / 256.0).unwrap();
        for level in 0..3 {
            let p = make_fg_pair(level, &g).unwrap();
            let n = level as f64;
            let f2 = second_derivative(p.f(), &g).unwrap();
            let g2 = second_derivative(p.g(), &g).unwrap();
            for i in 5..g.len() - 5 {
                let q = g.points()[i];
                let scale = p.f()[i].abs().max(p.df()[i].abs()).max(1.0);
                let rf = f2[i] - 2.0 * q * p.df()[i] + 2.0 * n * p.f()[i];
                let rg = g2[i] - 2.0 * q * p.dg()[i] + 2.0 * n * p.g()[i] + 2.0 * p.f()[i];
                assert!(rf.abs() / scale < 1e-8 && rg.abs() / scale < 1e-8, "level {level} q={q}");
            }
        }
    }

    #[test]
    fn linear_mode_at_zero_time() {
        let p = make_fg_pair(0, &grid()).unwrap();
        let q = 1.25;
        let v = linear_mode(&p, q, 0.0).unwrap();
        let g = p.at(q).unwrap().g;
        assert!((v - Complex64::new(0.0, (-q * q / 2.0f64).exp() * g)).norm() < 1e-15);
        assert!(linear_mode(&p, 9.0, 0.0).is_err());
    }

    #[test]
    fn rejects_asymmetric_or_wide_grids() {
        let g = Grid::uniform(0.0, 4.0, 100).unwrap();
        assert!(make_fg_pair(0, &g).is_err());
        let wide = Grid::symmetric(25.0, 0.5).unwrap();
        assert!(matches!(make_fg_pair(0, &wide), Err(Error::OutOfPlainRange { .. })));
    }
}
