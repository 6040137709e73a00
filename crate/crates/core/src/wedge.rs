//! The sector reached by `q → -ir`.
//!
//! There the oscillator becomes `-H_osc(r)`, the first mode is
//! `f(r) = G(r) = ∫_r^∞ e^{-y²} dy` and the partner solves
//! `g'' + 2r g' = 2f` from `g(0) = g'(0) = 0`. Everything lives on the
//! half-line `r ∈ [0, R]`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{pair_overlaps, JordanBlock, PairOverlaps, PairProfile};
use crate::modes::{Hamiltonian, ModeFamily, Parity, SectorTag};
use crate::numerics::{
    erfcx, gauss_integral_upper, gauss_integral_upper_scaled, integrate, integrate_to_points, Grid, LogScaledReal,
    OdeOptions, QuadOptions, ScaledComplex, Trajectory, SQRT_PI,
};
use crate::verify::{stationary_residual, timedep_residual, ResidualReport};

/// Shortest domain accepted by [`wedge_inner_products`].
pub const MIN_WEDGE_DOMAIN: f64 = 8.0;
pub const TAIL_BOUND: f64 = 1e-10;
pub const TIME_DRIFT_BOUND: f64 = 1e-12;

const WEDGE_ODE_TOL: f64 = 1e-12;

pub fn wedge_f(r: f64) -> f64 {
    gauss_integral_upper(r)
}

/// `f'(r) = -e^{-r²}`.
pub fn wedge_f_prime(r: f64) -> f64 {
    -(-r * r).exp()
}

#[derive(Debug, Clone)]
pub struct WedgePair {
    grid: Grid,
    g: Vec<f64>,
    dg: Vec<f64>,
    trajectory: Trajectory,
}

/// Integrate `g` over the grid, which must start at `r = 0`.
pub fn make_wedge_pair(grid: &Grid) -> Result<WedgePair> {
    if grid.start() != 0.0 {
        return Err(Error::InvalidGrid("wedge grid must start at r = 0".into()));
    }
    let rhs = |r: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = 2.0 * wedge_f(r) - 2.0 * r * y[1];
    };
    let sol = integrate_to_points(rhs, &[0.0, 0.0], (0.0, grid.end()), &OdeOptions::with_tol(WEDGE_ODE_TOL), grid.points())?;
    Ok(WedgePair {
        grid: grid.clone(),
        g: sol.samples.iter().map(|s| s[0]).collect(),
        dg: sol.samples.iter().map(|s| s[1]).collect(),
        trajectory: sol.trajectory,
    })
}

impl WedgePair {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn domain(&self) -> (f64, f64) {
        (0.0, self.grid.end())
    }

    pub fn g_samples(&self) -> &[f64] {
        &self.g
    }

    pub fn dg_samples(&self) -> &[f64] {
        &self.dg
    }

    pub fn f_samples(&self) -> Vec<f64> {
        self.grid.points().iter().map(|&r| wedge_f(r)).collect()
    }

    /// `(g, g')` at any `r` in the domain.
    pub fn g_at(&self, r: f64) -> Result<(f64, f64)> {
        let y = self.trajectory.eval(r).ok_or(Error::OutOfRange {
            q: r,
            lo: 0.0,
            hi: self.grid.end(),
        })?;
        Ok((y[0], y[1]))
    }
}

impl PairProfile for WedgePair {
    fn fg(&self, x: f64) -> Result<(Complex64, Complex64)> {
        let (g, _) = self.g_at(x)?;
        Ok((Complex64::new(wedge_f(x), 0.0), Complex64::new(g, 0.0)))
    }
}

/// `g(r)` from a pair integrated on `[0, domain_end]`.
pub fn wedge_g(r: f64, domain_end: f64) -> Result<f64> {
    if !(0.0..=domain_end).contains(&r) {
        return Err(Error::OutOfRange {
            q: r,
            lo: 0.0,
            hi: domain_end,
        });
    }
    let grid = Grid::uniform(0.0, domain_end, 2)?;
    Ok(make_wedge_pair(&grid)?.g_at(r)?.0)
}

/// `J(s) = ∫₀^s e^{v²} G(v) dv`, so that `g'(r) = 2 e^{-r²} J(r)`.
fn j_integral(s: f64) -> f64 {
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        ..QuadOptions::default()
    };
    if s == 0.0 {
        return 0.0;
    }
    integrate(|v| 0.5 * SQRT_PI * erfcx(v), 0.0, s, &opts)
        .map(|e| e.value)
        .unwrap_or(f64::NAN)
}

/// `g(∞) = ∫₀^∞ 2 e^{-s²} J(s) ds` under the `(0, 0)` baseline.
pub fn wedge_g_limit() -> f64 {
    let opts = QuadOptions {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        ..QuadOptions::default()
    };
    integrate(|s| 2.0 * (-s * s).exp() * j_integral(s), 0.0, f64::INFINITY, &opts)
        .map(|e| e.value)
        .unwrap_or(f64::NAN)
}

/// `g(r) - g(∞) = -2 e^{-r²} ∫₀^∞ e^{-2ru - u²} J(r + u) du`, free of
/// cancellation for large `r`.
pub fn wedge_g_tail(r: f64) -> LogScaledReal {
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-11,
        ..QuadOptions::default()
    };
    let integral = integrate(|u| (-u * (2.0 * r + u)).exp() * j_integral(r + u), 0.0, f64::INFINITY, &opts)
        .map(|e| e.value)
        .unwrap_or(f64::NAN);
    LogScaledReal::from_parts(-2.0 * integral, -r * r)
}

/// `(g(r) - g(∞)) · (-4r e^{r²} / ln r²)`; tends to 1 logarithmically slowly.
pub fn wedge_g_tail_ratio(r: f64) -> f64 {
    wedge_g_tail(r).mul_exp(r * r).to_f64() * (-4.0 * r / (r * r).ln())
}

/// `2r e^{r²} G(r)`, which lies in `[1 - 1/(2r²), 1]` for `r > 0`.
pub fn wedge_f_tail_ratio(r: f64) -> f64 {
    2.0 * r * gauss_integral_upper_scaled(r).mul_exp(r * r).to_f64()
}

/// `ψ̂₀(r) = e^{r²/2} G(r)`, eigenvalue `+1/2` under the rotated operator.
pub fn wedge_ground_mode() -> ModeFamily {
    ModeFamily::stationary(SectorTag::WedgeGround, 0.5, Parity::None, Hamiltonian::RotatedOscillator, |r| {
        gauss_integral_upper_scaled(r).mul_exp(0.5 * r * r)
    })
}

/// `e^{-it/2} e^{r²/2} (f t + i g)` under the rotated operator; NaN outside
/// the pair's domain.
pub fn wedge_linear_mode(pair: Arc<WedgePair>) -> ModeFamily {
    ModeFamily::evolving(SectorTag::WedgeLinear, Parity::None, Hamiltonian::RotatedOscillator, move |r, t| {
        let Ok((g, _)) = pair.g_at(r) else {
            let nan = ScaledComplex::new(Complex64::new(f64::NAN, f64::NAN), 0.0);
            return (nan, nan);
        };
        let f = wedge_f(r);
        let phase = Complex64::from_polar(1.0, -0.5 * t);
        let body = Complex64::new(f * t, g);
        let v = ScaledComplex::new(phase * body, 0.5 * r * r);
        let dt = ScaledComplex::new(phase * (Complex64::new(f, 0.0) - Complex64::new(0.0, 0.5) * body), 0.5 * r * r);
        (v, dt)
    })
}

/// `sup |-H_osc u - E u| / sup |u|` for a stationary profile.
pub fn rotated_residual(mode: &ModeFamily, energy: f64, grid: &Grid) -> Result<ResidualReport> {
    if mode.hamiltonian() != Hamiltonian::RotatedOscillator {
        return Err(Error::Config(format!("{} does not evolve under the rotated operator", mode.sector())));
    }
    stationary_residual(mode, energy, grid)
}

/// Time-dependent residual of an evolving wedge mode.
pub fn rotated_timedep_residual(mode: &ModeFamily, grid: &Grid, times: &[f64]) -> Result<ResidualReport> {
    if mode.hamiltonian() != Hamiltonian::RotatedOscillator {
        return Err(Error::Config(format!("{} does not evolve under the rotated operator", mode.sector())));
    }
    timedep_residual(mode, grid, times)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WedgeInnerProducts {
    pub domain: (f64, f64),
    pub tail_estimate: f64,
    pub times: Vec<f64>,
    pub overlaps: Vec<PairOverlaps>,
    pub time_drift: f64,
}

/// The four pair overlaps at each time, with a tail bound beyond `R` and a
/// time-independence check.
pub fn wedge_inner_products(pair: &WedgePair, times: &[f64]) -> Result<WedgeInnerProducts> {
    let (r0, r1) = pair.domain();
    if r1 < MIN_WEDGE_DOMAIN {
        return Err(Error::DomainTooShort {
            r: r1,
            min: MIN_WEDGE_DOMAIN,
        });
    }
    // ∫_R^∞ G = e^{-R²}/2 - R G(R); every integrand is at most (1 + 2 sup|g|) |f|.
    let g_sup = pair.g_samples().iter().fold(0.0f64, |m, g| m.max(g.abs()));
    let f_tail = gauss_integral_upper_scaled(r1).mul_f64(-r1).add(LogScaledReal::exp(-r1 * r1).mul_f64(0.5));
    let tail_estimate = (1.0 + 2.0 * g_sup) * f_tail.to_f64().abs();
    if tail_estimate > TAIL_BOUND {
        return Err(Error::TailTooLarge {
            tail: tail_estimate,
            r: r1,
            bound: TAIL_BOUND,
        });
    }
    let block = JordanBlock::new(0.5);
    let overlaps = times
        .iter()
        .map(|&t| pair_overlaps(pair, &block, t, (r0, r1)))
        .collect::<Result<Vec<_>>>()?;
    let time_drift = overlaps
        .iter()
        .map(|o| o.max_abs_diff(&overlaps[0]))
        .fold(0.0, f64::max);
    if time_drift > TIME_DRIFT_BOUND {
        return Err(Error::TimeDependent {
            drift: time_drift,
            bound: TIME_DRIFT_BOUND,
        });
    }
    Ok(WedgeInnerProducts {
        domain: (r0, r1),
        tail_estimate,
        times: times.to_vec(),
        overlaps,
        time_drift,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinateMapReport {
    /// Taylor coefficients of the real-axis solution `F(q)` of `f'' - 2qf' = 0`.
    pub real_axis: Vec<f64>,
    /// Coefficients of the wedge solution from its own recurrence, started at `(0, -i)`.
    pub wedge: Vec<Complex64>,
    /// `max_k |(-i)^k a_k - b_k|`.
    pub transport_mismatch: f64,
    /// `max_k |[i F(-ir) + G(r)]_k - [√π/2]_k|`.
    pub gauss_mismatch: f64,
}

/// Compare the first `n` Taylor coefficients at the origin after `q → -ir`.
pub fn coordinate_map_check(n: usize) -> CoordinateMapReport {
    let mut a = vec![0.0; n.max(2)];
    a[1] = 1.0;
    for k in 0..n.saturating_sub(2) {
        a[k + 2] = 2.0 * k as f64 * a[k] / ((k + 2) * (k + 1)) as f64;
    }
    let mut b = vec![Complex64::new(0.0, 0.0); n.max(2)];
    b[1] = Complex64::new(0.0, -1.0);
    for k in 0..n.saturating_sub(2) {
        b[k + 2] = b[k] * (-2.0 * k as f64 / ((k + 2) * (k + 1)) as f64);
    }
    let minus_i = Complex64::new(0.0, -1.0);
    let transport_mismatch = (0..n)
        .map(|k| (minus_i.powu(k as u32) * a[k] - b[k]).norm())
        .fold(0.0, f64::max);

    // G(r) = √π/2 - Σ (-1)^m r^{2m+1} / (m! (2m+1))
    let mut gauss = vec![0.0; n.max(2)];
    gauss[0] = 0.5 * SQRT_PI;
    let mut fact = 1.0;
    for m in 0..n {
        if m > 0 {
            fact *= m as f64;
        }
        let k = 2 * m + 1;
        if k < n {
            gauss[k] = -(-1f64).powi(m as i32) / (fact * k as f64);
        }
    }
    let gauss_mismatch = (0..n)
        .map(|k| {
            let lhs = Complex64::new(0.0, 1.0) * b[k] + gauss[k];
            let rhs = if k == 0 { 0.5 * SQRT_PI } else { 0.0 };
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max);
    a.truncate(n);
    b.truncate(n);
    CoordinateMapReport {
        real_axis: a,
        wedge: b,
        transport_mismatch,
        gauss_mismatch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{first_derivative, second_derivative};

    fn grid(r: f64) -> Grid {
        Grid::with_step(0.0, r, 1.0 / 128.0).unwrap()
    }

    #[test]
    fn f_values() {
        assert!((wedge_f(0.0) - SQRT_PI / 2.0).abs() < 1e-16);
        let r = 4.0;
        let ratio = wedge_f_tail_ratio(r);
        assert!(ratio <= 1.0 && ratio >= 1.0 - 1.0 / (2.0 * r * r));
        let g = grid(3.0);
        let f: Vec<f64> = g.points().iter().map(|&r| wedge_f(r)).collect();
        let d = first_derivative(&f, &g).unwrap();
        for (i, &r) in g.points().iter().enumerate() {
            assert!((d[i] - wedge_f_prime(r)).abs() < 1e-10);
        }
    }

    #[test]
    fn g_ode_residual_and_baseline() {
        let gr = grid(8.0);
        let p = make_wedge_pair(&gr).unwrap();
        assert_eq!(p.g_at(0.0).unwrap(), (0.0, 0.0));
        let g2 = second_derivative(p.g_samples(), &gr).unwrap();
        for i in 5..gr.len() - 5 {
            let r = gr.points()[i];
            let res = g2[i] + 2.0 * r * p.dg_samples()[i] - 2.0 * wedge_f(r);
            assert!(res.abs() <= 1e-8, "r={r} res={res}");
        }
    }

    #[test]
    fn g_limit_and_tail_agree_with_ode() {
        let p = make_wedge_pair(&grid(8.0)).unwrap();
        let limit = wedge_g_limit();
        assert!((limit - 0.614_29).abs() < 1e-4, "{limit}");
        for r in [1.0, 2.0, 3.0] {
            let direct = p.g_at(r).unwrap().0 - limit;
            let tail = wedge_g_tail(r).to_f64();
            assert!((direct - tail).abs() < 1e-9, "r={r}: {direct} vs {tail}");
        }
    }

    #[test]
    fn ground_mode_residual() {
        let r = rotated_residual(&wedge_ground_mode(), 0.5, &grid(6.0)).unwrap();
        assert!(r.sup_residual <= 1e-7, "{}", r.sup_residual);
        assert!(rotated_residual(&ModeFamily::standard(0), 0.5, &grid(4.0)).is_err());
    }

    #[test]
    fn linear_mode_residual() {
        let g = grid(4.0);
        let p = Arc::new(make_wedge_pair(&g).unwrap());
        let r = rotated_timedep_residual(&wedge_linear_mode(p), &g, &[0.0, 1.0, 5.0]).unwrap();
        assert!(r.sup_residual <= 1e-7, "{}", r.sup_residual);
    }

    #[test]
    fn inner_products() {
        let p = make_wedge_pair(&grid(8.0)).unwrap();
        let ip = wedge_inner_products(&p, &[0.0, 1.0, 10.0]).unwrap();
        assert!(ip.tail_estimate < TAIL_BOUND);
        assert!(ip.overlaps.iter().all(|o| o.zero_norm == Complex64::new(0.0, 0.0)));
        assert!(ip.overlaps.iter().all(PairOverlaps::is_finite));
        let l_r0 = ip.overlaps[0].l_r0.re;
        assert!((l_r0 - 0.5).abs() < 1e-10, "∫G = 1/2, got {l_r0}");
        let short = make_wedge_pair(&grid(4.0)).unwrap();
        assert!(matches!(wedge_inner_products(&short, &[0.0]), Err(Error::DomainTooShort { .. })));
    }

    #[test]
    fn coordinate_map() {
        let c = coordinate_map_check(10);
        assert_eq!(c.real_axis.len(), 10);
        assert!(c.transport_mismatch < 1e-15);
        assert!(c.gauss_mismatch < 1e-15);
    }
}
