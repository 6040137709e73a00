//! Dormand–Prince 5(4) integration with continuous output.

use crate::error::{Error, Result};
use crate::numerics::grid::Grid;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    pub max_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self::with_tol(1e-10)
    }
}

impl OdeOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            rel_tol: tol,
            abs_tol: tol,
            max_steps: 1_000_000,
            max_step: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone)]
struct Step {
    x0: f64,
    h: f64,
    coeffs: [Vec<f64>; 5],
}

impl Step {
    fn eval(&self, x: f64) -> Vec<f64> {
        let th = (x - self.x0) / self.h;
        let th1 = 1.0 - th;
        let [r1, r2, r3, r4, r5] = &self.coeffs;
        (0..r1.len())
            .map(|i| r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i]))))
            .collect()
    }
}

/// Continuous solution over the integrated span.
#[derive(Debug, Clone)]
pub struct Trajectory {
    start: f64,
    end: f64,
    y0: Vec<f64>,
    steps: Vec<Step>,
}

impl Trajectory {
    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    /// State at `x` by dense interpolation; `None` outside the span.
    pub fn eval(&self, x: f64) -> Option<Vec<f64>> {
        let (lo, hi) = if self.start <= self.end {
            (self.start, self.end)
        } else {
            (self.end, self.start)
        };
        if !(lo..=hi).contains(&x) {
            return None;
        }
        if self.steps.is_empty() || x == self.start {
            return Some(self.y0.clone());
        }
        let dir = (self.end - self.start).signum();
        let idx = self
            .steps
            .partition_point(|s| dir * (s.x0 + s.h - x) < 0.0)
            .min(self.steps.len() - 1);
        Some(self.steps[idx].eval(x))
    }
}

/// Result of an integration: the continuous trajectory plus exact samples at
/// the requested points.
#[derive(Debug, Clone)]
pub struct OdeSolution {
    pub trajectory: Trajectory,
    pub points: Vec<f64>,
    pub samples: Vec<Vec<f64>>,
}

/// Integrate `y' = rhs(x, y)` over `span` and sample onto the grid points
/// that lie inside it.
pub fn ode_integrate<F>(rhs: F, y0: &[f64], span: (f64, f64), tol: f64, grid: &Grid) -> Result<OdeSolution>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (lo, hi) = if span.0 <= span.1 { span } else { (span.1, span.0) };
    let mut points: Vec<f64> = grid.points().iter().copied().filter(|x| (lo..=hi).contains(x)).collect();
    if span.1 < span.0 {
        points.reverse();
    }
    integrate_to_points(rhs, y0, span, &OdeOptions::with_tol(tol), &points)
}

/// Integrate over `span`, landing a step exactly on each of `points`
/// (ordered in the direction of integration).
pub fn integrate_to_points<F>(
    rhs: F,
    y0: &[f64],
    span: (f64, f64),
    opts: &OdeOptions,
    points: &[f64],
) -> Result<OdeSolution>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let (x0, x1) = span;
    let dim = y0.len();
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let mut targets: Vec<f64> = points.to_vec();
    if targets.last() != Some(&x1) {
        targets.push(x1);
    }

    let mut x = x0;
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
    rhs(x, &y, &mut k[0]);
    check_finite(x, &k[0])?;

    let span_len = (x1 - x0).abs();
    let mut h = initial_step(&y, &k[0], span_len, opts);
    let mut steps = Vec::new();
    let mut samples = Vec::with_capacity(points.len());
    let mut ti = 0;
    while ti < targets.len() && dir * (targets[ti] - x) <= 0.0 {
        if ti < points.len() {
            samples.push(y.clone());
        }
        ti += 1;
    }

    let mut ytmp = vec![0.0; dim];
    let mut ynew = vec![0.0; dim];
    let mut rejected_last = false;
    let mut count = 0usize;
    while ti < targets.len() {
        count += 1;
        if count > opts.max_steps {
            return Err(Error::StepSizeCollapse { x, h });
        }
        let target = targets[ti];
        let remaining = (target - x).abs();
        let mut hs = h.min(opts.max_step);
        let lands = hs >= remaining * (1.0 - 1e-12);
        if lands {
            hs = remaining;
        }
        if hs < 1e-14 * x.abs().max(1.0) && !lands {
            return Err(Error::StepSizeCollapse { x, h: hs });
        }
        let hd = dir * hs;

        for s in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                ytmp[i] = y[i] + hd * acc;
            }
            rhs(x + C[s] * hd, &ytmp, &mut k[s]);
        }
        // Stage 7 slot holds f(x+h, y5) since A[6] are the 5th-order weights.
        ynew.copy_from_slice(&ytmp);

        let mut err = 0.0;
        let mut finite = true;
        for i in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= hd;
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(ynew[i].abs());
            err += (e / sc).powi(2);
            finite &= ynew[i].is_finite() && e.is_finite();
        }
        let err = if finite { (err / dim.max(1) as f64).sqrt() } else { f64::INFINITY };

        if err <= 1.0 {
            let ydiff: Vec<f64> = (0..dim).map(|i| ynew[i] - y[i]).collect();
            let bspl: Vec<f64> = (0..dim).map(|i| hd * k[0][i] - ydiff[i]).collect();
            let r4: Vec<f64> = (0..dim).map(|i| ydiff[i] - hd * k[6][i] - bspl[i]).collect();
            let r5: Vec<f64> = (0..dim)
                .map(|i| hd * k.iter().zip(&D).map(|(kj, d)| d * kj[i]).sum::<f64>())
                .collect();
            steps.push(Step {
                x0: x,
                h: hd,
                coeffs: [y.clone(), ydiff, bspl, r4, r5],
            });
            x = if lands { target } else { x + hd };
            y.copy_from_slice(&ynew);
            let last = k[6].clone();
            k[0] = last;
            if lands {
                if ti < points.len() {
                    samples.push(y.clone());
                }
                ti += 1;
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            let fac = if rejected_last { fac.min(1.0) } else { fac };
            if !lands || hs >= h {
                h = hs * fac;
            } else {
                h = h.max(hs * fac);
            }
            rejected_last = false;
        } else {
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 1.0) } else { 0.1 };
            h = hs * fac;
            rejected_last = true;
            if h < 1e-14 * x.abs().max(1.0) {
                return Err(Error::StepSizeCollapse { x, h });
            }
        }
    }
    Ok(OdeSolution {
        trajectory: Trajectory {
            start: x0,
            end: x1,
            y0: y0.to_vec(),
            steps,
        },
        points: points.to_vec(),
        samples,
    })
}

fn check_finite(x: f64, v: &[f64]) -> Result<()> {
    if v.iter().all(|z| z.is_finite()) {
        Ok(())
    } else {
        Err(Error::StepSizeCollapse { x, h: 0.0 })
    }
}

fn initial_step(y: &[f64], f: &[f64], span: f64, opts: &OdeOptions) -> f64 {
    let mut d0: f64 = 0.0;
    let mut d1: f64 = 0.0;
    for (yi, fi) in y.iter().zip(f) {
        let sc = opts.abs_tol + opts.rel_tol * yi.abs();
        d0 = d0.max((yi / sc).abs());
        d1 = d1.max((fi / sc).abs());
    }
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(span).min(opts.max_step).max(1e-10 * span)
}
