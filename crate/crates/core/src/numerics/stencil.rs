//! Finite-difference derivatives on uniform grids.
//!
//! Interior points use the 7-point central stencil (order 6). Points within
//! three cells of an edge use one-sided stencils on the nearest
//! `min(len, 6 + order)` points, which keeps order 6 at the boundary.

use crate::error::{Error, Result};
use crate::numerics::grid::Grid;

/// Points on either side of the central stencil.
pub const STENCIL_HALF_WIDTH: usize = 3;

/// Fewest grid points any derivative accepts.
pub const MIN_POINTS: usize = 2 * STENCIL_HALF_WIDTH + 1;

const ACCURACY: usize = 6;

/// Fornberg's recursion: weights for derivatives `0..=max_order` at `z`
/// from values at `nodes`. Result is indexed `[order][node]`.
pub fn fornberg_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// `d/dq` of grid samples.
pub fn first_derivative(samples: &[f64], grid: &Grid) -> Result<Vec<f64>> {
    derivative(samples, grid, 1)
}

/// `d²/dq²` of grid samples.
pub fn second_derivative(samples: &[f64], grid: &Grid) -> Result<Vec<f64>> {
    derivative(samples, grid, 2)
}

/// Derivative of order 1 or 2 of grid samples.
pub fn derivative(samples: &[f64], grid: &Grid, order: usize) -> Result<Vec<f64>> {
    let n = grid.len();
    if n < MIN_POINTS {
        return Err(Error::TooFewPoints {
            len: n,
            needed: MIN_POINTS,
        });
    }
    if samples.len() != n {
        return Err(Error::DimensionMismatch {
            got: samples.len(),
            expected: n,
        });
    }
    let scale = grid.spacing().powi(order as i32);
    let hw = STENCIL_HALF_WIDTH;
    let offsets: Vec<f64> = (0..=2 * hw).map(|k| k as f64 - hw as f64).collect();
    let central = fornberg_weights(0.0, &offsets, order).swap_remove(order);

    let width = n.min(ACCURACY + order);
    let edge_nodes: Vec<f64> = (0..width).map(|k| k as f64).collect();
    let left: Vec<Vec<f64>> = (0..hw)
        .map(|i| fornberg_weights(i as f64, &edge_nodes, order).swap_remove(order))
        .collect();

    let mut out = vec![0.0; n];
    for i in hw..n - hw {
        let window = &samples[i - hw..=i + hw];
        out[i] = dot(&central, window) / scale;
    }
    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    for (i, w) in left.iter().enumerate() {
        out[i] = dot(w, &samples[..width]) / scale;
        let tail: Vec<f64> = samples[n - width..].iter().rev().copied().collect();
        out[n - 1 - i] = sign * dot(w, &tail) / scale;
    }
    Ok(out)
}

fn dot(w: &[f64], v: &[f64]) -> f64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup_err(g: &Grid, f: impl Fn(f64) -> f64, d2: impl Fn(f64) -> f64) -> f64 {
        let s: Vec<f64> = g.points().iter().map(|&q| f(q)).collect();
        let d = second_derivative(&s, g).unwrap();
        g.points()
            .iter()
            .zip(&d)
            .map(|(&q, v)| (v - d2(q)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn central_weights_are_classical() {
        let c = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(c[2], vec![1.0, -2.0, 1.0]);
        assert_eq!(c[1], vec![-0.5, 0.0, 0.5]);
    }

    #[test]
    fn quadratic_is_exact() {
        let g = Grid::symmetric(2.0, 0.25).unwrap();
        assert!(sup_err(&g, |q| q * q, |_| 2.0) < 1e-10);
    }

    #[test]
    fn gaussian_second_derivative() {
        let g = Grid::with_step(-4.0, 4.0, 1e-2).unwrap();
        let e = sup_err(&g, |q| (-q * q / 2.0).exp(), |q| (q * q - 1.0) * (-q * q / 2.0).exp());
        assert!(e < 1e-8, "{e}");
    }

    #[test]
    fn halving_spacing_gains_order() {
        let a = Grid::with_step(0.0, 3.0, 0.1).unwrap();
        let b = Grid::with_step(0.0, 3.0, 0.05).unwrap();
        let ea = sup_err(&a, f64::sin, |q| -q.sin());
        let eb = sup_err(&b, f64::sin, |q| -q.sin());
        assert!(ea / eb >= 32.0, "{ea} {eb}");
    }

    #[test]
    fn first_derivative_of_cubic() {
        let g = Grid::uniform(-1.0, 1.0, 9).unwrap();
        let s: Vec<f64> = g.points().iter().map(|q| q * q * q).collect();
        let d = first_derivative(&s, &g).unwrap();
        for (q, v) in g.points().iter().zip(d) {
            assert!((v - 3.0 * q * q).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_points() {
        let g = Grid::uniform(0.0, 1.0, 6).unwrap();
        assert_eq!(
            second_derivative(&[0.0; 6], &g),
            Err(Error::TooFewPoints { len: 6, needed: 7 })
        );
    }
}
