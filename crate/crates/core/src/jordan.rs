//! Two-dimensional Jordan blocks `M = E·I + c·σ₊` and their direct sums.
//!
//! Evolution is taken in closed form, `e^{-iMt} = e^{-iEt}(I - i c t σ₊)`,
//! never through a matrix exponential. The metric is `V = σ₁`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Column 2-vector `(a, b)ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateVec2 {
    pub a: Complex64,
    pub b: Complex64,
}

/// Row 2-vector `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowVec2 {
    pub a: Complex64,
    pub b: Complex64,
}

impl StateVec2 {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr()).sqrt()
    }
}

impl RowVec2 {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    /// `row · column`.
    pub fn dot(&self, s: &StateVec2) -> Complex64 {
        self.a * s.a + self.b * s.b
    }
}

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JordanBlock {
    energy: Complex64,
    coupling: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PseudoHermiticity {
    pub holds: bool,
    pub residual: f64,
}

/// Largest elementwise deviation still reported as pseudo-Hermitian.
pub const PSEUDO_HERMITICITY_TOL: f64 = 1e-14;

impl JordanBlock {
    /// Block with real energy and unit coupling.
    pub fn new(energy: f64) -> Self {
        Self {
            energy: Complex64::new(energy, 0.0),
            coupling: ONE,
        }
    }

    /// Block with arbitrary (possibly complex) diagonal and coupling.
    pub fn general(energy: Complex64, coupling: Complex64) -> Self {
        Self { energy, coupling }
    }

    pub fn energy(&self) -> Complex64 {
        self.energy
    }

    pub fn coupling(&self) -> Complex64 {
        self.coupling
    }

    pub fn matrix(&self) -> Matrix2 {
        [[self.energy, self.coupling], [ZERO, self.energy]]
    }

    pub fn apply(&self, s: &StateVec2) -> StateVec2 {
        StateVec2::new(self.energy * s.a + self.coupling * s.b, self.energy * s.b)
    }

    pub fn apply_left(&self, r: &RowVec2) -> RowVec2 {
        RowVec2::new(r.a * self.energy, r.a * self.coupling + r.b * self.energy)
    }

    /// `e^{-iEt}(a - i c t b, b)`.
    pub fn evolve(&self, s: &StateVec2, t: f64) -> StateVec2 {
        let phase = (-I * self.energy * t).exp();
        StateVec2::new(phase * (s.a - I * self.coupling * t * s.b), phase * s.b)
    }

    pub fn right_eigenvector(&self) -> StateVec2 {
        StateVec2::new(ONE, ZERO)
    }

    pub fn left_eigenvector(&self) -> RowVec2 {
        RowVec2::new(ZERO, ONE)
    }

    /// Entries of `(M - E·I)²`, which vanish for every block.
    pub fn nilpotent_residual(&self) -> f64 {
        let n = sub_diag(self.matrix(), self.energy);
        mat_mul(n, n).iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Dimension of the solution space of `(M - E·I)v = 0`.
    pub fn eigenspace_dimension(&self) -> usize {
        let n = sub_diag(self.matrix(), self.energy);
        2 - rank(&DMatrix::from_fn(2, 2, |i, j| n[i][j]))
    }

    /// Compare `σ₁ M σ₁` against `M†` entry by entry.
    pub fn pseudo_hermiticity_check(&self) -> PseudoHermiticity {
        let m = self.matrix();
        let lhs = mat_mul(mat_mul(SIGMA1, m), SIGMA1);
        let rhs = adjoint(m);
        let mut residual = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                residual = residual.max((lhs[i][j] - rhs[i][j]).norm());
            }
        }
        PseudoHermiticity {
            holds: residual <= PSEUDO_HERMITICITY_TOL,
            residual,
        }
    }
}

pub const SIGMA1: Matrix2 = [[ZERO, ONE], [ONE, ZERO]];

/// `⟨s|σ₁|s⟩ = 2 Re(a* b)`.
pub fn v_norm(s: &StateVec2) -> f64 {
    2.0 * (s.a.conj() * s.b).re
}

pub fn mat_mul(x: Matrix2, y: Matrix2) -> Matrix2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn adjoint(m: Matrix2) -> Matrix2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

fn sub_diag(mut m: Matrix2, e: Complex64) -> Matrix2 {
    m[0][0] -= e;
    m[1][1] -= e;
    m
}

fn rank(m: &DMatrix<Complex64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > 1e-12 * smax).count()
}

/// Eigenvalues of a general 2×2 matrix from its characteristic polynomial.
pub fn eigenvalues_2x2(m: Matrix2) -> [Complex64; 2] {
    let half_trace = (m[0][0] + m[1][1]) * 0.5;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (half_trace * half_trace - det).sqrt();
    [half_trace + disc, half_trace - disc]
}

/// Direct sum of blocks at `E_n = n + 1/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDiagonalH {
    blocks: Vec<JordanBlock>,
}

/// One block per level `n = 0..levels`.
pub fn assemble(levels: usize) -> Result<BlockDiagonalH> {
    if levels == 0 {
        return Err(Error::NoLevels);
    }
    Ok(BlockDiagonalH {
        blocks: (0..levels).map(|n| JordanBlock::new(n as f64 + 0.5)).collect(),
    })
}

impl BlockDiagonalH {
    pub fn from_blocks(blocks: Vec<JordanBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::NoLevels);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        2 * self.blocks.len()
    }

    /// Dense form of the full matrix.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (k, b) in self.blocks.iter().enumerate() {
            let bm = b.matrix();
            for i in 0..2 {
                for j in 0..2 {
                    m[(2 * k + i, 2 * k + j)] = bm[i][j];
                }
            }
        }
        m
    }

    /// Direct sum of `σ₁`.
    pub fn metric(&self) -> DMatrix<Complex64> {
        let mut v = DMatrix::zeros(self.dim(), self.dim());
        for k in 0..self.blocks.len() {
            v[(2 * k, 2 * k + 1)] = ONE;
            v[(2 * k + 1, 2 * k)] = ONE;
        }
        v
    }

    fn split(&self, state: &[Complex64]) -> Result<Vec<StateVec2>> {
        if state.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                got: state.len(),
                expected: self.dim(),
            });
        }
        Ok(state.chunks(2).map(|c| StateVec2::new(c[0], c[1])).collect())
    }

    /// Blockwise closed-form evolution of a `2·levels` state.
    pub fn evolve(&self, state: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
        let parts = self.split(state)?;
        Ok(self
            .blocks
            .iter()
            .zip(parts)
            .flat_map(|(b, s)| {
                let e = b.evolve(&s, t);
                [e.a, e.b]
            })
            .collect())
    }

    /// `⟨s|V|s⟩` summed over blocks.
    pub fn v_norm(&self, state: &[Complex64]) -> Result<f64> {
        Ok(self.split(state)?.iter().map(v_norm).sum())
    }

    /// Pseudo-Hermiticity of the assembled matrix under the assembled metric.
    pub fn pseudo_hermiticity_check(&self) -> PseudoHermiticity {
        let v = self.metric();
        let m = self.matrix();
        let lhs = &v * &m * &v;
        let rhs = m.adjoint();
        let residual = (lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
        PseudoHermiticity {
            holds: residual <= PSEUDO_HERMITICITY_TOL,
            residual,
        }
    }
}

/// Closed-form right and left solutions built from a mode pair `(f, g)`,
/// with their analytic time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSolutions {
    pub right: StateVec2,
    pub left: RowVec2,
    pub right_dt: StateVec2,
    pub left_dt: RowVec2,
}

/// Right `(e^{-iEt}(g - ictf), e^{-iEt}f)ᵀ` and left
/// `(e^{iEt}f*, e^{iEt}(g* + ictf*))` at one point.
pub fn schrodinger_pair_solutions(block: &JordanBlock, f: Complex64, g: Complex64, t: f64) -> PairSolutions {
    let e = block.energy();
    let c = block.coupling();
    let down = (-I * e * t).exp();
    let up = (I * e * t).exp();
    let (fs, gs) = (f.conj(), g.conj());
    let right = StateVec2::new(down * (g - I * c * t * f), down * f);
    let left = RowVec2::new(up * fs, up * (gs + I * c * t * fs));
    let right_dt = StateVec2::new(-I * e * right.a - I * c * down * f, -I * e * right.b);
    let left_dt = RowVec2::new(I * e * left.a, I * e * left.b + I * c * up * fs);
    PairSolutions {
        right,
        left,
        right_dt,
        left_dt,
    }
}

/// Largest component of `i∂ₜR - MR` and `-i∂ₜL - LM` over the samples.
pub fn pair_solution_residual(block: &JordanBlock, f: &[f64], g: &[f64], t: f64) -> f64 {
    f.iter()
        .zip(g)
        .map(|(&f, &g)| {
            let s = schrodinger_pair_solutions(block, Complex64::new(f, 0.0), Complex64::new(g, 0.0), t);
            let mr = block.apply(&s.right);
            let lm = block.apply_left(&s.left);
            let scale = f.abs().max(g.abs()).max(1.0);
            [
                I * s.right_dt.a - mr.a,
                I * s.right_dt.b - mr.b,
                -I * s.left_dt.a - lm.a,
                -I * s.left_dt.b - lm.b,
            ]
            .iter()
            .map(|z| z.norm() / scale)
            .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// A pair of profiles `f(x), g(x)` evaluable on some domain.
pub trait PairProfile {
    fn fg(&self, x: f64) -> Result<(Complex64, Complex64)>;
}

/// The four overlaps between the pair solutions and the eigen-solutions at
/// time `t`, each integrated over `domain`:
/// `L·R = f*g + g*f`, `L₀·R₀ = 0`, `L·R₀ = f*`, `L₀·R = f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairOverlaps {
    pub lr: Complex64,
    pub zero_norm: Complex64,
    pub l_r0: Complex64,
    pub l0_r: Complex64,
}

impl PairOverlaps {
    pub fn values(&self) -> [Complex64; 4] {
        [self.lr, self.zero_norm, self.l_r0, self.l0_r]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Relative tolerance of pair-overlap quadratures.
pub const PAIR_OVERLAP_REL_TOL: f64 = 1e-13;

/// Evaluate the row/column products literally at time `t` and integrate.
pub fn pair_overlaps<P: PairProfile>(
    profile: &P,
    block: &JordanBlock,
    t: f64,
    domain: (f64, f64),
) -> Result<PairOverlaps> {
    let e = block.energy();
    let r0 = StateVec2::new((-I * e * t).exp(), ZERO);
    let l0 = RowVec2::new(ZERO, (I * e * t).exp());
    let products = |x: f64| -> [Complex64; 4] {
        match profile.fg(x) {
            Ok((f, g)) => {
                let s = schrodinger_pair_solutions(block, f, g, t);
                [s.left.dot(&s.right), l0.dot(&r0), s.left.dot(&r0), l0.dot(&s.right)]
            }
            Err(_) => [Complex64::new(f64::NAN, f64::NAN); 4],
        }
    };
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: PAIR_OVERLAP_REL_TOL,
        ..QuadOptions::default()
    };
    let mut out = [ZERO; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        let re = integrate(|x| products(x)[k].re, domain.0, domain.1, &opts)?.value;
        let im = integrate(|x| products(x)[k].im, domain.0, domain.1, &opts)?.value;
        *slot = Complex64::new(re, im);
    }
    Ok(PairOverlaps {
        lr: out[0],
        zero_norm: out[1],
        l_r0: out[2],
        l0_r: out[3],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evolve_closed_form() {
        let b = JordanBlock::new(1.0);
        let s = b.evolve(&StateVec2::new(ZERO, ONE), 2.0);
        let phase = c(0.0, -2.0).exp();
        assert_eq!(s.a, phase * c(0.0, -2.0));
        assert_eq!(s.b, phase);
        let e = b.evolve(&b.right_eigenvector(), 3.7);
        assert_eq!(e.b, ZERO);
        assert!((e.a - c(0.0, -3.7).exp()).norm() < 1e-16);
        let id = StateVec2::new(c(0.3, 1.0), c(-2.0, 0.5));
        assert_eq!(b.evolve(&id, 0.0), id);
    }

    #[test]
    fn eigenvectors_and_zero_norm() {
        let b = JordanBlock::new(1.0);
        let r = b.right_eigenvector();
        let l = b.left_eigenvector();
        assert_eq!(b.apply(&r), StateVec2::new(ONE, ZERO));
        assert_eq!(b.apply_left(&l), RowVec2::new(ZERO, ONE));
        assert_eq!(l.dot(&r), ZERO);
    }

    #[test]
    fn pseudo_hermiticity() {
        assert_eq!(JordanBlock::new(1.0).pseudo_hermiticity_check().residual, 0.0);
        assert_eq!(JordanBlock::new(2.5).pseudo_hermiticity_check().residual, 0.0);
        let eps = 1e-3;
        let p = JordanBlock::general(c(1.0, 0.0), c(1.0, eps)).pseudo_hermiticity_check();
        assert!(!p.holds);
        assert!((p.residual - 2.0 * eps).abs() < 1e-15);
    }

    #[test]
    fn single_eigenvector() {
        let b = JordanBlock::new(0.5);
        assert_eq!(b.nilpotent_residual(), 0.0);
        assert_eq!(b.eigenspace_dimension(), 1);
        let diag = JordanBlock::general(c(0.5, 0.0), ZERO);
        assert_eq!(diag.eigenspace_dimension(), 2);
    }

    #[test]
    fn pair_solutions_at_zero_time() {
        let b = JordanBlock::new(0.5);
        let s = schrodinger_pair_solutions(&b, c(0.7, 0.0), c(-0.2, 0.0), 0.0);
        assert_eq!(s.right, StateVec2::new(c(-0.2, 0.0), c(0.7, 0.0)));
        assert!(pair_solution_residual(&b, &[0.7, 1.3], &[-0.2, 0.4], 1.0) < 1e-15);
    }

    #[test]
    fn assembly_and_levels() {
        assert_eq!(assemble(0), Err(Error::NoLevels));
        let h = assemble(3).unwrap();
        assert_eq!(h.dim(), 6);
        assert_eq!(h.blocks()[2].energy(), c(2.5, 0.0));
        assert_eq!(h.pseudo_hermiticity_check().residual, 0.0);
        assert!(matches!(h.evolve(&[ONE; 4], 1.0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn conjugate_pair_spectrum() {
        let m = [[c(1.0, 0.3), ZERO], [ZERO, c(1.0, -0.3)]];
        let ev = eigenvalues_2x2(m);
        assert!((ev[0] - ev[1].conj()).norm() < 1e-15);
        let real = eigenvalues_2x2(JordanBlock::new(1.5).matrix());
        assert!(real.iter().all(|z| z.im == 0.0 && z.re == 1.5));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn state() -> impl Strategy<Value = StateVec2> {
        prop::array::uniform4(-1.0f64..1.0)
            .prop_map(|[a, b, c, d]| StateVec2::new(Complex64::new(a, b), Complex64::new(c, d)))
    }

    proptest! {
        #[test]
        fn evolve_composes(s in state(), e in -3.0f64..3.0, t1 in -50.0f64..50.0, t2 in -50.0f64..50.0) {
            let block = JordanBlock::new(e);
            let once = block.evolve(&s, t1 + t2);
            let twice = block.evolve(&block.evolve(&s, t1), t2);
            let scale = 1.0 + (t1.abs() + t2.abs()) * s.norm();
            prop_assert!((once.a - twice.a).norm() <= 1e-13 * scale);
            prop_assert!((once.b - twice.b).norm() <= 1e-13 * scale);
        }

        #[test]
        fn v_norm_conserved(s in state(), e in -3.0f64..3.0, t in 0.0f64..100.0) {
            let block = JordanBlock::new(e);
            prop_assert!((v_norm(&block.evolve(&s, t)) - v_norm(&s)).abs() <= 1e-12);
        }

        #[test]
        fn eigenvectors_have_zero_norm(e in -10.0f64..10.0) {
            let block = JordanBlock::new(e);
            prop_assert_eq!(block.left_eigenvector().dot(&block.right_eigenvector()), ZERO);
            prop_assert_eq!(block.pseudo_hermiticity_check().residual, 0.0);
        }
    }
}
