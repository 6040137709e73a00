//! Growth-law classification of cutoff-dependent overlaps.
//!
//! Each candidate law carries a `d/L` correction term so that finite-cutoff
//! tails do not bias the leading coefficient:
//!
//! | law | model |
//! |-----|-------|
//! | convergent | `c + d/L + e/L³` |
//! | log | `c + s ln L + d/L` |
//! | linear | `c + s L + d/L` |
//! | power | `ln|v| = c + p ln L + e/L²` |
//! | exponential | `ln|v| = c + s L² + b ln L` |
//!
//! The law is chosen from the shell increments `Δv/ΔL` between consecutive
//! cutoffs: an integrand `~ q^k` gives increments `~ L^k`, so the local
//! log-log exponent `k` of the last two shells separates the laws
//! (`k < -3/2` convergent, `< -1/2` log, `< 1/2` linear, else power), and an
//! exponent above `L²` signals Gaussian growth. A last increment below
//! `NEGLIGIBLE_INCREMENT·max |v|` counts as converged. When increments change
//! sign the slowest law whose misfit is within `max(best, FIT_FLOOR)` wins.
//!
//! Fit quality is the RMS misfit in value space divided by `max |v|`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::ModeFamily;
use crate::verify::overlap::overlap_truncated;

pub const MIN_CUTOFFS: usize = 4;

/// Misfits below this are treated as exact ties.
pub const FIT_FLOOR: f64 = 1e-4;

/// Increments below this fraction of `max |v|` are quadrature noise.
pub const NEGLIGIBLE_INCREMENT: f64 = 1e-8;

const MAX_CONDITION: f64 = 1e12;

/// Absolute tolerance of the overlap quadratures feeding a classification.
pub const CLASSIFY_QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthLaw {
    Convergent,
    Log,
    Linear,
    Power,
    Exponential,
}

impl GrowthLaw {
    pub const ALL: [GrowthLaw; 5] = [Self::Convergent, Self::Log, Self::Linear, Self::Power, Self::Exponential];

    pub fn name(self) -> &'static str {
        match self {
            Self::Convergent => "convergent",
            Self::Log => "log",
            Self::Linear => "linear",
            Self::Power => "power",
            Self::Exponential => "exponential",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelFit {
    pub law: GrowthLaw,
    /// Coefficients in the order of the model's basis.
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub cutoffs: Vec<f64>,
    pub values: Vec<f64>,
    pub classification: GrowthLaw,
    /// Coefficient of the growing term: `c` for convergent, `s` for log,
    /// linear and exponential, `p` for power.
    pub fit_slope: f64,
    pub fit_residual: f64,
    pub fits: Vec<ModelFit>,
}

/// Overlap `⟨a|b⟩` on `[-L, L]` for each cutoff, then [`classify_values`].
pub fn classify_divergence(a: &ModeFamily, b: &ModeFamily, cutoffs: &[f64]) -> Result<DivergenceReport> {
    check_cutoffs(cutoffs)?;
    let values = cutoffs
        .iter()
        .map(|&l| overlap_truncated(a, b, l, CLASSIFY_QUAD_TOL))
        .collect::<Result<Vec<_>>>()?;
    classify_values(cutoffs, &values)
}

/// Classify a sequence of values `v(L)`.
pub fn classify_values(cutoffs: &[f64], values: &[f64]) -> Result<DivergenceReport> {
    check_cutoffs(cutoffs)?;
    if values.len() != cutoffs.len() {
        return Err(Error::DimensionMismatch {
            got: values.len(),
            expected: cutoffs.len(),
        });
    }
    let vmax = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if vmax == 0.0 {
        let fits = GrowthLaw::ALL
            .iter()
            .map(|&law| ModelFit {
                law,
                coefficients: vec![],
                residual: 0.0,
            })
            .collect();
        return Ok(DivergenceReport {
            cutoffs: cutoffs.to_vec(),
            values: values.to_vec(),
            classification: GrowthLaw::Convergent,
            fit_slope: 0.0,
            fit_residual: 0.0,
            fits,
        });
    }

    let mut fits = Vec::with_capacity(GrowthLaw::ALL.len());
    for law in GrowthLaw::ALL {
        let fit = match law {
            GrowthLaw::Convergent => linear_model(law, cutoffs, values, vmax, |l| vec![1.0, 1.0 / l, l.powi(-3)])?,
            GrowthLaw::Log => linear_model(law, cutoffs, values, vmax, |l| vec![1.0, l.ln(), 1.0 / l])?,
            GrowthLaw::Linear => linear_model(law, cutoffs, values, vmax, |l| vec![1.0, l, 1.0 / l])?,
            GrowthLaw::Power => log_model(law, cutoffs, values, vmax, |l| vec![1.0, l.ln(), 1.0 / (l * l)])?,
            GrowthLaw::Exponential => log_model(law, cutoffs, values, vmax, |l| vec![1.0, l * l, l.ln()])?,
        };
        fits.push(fit);
    }
    let chosen = match law_from_increments(cutoffs, values, vmax) {
        Some(law) => fits.iter().find(|f| f.law == law).expect("every law is fitted"),
        None => {
            let best = fits.iter().map(|f| f.residual).fold(f64::INFINITY, f64::min);
            let threshold = best.max(FIT_FLOOR);
            fits.iter().find(|f| f.residual <= threshold).expect("best fit is within threshold")
        }
    };
    let fit_slope = match chosen.law {
        GrowthLaw::Convergent => chosen.coefficients[0],
        _ => chosen.coefficients[1],
    };
    Ok(DivergenceReport {
        cutoffs: cutoffs.to_vec(),
        values: values.to_vec(),
        classification: chosen.law,
        fit_slope,
        fit_residual: chosen.residual,
        fits,
    })
}

/// Growth law from the local exponent of the last shell increments, or `None`
/// when the increments change sign.
fn law_from_increments(cutoffs: &[f64], values: &[f64], vmax: f64) -> Option<GrowthLaw> {
    let n = cutoffs.len();
    let shell = |i: usize| {
        let (l0, l1) = (cutoffs[i], cutoffs[i + 1]);
        ((values[i + 1] - values[i]) / (l1 - l0), 0.5 * (l0 + l1))
    };
    let (d0, m0) = shell(n - 3);
    let (d1, m1) = shell(n - 2);
    if (d1 * (cutoffs[n - 1] - cutoffs[n - 2])).abs() <= NEGLIGIBLE_INCREMENT * vmax {
        return Some(GrowthLaw::Convergent);
    }
    if d0 == 0.0 || d0.signum() != d1.signum() {
        return None;
    }
    let k = (d1 / d0).ln() / (m1 / m0).ln();
    Some(if k > m1 * m1 {
        GrowthLaw::Exponential
    } else if k < -1.5 {
        GrowthLaw::Convergent
    } else if k < -0.5 {
        GrowthLaw::Log
    } else if k < 0.5 {
        GrowthLaw::Linear
    } else {
        GrowthLaw::Power
    })
}

fn check_cutoffs(cutoffs: &[f64]) -> Result<()> {
    let ok = cutoffs.len() >= MIN_CUTOFFS
        && cutoffs.iter().all(|l| l.is_finite() && *l > 0.0)
        && cutoffs.windows(2).all(|w| w[1] > w[0]);
    if ok {
        Ok(())
    } else {
        Err(Error::BadCutoffs {
            needed: MIN_CUTOFFS,
            got: cutoffs.to_vec(),
        })
    }
}

fn least_squares(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    let n = rows[0].len();
    let a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 0.0) || smax / smin > MAX_CONDITION {
        return Err(Error::IllConditionedFit(format!("condition number {:e}", smax / smin)));
    }
    let x = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::IllConditionedFit(e.to_string()))?;
    Ok(x.iter().copied().collect())
}

fn rms(errs: impl Iterator<Item = f64>, n: usize) -> f64 {
    (errs.map(|e| e * e).sum::<f64>() / n as f64).sqrt()
}

fn linear_model(
    law: GrowthLaw,
    cutoffs: &[f64],
    values: &[f64],
    vmax: f64,
    basis: impl Fn(f64) -> Vec<f64>,
) -> Result<ModelFit> {
    let rows: Vec<Vec<f64>> = cutoffs.iter().map(|&l| basis(l)).collect();
    let c = least_squares(&rows, values)?;
    let misfit = rows
        .iter()
        .zip(values)
        .map(|(r, v)| r.iter().zip(&c).map(|(x, k)| x * k).sum::<f64>() - v);
    Ok(ModelFit {
        law,
        residual: rms(misfit, values.len()) / vmax,
        coefficients: c,
    })
}

/// Fit `ln|v|` linearly in `basis`; values must share one sign.
fn log_model(
    law: GrowthLaw,
    cutoffs: &[f64],
    values: &[f64],
    vmax: f64,
    basis: impl Fn(f64) -> Vec<f64>,
) -> Result<ModelFit> {
    let sign = values[0].signum();
    if values.iter().any(|v| *v == 0.0 || v.signum() != sign) {
        return Ok(ModelFit {
            law,
            coefficients: vec![],
            residual: f64::INFINITY,
        });
    }
    let rows: Vec<Vec<f64>> = cutoffs.iter().map(|&l| basis(l)).collect();
    let logs: Vec<f64> = values.iter().map(|v| v.abs().ln()).collect();
    let c = least_squares(&rows, &logs)?;
    let misfit = rows.iter().zip(values).map(|(r, v)| {
        let pred = sign * r.iter().zip(&c).map(|(x, k)| x * k).sum::<f64>().exp();
        pred - v
    });
    Ok(ModelFit {
        law,
        residual: rms(misfit, values.len()) / vmax,
        coefficients: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: [f64; 4] = [3.0, 4.0, 5.0, 6.0];

    #[test]
    fn recognizes_each_law() {
        let lin: Vec<f64> = L.iter().map(|l| 2.0 * l + 1.0 - 0.3 / l).collect();
        let r = classify_values(&L, &lin).unwrap();
        assert_eq!(r.classification, GrowthLaw::Linear);
        assert!((r.fit_slope - 2.0).abs() < 1e-9);

        let conv: Vec<f64> = L.iter().map(|l| 1.7 + 0.2 / l).collect();
        assert_eq!(classify_values(&L, &conv).unwrap().classification, GrowthLaw::Convergent);

        let lg: Vec<f64> = L.iter().map(|l: &f64| 0.5 + 3.0 * l.ln()).collect();
        assert_eq!(classify_values(&L, &lg).unwrap().classification, GrowthLaw::Log);

        let ex: Vec<f64> = L.iter().map(|l: &f64| (l * l).exp() / (4.0 * l * l)).collect();
        assert_eq!(classify_values(&L, &ex).unwrap().classification, GrowthLaw::Exponential);

        let cubic: Vec<f64> = L.iter().map(|l| 2.0 / 3.0 * l.powi(3) + l).collect();
        let r = classify_values(&L, &cubic).unwrap();
        assert_eq!(r.classification, GrowthLaw::Power);
        assert!((r.fit_slope - 3.0).abs() < 0.1, "{}", r.fit_slope);
    }

    #[test]
    fn slow_tails_converge() {
        let tail: Vec<f64> = L.iter().map(|l| 0.3 - 1.0 / l - 0.5 / l.powi(3) - 0.75 / l.powi(5)).collect();
        assert_eq!(classify_values(&L, &tail).unwrap().classification, GrowthLaw::Convergent);
        let settled = [1.7724538509, 1.7724538509 + 1e-12, 1.7724538509, 1.7724538509 - 1e-12];
        assert_eq!(classify_values(&L, &settled).unwrap().classification, GrowthLaw::Convergent);
    }

    #[test]
    fn zero_sequence_is_convergent() {
        let r = classify_values(&L, &[0.0; 4]).unwrap();
        assert_eq!(r.classification, GrowthLaw::Convergent);
        assert_eq!(r.fit_slope, 0.0);
    }

    #[test]
    fn rejects_bad_cutoffs() {
        assert!(matches!(classify_values(&[1.0, 2.0, 3.0], &[1.0; 3]), Err(Error::BadCutoffs { .. })));
        assert!(matches!(classify_values(&[1.0, 3.0, 2.0, 4.0], &[1.0; 4]), Err(Error::BadCutoffs { .. })));
    }

    #[test]
    fn ill_conditioned_cutoffs() {
        let l = [1.0, 1.0 + 1e-9, 1.0 + 2e-9, 1.0 + 3e-9];
        assert!(matches!(classify_values(&l, &[1.0, 2.0, 3.0, 4.0]), Err(Error::IllConditionedFit(_))));
    }
}
