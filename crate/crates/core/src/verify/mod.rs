//! Residual, orthogonality, parity and divergence checks.

mod divergence;
mod overlap;
mod parity;
mod residual;

pub use divergence::{
    classify_divergence, classify_values, DivergenceReport, GrowthLaw, ModelFit, CLASSIFY_QUAD_TOL, FIT_FLOOR,
    MIN_CUTOFFS,
};
pub use overlap::{overlap_truncated, overlap_truncated_complex, OVERLAP_REL_TOL};
pub use parity::{parity_check, PARITY_TOL};
pub use residual::{stationary_residual, timedep_residual, ResidualReport, INTERIOR_MARGIN};
