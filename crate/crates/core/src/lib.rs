//! Non-normalizable and non-stationary solutions of the harmonic oscillator,
//! their Jordan-block structure, and numerical checks of each.
//!
//! Everything is in dimensionless units `ħ = m = ω = 1` unless a
//! [`numerics::UnitScale`] says otherwise. Values that grow like `e^{q²}` are
//! carried as [`numerics::LogScaledReal`] so they never overflow.
//!
//! | module | contents |
//! |---|---|
//! | [`numerics`] | Dawson, erfi and erfc kernels, adaptive quadrature, Runge–Kutta ODE solver, finite-difference stencils |
//! | [`modes`] | standard, f-sector, linear-in-time and free-particle mode families |
//! | [`verify`] | residuals, truncated overlaps, divergence classification, parity |
//! | [`jordan`] | Jordan blocks, the `σ₁` metric, pair solutions and their overlaps |
//! | [`wedge`] | the rotated sector on `r ≥ 0` |
//! | [`cli`] | the `sho-verify` command line |
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example special_functions
//! cargo run --example stationary_modes
//! cargo run --example linear_in_time
//! cargo run --example overlap_divergence
//! cargo run --example jordan_evolution
//! cargo run --example stokes_wedge
//! cargo run --example free_particle
//! cargo run --release --example verification_report
//! ```
//!
//! ```
//! use sho_exceptional::jordan::{v_norm, JordanBlock, StateVec2};
//! use num_complex::Complex64;
//!
//! let block = JordanBlock::new(0.5);
//! let s = StateVec2::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
//! let later = block.evolve(&s, 10.0);
//! assert!((later.a.norm() - 10.0).abs() < 1e-12);
//! assert!((v_norm(&later) - v_norm(&s)).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod jordan;
pub mod modes;
pub mod numerics;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
