//! Solution families of the oscillator on the real axis.

mod family;
mod free;
mod fsector;
mod linear;
mod standard;
mod tags;

pub use family::ModeFamily;
pub use free::{
    free_cubic_coefficient, free_eigen_mode, free_linear_mode, free_linear_residual, free_zero_energy_modes,
    PRINTED_FREE_CUBIC_COEFFICIENT,
};
pub use fsector::{fbar, fbar_reduced, fbar_reduced_derivative, negative_energy_mode, psi_bar0, psi_bar1, psi_bar_n, LADDER_MAX_SPACING};
pub use linear::{linear_mode, make_fg_pair, FGPair, FGValue, FG_TOLERANCE};
pub use standard::{hermite, psi_standard};
pub use tags::{Energy, Hamiltonian, Parity, SectorTag};

/// Largest `|q|` evaluated in plain floating point.
pub const PLAIN_RANGE: f64 = 20.0;
