use crate::modes::family::ModeFamily;
use crate::modes::tags::{Hamiltonian, Parity, SectorTag};
use crate::numerics::LogScaledReal;

/// Physicists' Hermite polynomial `H_n(q)` by the three-term recurrence.
pub fn hermite(n: usize, q: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * q;
    for k in 1..n {
        let next = 2.0 * q * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Unnormalized `H_n(q) e^{-q²/2}`.
pub fn psi_standard(n: usize, q: f64) -> f64 {
    hermite(n, q) * (-0.5 * q * q).exp()
}

impl ModeFamily {
    /// `Standard(n)`: `H_n(q) e^{-q²/2}`, energy `n + 1/2`.
    pub fn standard(n: usize) -> Self {
        Self::stationary(SectorTag::Standard(n), n as f64 + 0.5, Parity::of_level(n), Hamiltonian::Oscillator, move |q| {
            LogScaledReal::from_f64(psi_standard(n, q))
        })
    }

    /// `Standard(n)` with the leading coefficient of `H_n` removed:
    /// `(H_n(q)/2ⁿ) e^{-q²/2}`, so `ψ₁ = q e^{-q²/2}`.
    pub fn standard_monic(n: usize) -> Self {
        Self::standard(n).scaled(0.5f64.powi(n as i32))
    }
}
