use crate::error::{Error, Result};
use crate::modes::{ModeFamily, Parity};

/// Relative mismatch allowed when deciding a parity.
pub const PARITY_TOL: f64 = 1e-9;

/// Parity of `mode` at `t = 0`, judged on `±q` for each sample `q`.
pub fn parity_check(mode: &ModeFamily, samples: &[f64]) -> Result<Parity> {
    let mut even = 0.0f64;
    let mut odd = 0.0f64;
    let mut seen = false;
    for &q in samples {
        let a = mode.value_scaled(q, 0.0);
        let b = mode.value_scaled(-q, 0.0);
        let reference = a.log_abs().max(b.log_abs());
        if !reference.is_finite() {
            continue;
        }
        let (a, b) = (a.relative_to(reference), b.relative_to(reference));
        if a.norm() == 0.0 {
            continue;
        }
        seen = true;
        even = even.max((b - a).norm() / a.norm());
        odd = odd.max((b + a).norm() / a.norm());
    }
    if !seen {
        return Err(Error::ParityUndetermined);
    }
    Ok(if even <= PARITY_TOL {
        Parity::Even
    } else if odd <= PARITY_TOL {
        Parity::Odd
    } else {
        Parity::None
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::modes::make_fg_pair;
    use crate::numerics::Grid;

    const Q: [f64; 4] = [0.3, 1.0, 2.5, 3.9];

    #[test]
    fn known_parities() {
        assert_eq!(parity_check(&ModeFamily::standard(0), &Q).unwrap(), Parity::Even);
        assert_eq!(parity_check(&ModeFamily::fbar(0), &Q).unwrap(), Parity::Odd);
        let pair = make_fg_pair(0, &Grid::symmetric(4.0, 1.0 / 32.0).unwrap()).unwrap();
        assert_eq!(parity_check(&ModeFamily::linear(Arc::new(pair)), &Q).unwrap(), Parity::Odd);
    }

    #[test]
    fn mixed_and_undetermined() {
        let mixed = ModeFamily::stationary(
            crate::modes::SectorTag::Standard(0),
            0.5,
            Parity::None,
            crate::modes::Hamiltonian::Oscillator,
            |q| crate::numerics::LogScaledReal::from_f64(1.0 + q),
        );
        assert_eq!(parity_check(&mixed, &Q).unwrap(), Parity::None);
        assert_eq!(parity_check(&ModeFamily::standard(1), &[0.0]), Err(Error::ParityUndetermined));
    }
}
