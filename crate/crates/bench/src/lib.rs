//! Inputs shared by the benches.

use umbral_core::rational::rat;
use umbral_core::{RatSeries, Var};

/// `x + sum_{k>=2} c_k x^k` with small, varied rational coefficients.
pub fn sample_family_series(prec: usize) -> RatSeries {
    let coeffs = (0..prec)
        .map(|k| match k {
            0 => rat(0, 1),
            1 => rat(1, 1),
            k => rat(((k * 7) % 11) as i64 - 5, ((k * 3) % 5 + 1) as i64),
        })
        .collect();
    RatSeries::from_rationals(Var::X, coeffs)
}

/// Dense series with nonzero constant term.
pub fn sample_unit_series(prec: usize) -> RatSeries {
    let coeffs = (0..prec).map(|k| rat(((k * 5) % 9) as i64 + 1, (k % 4 + 1) as i64)).collect();
    RatSeries::from_rationals(Var::X, coeffs)
}
