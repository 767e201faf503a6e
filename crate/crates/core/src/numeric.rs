//! High-precision decimal evaluation of exact rationals. Used only for the
//! numeric summaries of limit checks.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Extra guard digits carried through the fixed-point loops.
const GUARD: u32 = 12;

fn ten_pow(d: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), d as usize)
}

/// `atanh(num/den) * scale` in fixed point, for `0 <= num/den < 1`.
fn atanh_fixed(num: &BigInt, den: &BigInt, scale: &BigInt) -> BigInt {
    let z = num * scale / den;
    let z2 = &z * &z / scale;
    let mut term = z;
    let mut sum = BigInt::zero();
    let mut k: u64 = 1;
    while !term.is_zero() {
        sum += &term / BigInt::from(k);
        term = &term * &z2 / scale;
        k += 2;
    }
    sum
}

/// `ln x` to roughly `digits` correct decimal digits, as a rational with
/// denominator `10^(digits + GUARD)`.
pub fn ln(x: &Rational, digits: u32) -> Result<Rational> {
    if !x.is_positive() {
        return Err(Error::precondition("ln", "argument must be positive"));
    }
    let scale = ten_pow(digits + GUARD);
    // x = y * 2^k with y in [1, 2)
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut k: i64 = (n.bits() as i64) - (d.bits() as i64);
    if k > 0 {
        d <<= k as usize;
    } else {
        n <<= (-k) as usize;
    }
    if n < d {
        n <<= 1;
        k -= 1;
    }
    if n >= &d << 1 {
        d <<= 1;
        k += 1;
    }
    // ln y = 2 atanh((y - 1)/(y + 1))
    let ln_y = atanh_fixed(&(&n - &d), &(&n + &d), &scale) * 2;
    let ln2 = atanh_fixed(&BigInt::one(), &BigInt::from(3), &scale) * 2;
    let total = ln_y + ln2 * BigInt::from(k);
    Ok(Rational::new(total, scale))
}

/// Decimal rendering with `digits` places after the point (truncated toward zero).
pub fn to_decimal(x: &Rational, digits: u32) -> String {
    let scale = ten_pow(digits);
    let scaled = x.numer() * &scale / x.denom();
    let (q, r) = scaled.abs().div_rem(&scale);
    let sign = if x.numer().sign() == Sign::Minus && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{q}");
    }
    format!("{sign}{q}.{:0>width$}", r.to_string(), width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn log_two_digits() {
        let l = ln(&int(2), 60).unwrap();
        assert_eq!(
            to_decimal(&l, 60),
            "0.693147180559945309417232121458176568075500134360255254120680"
        );
        assert_eq!(to_decimal(&ln(&int(1), 30).unwrap(), 5), "0.00000");
        let third = ln(&rat(1, 3), 40).unwrap() + ln(&int(3), 40).unwrap();
        assert!(crate::rational::abs(&third) < rat(1, 1_000_000_000_000_000_000));
        assert!(ln(&int(0), 10).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(-1, 8), 4), "-0.1250");
        assert_eq!(to_decimal(&rat(7, 2), 0), "3");
    }
}
