//! The exact scalar type and a few constructors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Lossless `num/den` rendering (integers render without a denominator).
pub fn to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `-n`, or `n/d`.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = |column: usize, message: &str| Error::Parse {
        line: 1,
        column,
        message: message.to_string(),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| bad(1, &format!("invalid integer `{num}`")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| bad(num.len() + 2, &format!("invalid integer `{d}`")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad(num.len() + 2, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
