//! The coefficient-ring abstraction shared by every series type.
//!
//! Truncated series cannot name a canonical zero or one without knowing their
//! precision, so identities are produced from an existing element
//! (`zero_like`, `one_like`) instead of through a static constructor.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplication by an exact rational scalar.
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inv(&self) -> Option<Self>;

    /// Embeds a rational as a constant of the same shape as `self`.
    fn constant_like(&self, r: &Rational) -> Self {
        self.one_like().scale(r)
    }

    /// First `prec` coefficients of the product of two coefficient lists.
    fn convolve(a: &[Self], b: &[Self], prec: usize, zero: &Self) -> Vec<Self> {
        let mut out = vec![zero.zero_like(); prec];
        for (i, x) in a.iter().enumerate().take(prec) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(prec - i) {
                if !y.is_zero() {
                    out[i + j] = out[i + j].plus(&x.times(y));
                }
            }
        }
        out
    }
}

/// Clears denominators: `(d, [a_i d])` with `d` the lcm of the denominators.
fn common_denominator(a: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let d = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = a.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (d, nums)
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn constant_like(&self, r: &Rational) -> Self {
        r.clone()
    }

    // integer convolution over a common denominator avoids a gcd per product
    fn convolve(a: &[Self], b: &[Self], prec: usize, _zero: &Self) -> Vec<Self> {
        let a = &a[..a.len().min(prec)];
        let b = &b[..b.len().min(prec)];
        let (da, na) = common_denominator(a);
        let (db, nb) = common_denominator(b);
        let mut out = vec![BigInt::zero(); prec];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate().take(prec - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        out.into_iter().map(|c| Rational::new(c, den.clone())).collect()
    }
}
