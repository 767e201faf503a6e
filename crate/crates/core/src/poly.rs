//! Dense polynomials in alpha with rational coefficients.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::RatSeries;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::new(vec![int(1)])
    }

    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![int(0); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| int(v)).collect())
    }

    /// `alpha (alpha - 1) ... (alpha - n + 1)`.
    pub fn falling_factorial(n: usize) -> Self {
        (0..n).fold(Poly::one(), |acc, k| acc.mul(&Poly::from_ints(&[-(k as i64), 1])))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.scale(&int(-1)))
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Multiplication by `alpha^k`.
    pub fn shift(&self, k: usize) -> Poly {
        let mut coeffs = vec![int(0); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(coeffs)
    }

    /// Exact division by `alpha^k`; fails unless the low coefficients vanish.
    pub fn unshift(&self, k: usize) -> Result<Poly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::precondition("unshift", "polynomial not divisible by alpha power"));
        }
        Ok(Poly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn derive(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `sum_j c_j D^j p` for a series in `D = d/dalpha`; exact because `D`
    /// annihilates the polynomial after `deg + 1` steps.
    pub fn apply_d_series(&self, series: &RatSeries) -> Result<Poly> {
        let needed = self.coeffs.len();
        series.require_prec("apply_d_series", needed)?;
        let mut acc = Poly::zero();
        let mut d = self.clone();
        for c in series.coeffs().iter().take(needed) {
            if !c.is_zero() {
                acc = acc.add(&d.scale(c));
            }
            d = d.derive();
        }
        Ok(acc)
    }

    /// Expansion `self / den = alpha^{deg self - deg den} sum_k r_k alpha^{-k}`,
    /// returning the top exponent and `r_0 .. r_{depth}`.
    pub fn laurent_div(&self, den: &Poly, depth: usize) -> Result<(i64, Vec<Rational>)> {
        let dd = den.degree().ok_or(Error::NotInvertible { op: "laurent_div" })?;
        let Some(nd) = self.degree() else {
            return Ok((0, vec![int(0); depth + 1]));
        };
        let lead_inv = den.coeffs[dd].recip();
        // reversed coefficients: polynomials in alpha^{-1}
        let num: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        let dr: Vec<Rational> = den.coeffs.iter().rev().cloned().collect();
        let mut out: Vec<Rational> = Vec::with_capacity(depth + 1);
        for k in 0..=depth {
            let mut acc = num.get(k).cloned().unwrap_or_else(Rational::zero);
            for j in 1..=k.min(dd) {
                acc -= &dr[j] * &out[k - j];
            }
            out.push(acc * &lead_inv);
        }
        Ok((nd as i64 - dd as i64, out))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_string).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.to_strings())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if *c < Rational::zero() { (true, -c) } else { (false, c.clone()) };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show = k == 0 || !mag.is_one();
            if show {
                f.write_str(&rational::to_string(&mag))?;
            }
            match k {
                0 => {}
                1 => f.write_str(if show { "*a" } else { "a" })?,
                _ => write!(f, "{}a^{k}", if show { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn falling_factorial_coefficients() {
        assert_eq!(Poly::falling_factorial(3), Poly::from_ints(&[0, 2, -3, 1]));
        assert_eq!(Poly::falling_factorial(0), Poly::one());
    }

    #[test]
    fn laurent_division() {
        // (a^3 - 3a^2 + 2a) / (a^2 - a) = a - 2
        let p3 = Poly::falling_factorial(3);
        let p2 = Poly::falling_factorial(2);
        let (top, r) = p3.laurent_div(&p2, 3).unwrap();
        assert_eq!(top, 1);
        assert_eq!(r, vec![int(1), int(-2), int(0), int(0)]);
        // 1 / (a - 1) = a^{-1} (1 + a^{-1} + ...)
        let (top, r) = Poly::one().laurent_div(&Poly::from_ints(&[-1, 1]), 2).unwrap();
        assert_eq!(top, -1);
        assert_eq!(r, vec![int(1); 3]);
    }

    #[test]
    fn d_series_application() {
        let p = Poly::from_ints(&[0, 0, 0, 1]);
        let d = RatSeries::from_ints(crate::series::Var::X, &[0, 1, 0, 0]);
        assert_eq!(p.apply_d_series(&d).unwrap(), Poly::from_ints(&[0, 0, 3]));
        let short = RatSeries::from_ints(crate::series::Var::X, &[0, 1]);
        assert!(p.apply_d_series(&short).is_err());
        assert_eq!(p.eval(&rat(1, 2)), rat(1, 8));
        assert_eq!(format!("{}", Poly::from_ints(&[2, -3, 1])), "a^2 - 3*a + 2");
    }
}
