//! Polynomials in the formal parameters `s`, `H` and `A` with rational
//! coefficients.
//!
//! The symbol set is fixed. Monomials are stored as exponent triples in a
//! `BTreeMap`, so equality is structural and zero coefficients are never kept.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    S,
    H,
    A,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::S, Symbol::H, Symbol::A];

    fn index(self) -> usize {
        match self {
            Symbol::S => 0,
            Symbol::H => 1,
            Symbol::A => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::S => "s",
            Symbol::H => "H",
            Symbol::A => "A",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Monomial = [u32; 3];

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ParamPoly::zero();
        p.insert([0, 0, 0], c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        ParamPoly::constant(int(n))
    }

    pub fn symbol(sym: Symbol) -> Self {
        let mut m = [0; 3];
        m[sym.index()] = 1;
        let mut p = ParamPoly::zero();
        p.insert(m, Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = ParamPoly::zero();
        p.insert(m, c);
        p
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if Zero::is_zero(&c) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if Zero::is_zero(&*entry) {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&[0, 0, 0])
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, sym: Symbol) -> Option<u32> {
        self.terms.keys().map(|m| m[sym.index()]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ParamPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Coefficient of `sym^k`, as a polynomial in the remaining symbols.
    pub fn coeff_of(&self, sym: Symbol, k: u32) -> ParamPoly {
        let i = sym.index();
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            if m[i] == k {
                let mut m2 = *m;
                m2[i] = 0;
                out.insert(m2, c.clone());
            }
        }
        out
    }

    /// Replaces `sym` by the polynomial `value`.
    pub fn substitute(&self, sym: Symbol, value: &ParamPoly) -> ParamPoly {
        let i = sym.index();
        let max = self.degree_in(sym).unwrap_or(0);
        let mut powers = Vec::with_capacity(max as usize + 1);
        powers.push(ParamPoly::one());
        for k in 1..=max as usize {
            powers.push(&powers[k - 1] * value);
        }
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest[i] = 0;
            let term = &ParamPoly::monomial(rest, c.clone()) * &powers[m[i] as usize];
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, sym: Symbol, value: &Rational) -> ParamPoly {
        self.substitute(sym, &ParamPoly::constant(value.clone()))
    }

    /// Evaluates every symbol; missing symbols are treated as an error.
    pub fn eval_all(&self, values: &[(Symbol, Rational)]) -> Result<Rational> {
        let mut p = self.clone();
        for (sym, v) in values {
            p = p.eval(*sym, v);
        }
        p.as_constant().ok_or_else(|| {
            Error::precondition("eval_all", format!("unassigned symbols remain in {p}"))
        })
    }

    pub fn derivative(&self, sym: Symbol) -> ParamPoly {
        let i = sym.index();
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = *m;
                m2[i] -= 1;
                out.accumulate(m2, c * int(m[i] as i64));
            }
        }
        out
    }

    /// Exact division by `sym`; fails if some term is free of `sym`.
    pub fn div_by_symbol(&self, sym: Symbol) -> Result<ParamPoly> {
        let i = sym.index();
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            if m[i] == 0 {
                return Err(Error::precondition(
                    "div_by_symbol",
                    format!("{self} is not divisible by {sym}"),
                ));
            }
            let mut m2 = *m;
            m2[i] -= 1;
            out.insert(m2, c.clone());
        }
        Ok(out)
    }

    /// Generalized binomial coefficient `binom(self, k)` as a polynomial.
    pub fn binomial(&self, k: usize) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for i in 0..k {
            let factor = self - &ParamPoly::from_int(i as i64);
            acc = (&acc * &factor).scale(&Rational::new(1.into(), (i as i64 + 1).into()));
        }
        acc
    }

    /// Falling factorial `self (self-1) ... (self-k+1)`.
    pub fn falling(&self, k: usize) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for i in 0..k {
            acc = &acc * &(self - &ParamPoly::from_int(i as i64));
        }
        acc
    }

    /// Coefficients rendered as `num/den` strings keyed by monomial text.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(m, c)| (monomial_text(m), rational::to_string(c)))
            .collect()
    }
}

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for sym in Symbol::ALL {
        match m[sym.index()] {
            0 => {}
            1 => parts.push(sym.name().to_string()),
            e => parts.push(format!("{}^{e}", sym.name())),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = monomial_text(m);
            if mono == "1" {
                write!(f, "{}", rational::to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", rational::to_string(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl From<Rational> for ParamPoly {
    fn from(r: Rational) -> Self {
        ParamPoly::constant(r)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                out.accumulate(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Ring for ParamPoly {
    fn zero_like(&self) -> Self {
        ParamPoly::zero()
    }
    fn one_like(&self) -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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
        ParamPoly::scale(self, r)
    }
    fn try_inv(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if Zero::is_zero(&c) {
            None
        } else {
            Some(ParamPoly::constant(c.recip()))
        }
    }
    fn constant_like(&self, r: &Rational) -> Self {
        ParamPoly::constant(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn s() -> ParamPoly {
        ParamPoly::symbol(Symbol::S)
    }

    #[test]
    fn binomial_matches_integers() {
        for n in 0..8i64 {
            for k in 0..6usize {
                let v = s().binomial(k).eval(Symbol::S, &int(n)).as_constant().unwrap();
                let expect = crate::rational::binomial_int(n as usize, k);
                assert_eq!(v, Rational::from_integer(expect));
            }
        }
        // binom(-1, k) = (-1)^k
        let v = s().binomial(3).eval(Symbol::S, &int(-1)).as_constant().unwrap();
        assert_eq!(v, int(-1));
    }

    #[test]
    fn substitution_and_division() {
        let p = &(&s() * &s()) + &s(); // s^2 + s
        let shifted = p.substitute(Symbol::S, &(&s() + &ParamPoly::symbol(Symbol::H)));
        assert_eq!(shifted.eval(Symbol::H, &int(0)), p);
        assert_eq!(p.div_by_symbol(Symbol::S).unwrap(), &s() + &ParamPoly::one());
        assert!((&p + &ParamPoly::one()).div_by_symbol(Symbol::S).is_err());
        assert_eq!(p.derivative(Symbol::S), &s().scale(&int(2)) + &ParamPoly::one());
    }

    #[test]
    fn display_is_readable() {
        let p = &s().scale(&rat(-1, 2)) + &ParamPoly::from_int(3);
        assert_eq!(p.to_string(), "-1/2*s + 3");
        assert_eq!(ParamPoly::zero().to_string(), "0");
    }
}
