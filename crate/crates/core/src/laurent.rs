//! Laurent polynomials in one variable with an optional known-precision floor.
//!
//! `floor = Some(f)` means coefficients of exponents below `f` are unknown
//! (truncated); `None` means the value is exact. Arithmetic keeps the floor
//! honest so truncated tails never leak into known coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, Rational>,
    floor: Option<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0, Rational::one())
    }

    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut l = Laurent::zero();
        l.add_term(e, c);
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>, floor: Option<i64>) -> Self {
        let mut l = Laurent { terms: BTreeMap::new(), floor };
        for (e, c) in terms {
            l.add_term(e, c);
        }
        l
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn with_floor(mut self, floor: Option<i64>) -> Self {
        self.floor = match (self.floor, floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        if let Some(f) = self.floor {
            self.terms = self.terms.split_off(&f);
        }
        self
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if self.floor.is_some_and(|f| e < f) || Zero::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if self.floor.is_some_and(|f| e < f) {
            None
        } else {
            Some(self.terms.get(&e).cloned().unwrap_or_else(Rational::zero))
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn bottom(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            floor: self.floor.map(|f| f + k),
        }
    }

    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        if self.floor.is_some() {
            return None;
        }
        Some(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc + c * p
        }))
    }
}

impl Ring for Laurent {
    fn zero_like(&self) -> Self {
        Laurent::zero()
    }
    fn one_like(&self) -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone().with_floor(rhs.floor);
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        let top_or = |l: &Laurent| l.top().or(l.floor.map(|f| f - 1));
        let floor = match (self.floor, rhs.floor) {
            (None, None) => None,
            (Some(fa), None) => rhs.top().map(|tb| fa + tb),
            (None, Some(fb)) => self.top().map(|ta| ta + fb),
            (Some(fa), Some(fb)) => {
                let ta = top_or(self).unwrap_or(fa - 1);
                let tb = top_or(rhs).unwrap_or(fb - 1);
                Some((fa + tb).max(ta + fb))
            }
        };
        if floor.is_none() && (self.terms.is_empty() || rhs.terms.is_empty()) {
            return Laurent::zero();
        }
        let mut out = Laurent { terms: BTreeMap::new(), floor };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            floor: self.floor,
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return Laurent { terms: BTreeMap::new(), floor: self.floor };
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
            floor: self.floor,
        }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.floor.is_some() || self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Laurent::monomial(-e, c.recip()))
    }
    fn constant_like(&self, r: &Rational) -> Self {
        Laurent::monomial(0, r.clone())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Laurent{")?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}: {}", rational::to_string(c))?;
        }
        if let Some(fl) = self.floor {
            write!(f, "; known from {fl}")?;
        }
        f.write_str("}")
    }
}
