//! Named families and a small parser for family specifications.
//!
//! Accepted forms: `id`, `exp1`, `geom`, `nu`, `poly(c1, c2, ...)` for the
//! polynomial `sum c_k x^k` starting at `x^1`, and `[c0, c1, ...]` for an
//! explicit coefficient list known only to its own length.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::elementary::{expm1, geometric, polynomial};
use crate::series::{RatSeries, Var};
use crate::umbral::{self, BinomialFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySource {
    Id,
    Exp1,
    Geom,
    Nu,
    /// Coefficients of `x, x^2, ..`.
    Poly(Vec<Rational>),
    /// Coefficients of `1, x, x^2, ..`; the list length caps the order.
    Coeffs(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub source: FamilySource,
    pub order: usize,
}

pub const PRESET_NAMES: [&str; 4] = ["id", "exp1", "geom", "nu"];

/// `x e^{-x}`.
fn x_exp_neg(prec: usize) -> RatSeries {
    let coeffs = (0..prec)
        .map(|k| match k {
            0 => int(0),
            k => {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Rational::from_integer(rational::factorial(k - 1)).recip() * int(sign)
            }
        })
        .collect();
    RatSeries::from_rationals(Var::X, coeffs)
}

impl FamilySource {
    pub fn series(&self, order: usize) -> Result<RatSeries> {
        Ok(match self {
            FamilySource::Id => RatSeries::variable(Var::X, &int(1), order),
            FamilySource::Exp1 => expm1(Var::X, order),
            FamilySource::Geom => geometric(Var::X, order).mul_var().truncate(order),
            FamilySource::Nu => umbral::tau_inverse(&x_exp_neg(order))?,
            FamilySource::Poly(c) => {
                let mut all = vec![int(0)];
                all.extend(c.iter().cloned());
                polynomial(Var::X, &all, order)
            }
            FamilySource::Coeffs(c) => {
                if c.len() < order {
                    return Err(Error::truncation("family_spec", order, c.len()));
                }
                RatSeries::from_rationals(Var::X, c[..order].to_vec())
            }
        })
    }
}

impl FamilySpec {
    pub fn new(source: FamilySource, order: usize) -> Self {
        FamilySpec { source, order }
    }

    pub fn preset(name: &str, order: usize) -> Result<Self> {
        Ok(FamilySpec::new(name.parse()?, order))
    }

    pub fn series(&self) -> Result<RatSeries> {
        self.source.series(self.order)
    }

    pub fn build(&self) -> Result<BinomialFamily> {
        umbral::build_family(&self.series()?)
    }
}

impl fmt::Display for FamilySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |c: &[Rational]| c.iter().map(rational::to_string).collect::<Vec<_>>().join(", ");
        match self {
            FamilySource::Id => write!(f, "id"),
            FamilySource::Exp1 => write!(f, "exp1"),
            FamilySource::Geom => write!(f, "geom"),
            FamilySource::Nu => write!(f, "nu"),
            FamilySource::Poly(c) => write!(f, "poly({})", list(c)),
            FamilySource::Coeffs(c) => write!(f, "[{}]", list(c)),
        }
    }
}

impl FromStr for FamilySource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).family()
    }
}

impl Serialize for FamilySource {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FamilySource {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(at, |i| at - i - 1) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(self.pos, format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '-' | '+' | '/')))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error(start, "expected a rational number"));
        }
        self.pos += len;
        rational::parse(&self.src[start..self.pos]).map_err(|_| self.error(start, "malformed rational number"))
    }

    fn list(&mut self, close: char) -> Result<Vec<Rational>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn family(&mut self) -> Result<FamilySource> {
        self.skip_ws();
        let start = self.pos;
        let source = if self.eat('[') {
            FamilySource::Coeffs(self.list(']')?)
        } else {
            match self.word() {
                "id" => FamilySource::Id,
                "exp1" => FamilySource::Exp1,
                "geom" => FamilySource::Geom,
                "nu" => FamilySource::Nu,
                "poly" => {
                    self.expect('(')?;
                    FamilySource::Poly(self.list(')')?)
                }
                "" => return Err(self.error(start, "expected a family name or coefficient list")),
                other => return Err(self.error(start, format!("unknown family '{other}'"))),
            }
        };
        self.skip_ws();
        if !self.rest().is_empty() {
            return Err(self.error(self.pos, "trailing input"));
        }
        let lead = match &source {
            FamilySource::Poly(c) => c.first().cloned(),
            FamilySource::Coeffs(c) => {
                if c.first().is_some_and(|c0| *c0 != int(0)) {
                    return Err(self.error(start, "constant coefficient must be 0"));
                }
                c.get(1).cloned()
            }
            _ => Some(int(1)),
        };
        if lead != Some(int(1)) {
            return Err(self.error(start, "coefficient of x must be 1"));
        }
        Ok(source)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn presets_build() {
        for name in PRESET_NAMES {
            let fam = FamilySpec::preset(name, 10).unwrap().build().unwrap();
            assert_eq!(fam.order, 10);
        }
        let nu = FamilySpec::preset("nu", 6).unwrap().series().unwrap();
        // f/f' = x e^{-x}
        let t = nu.div_var_pow(1).unwrap().try_div(&nu.derive()).unwrap().mul_var().truncate(6);
        assert_eq!(t, x_exp_neg(6));
    }

    #[test]
    fn parsing() {
        let p: FamilySource = "poly(1, 1/2, -3)".parse().unwrap();
        assert_eq!(p, FamilySource::Poly(vec![int(1), rat(1, 2), int(-3)]));
        assert_eq!(p.to_string().parse::<FamilySource>().unwrap(), p);
        let c: FamilySource = " [0, 1,\n 2] ".parse().unwrap();
        assert_eq!(c, FamilySource::Coeffs(vec![int(0), int(1), int(2)]));
        assert!(c.series(5).is_err());
        match "poly(1,\n  x)".parse::<FamilySource>() {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match "cosh".parse::<FamilySource>() {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 1)),
            other => panic!("{other:?}"),
        }
        assert!("poly(2, 1)".parse::<FamilySource>().is_err());
        assert!("[1, 1]".parse::<FamilySource>().is_err());
        assert!("exp1 x".parse::<FamilySource>().is_err());
    }
}
