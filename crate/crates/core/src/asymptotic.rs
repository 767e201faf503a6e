//! Formal expansions `alpha^e * sum_k c_k alpha^{-k}` with symbolic exponent.
//!
//! Coefficients live in `LnPoly`, polynomials in a formal `ln alpha` over
//! `ParamPoly`, so that `d/ds alpha^s = ln(alpha) alpha^s` stays exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::param_poly::{ParamPoly, Symbol};
use crate::rational::{int, Rational};
use crate::ring::Ring;
use crate::series::{PowerSeries, Var};

/// `sum_j a_j (ln alpha)^j`.
#[derive(Clone, PartialEq, Default)]
pub struct LnPoly {
    parts: Vec<ParamPoly>,
}

impl LnPoly {
    pub fn new(mut parts: Vec<ParamPoly>) -> Self {
        while parts.last().is_some_and(ParamPoly::is_zero) {
            parts.pop();
        }
        LnPoly { parts }
    }

    pub fn constant(p: ParamPoly) -> Self {
        LnPoly::new(vec![p])
    }

    /// `c * ln alpha`.
    pub fn ln_alpha(c: ParamPoly) -> Self {
        LnPoly::new(vec![ParamPoly::zero(), c])
    }

    pub fn part(&self, j: usize) -> ParamPoly {
        self.parts.get(j).cloned().unwrap_or_else(ParamPoly::zero)
    }

    pub fn parts(&self) -> &[ParamPoly] {
        &self.parts
    }

    pub fn ln_degree(&self) -> Option<usize> {
        self.parts.len().checked_sub(1)
    }

    pub fn as_param(&self) -> Option<ParamPoly> {
        match self.parts.len() {
            0 => Some(ParamPoly::zero()),
            1 => Some(self.parts[0].clone()),
            _ => None,
        }
    }

    fn map(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> LnPoly {
        LnPoly::new(self.parts.iter().map(f).collect())
    }
}

impl Ring for LnPoly {
    fn zero_like(&self) -> Self {
        LnPoly::default()
    }
    fn one_like(&self) -> Self {
        LnPoly::constant(ParamPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let n = self.parts.len().max(rhs.parts.len());
        LnPoly::new((0..n).map(|j| &self.part(j) + &rhs.part(j)).collect())
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.parts.is_empty() || rhs.parts.is_empty() {
            return LnPoly::default();
        }
        let mut out = vec![ParamPoly::zero(); self.parts.len() + rhs.parts.len() - 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in rhs.parts.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LnPoly::new(out)
    }
    fn negate(&self) -> Self {
        self.map(|p| -p)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.map(|p| p.scale(r))
    }
    fn try_inv(&self) -> Option<Self> {
        self.as_param()?.try_inv().map(LnPoly::constant)
    }
    fn constant_like(&self, r: &Rational) -> Self {
        LnPoly::constant(ParamPoly::constant(r.clone()))
    }
}

impl fmt::Debug for LnPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LnPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, p) in self.parts.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{p}")?,
                1 => write!(f, "({p})*ln(alpha)")?,
                _ => write!(f, "({p})*ln(alpha)^{j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct AsymptoticSeries {
    exponent: ParamPoly,
    body: PowerSeries<LnPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymOp {
    Mul,
    Div,
}

impl AsymptoticSeries {
    /// `alpha^exponent * sum_k coeffs[k] alpha^{-k}`, known for `k < coeffs.len()`.
    pub fn new(exponent: ParamPoly, coeffs: Vec<ParamPoly>) -> Self {
        let body = PowerSeries::new(
            Var::Alpha,
            coeffs.into_iter().map(LnPoly::constant).collect(),
            LnPoly::constant(ParamPoly::one()),
        );
        AsymptoticSeries { exponent, body }
    }

    pub fn from_body(exponent: ParamPoly, body: PowerSeries<LnPoly>) -> Self {
        AsymptoticSeries { exponent, body }
    }

    pub fn exponent(&self) -> &ParamPoly {
        &self.exponent
    }

    pub fn body(&self) -> &PowerSeries<LnPoly> {
        &self.body
    }

    pub fn prec(&self) -> usize {
        self.body.prec()
    }

    pub fn coeff(&self, k: usize) -> Result<&LnPoly> {
        self.body.coeff(k)
    }

    /// Coefficients without logarithmic parts.
    pub fn param_coeffs(&self) -> Result<Vec<ParamPoly>> {
        self.body
            .coeffs()
            .iter()
            .map(|c| {
                c.as_param()
                    .ok_or_else(|| Error::precondition("param_coeffs", "coefficient carries ln(alpha)"))
            })
            .collect()
    }

    pub fn truncate(&self, prec: usize) -> Self {
        AsymptoticSeries {
            exponent: self.exponent.clone(),
            body: self.body.truncate(prec),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(AsymptoticSeries {
            exponent: &self.exponent + &rhs.exponent,
            body: self.body.try_mul(&rhs.body)?,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let lead = rhs.body.coeff(0)?;
        if lead.try_inv().is_none() {
            return Err(Error::NotInvertible { op: "asymptotic div" });
        }
        Ok(AsymptoticSeries {
            exponent: &self.exponent - &rhs.exponent,
            body: self.body.try_div(&rhs.body)?,
        })
    }

    /// `ln` of the expansion: `exponent * ln(alpha) + ln(body)`, body led by 1.
    pub fn log(&self) -> Result<Self> {
        let mut body = self.body.log()?;
        let mut coeffs = body.clone().into_coeffs();
        if let Some(c0) = coeffs.first_mut() {
            *c0 = c0.plus(&LnPoly::ln_alpha(self.exponent.clone()));
        }
        body = PowerSeries::new(Var::Alpha, coeffs, body.unit().clone());
        Ok(AsymptoticSeries { exponent: ParamPoly::zero(), body })
    }

    /// `d/dalpha`; the exponent drops by one.
    pub fn d_alpha(&self) -> Self {
        let coeffs = self
            .body
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = &self.exponent - &ParamPoly::from_int(k as i64);
                let n = c.parts().len();
                let parts = (0..n)
                    .map(|j| {
                        let mut p = &e * &c.part(j);
                        if j + 1 < n {
                            p = &p + &c.part(j + 1).scale(&int(j as i64 + 1));
                        }
                        p
                    })
                    .collect();
                LnPoly::new(parts)
            })
            .collect();
        AsymptoticSeries {
            exponent: &self.exponent - &ParamPoly::one(),
            body: PowerSeries::new(Var::Alpha, coeffs, self.body.unit().clone()),
        }
    }

    /// Partial derivative in a parameter symbol.
    pub fn d_param(&self, sym: Symbol) -> Self {
        let de = self.exponent.derivative(sym);
        let coeffs = self
            .body
            .coeffs()
            .iter()
            .map(|c| {
                let n = c.parts().len();
                let parts = (0..=n)
                    .map(|j| {
                        let mut p = c.part(j).derivative(sym);
                        if j >= 1 {
                            p = &p + &(&de * &c.part(j - 1));
                        }
                        p
                    })
                    .collect();
                LnPoly::new(parts)
            })
            .collect();
        AsymptoticSeries {
            exponent: self.exponent.clone(),
            body: PowerSeries::new(Var::Alpha, coeffs, self.body.unit().clone()),
        }
    }

    pub fn substitute(&self, sym: Symbol, value: &ParamPoly) -> Self {
        let coeffs = self
            .body
            .coeffs()
            .iter()
            .map(|c| c.map(|p| p.substitute(sym, value)))
            .collect();
        AsymptoticSeries {
            exponent: self.exponent.substitute(sym, value),
            body: PowerSeries::new(Var::Alpha, coeffs, self.body.unit().clone()),
        }
    }
}

pub fn asym_ops(a: &AsymptoticSeries, b: &AsymptoticSeries, op: AsymOp) -> Result<AsymptoticSeries> {
    match op {
        AsymOp::Mul => a.mul(b),
        AsymOp::Div => a.div(b),
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
    fn self_division_is_one() {
        let p = AsymptoticSeries::new(s(), vec![ParamPoly::one(), s(), &s() * &s()]);
        let q = asym_ops(&p, &p, AsymOp::Div).unwrap();
        assert_eq!(q, AsymptoticSeries::new(ParamPoly::zero(), vec![ParamPoly::one(), ParamPoly::zero(), ParamPoly::zero()]));
    }

    #[test]
    fn logarithm_of_unit_series() {
        let c = ParamPoly::constant(rat(3, 1));
        let p = AsymptoticSeries::new(s(), vec![ParamPoly::one(), c.clone(), ParamPoly::zero()]);
        let l = p.log().unwrap();
        assert_eq!(l.coeff(0).unwrap(), &LnPoly::ln_alpha(s()));
        assert_eq!(l.coeff(1).unwrap(), &LnPoly::constant(c.clone()));
        assert_eq!(l.coeff(2).unwrap(), &LnPoly::constant(ParamPoly::constant(rat(-9, 2))));
    }

    #[test]
    fn parameter_derivative_adds_log() {
        let p = AsymptoticSeries::new(s(), vec![ParamPoly::one()]);
        let d = p.d_param(Symbol::S);
        assert_eq!(d.exponent(), &s());
        assert_eq!(d.coeff(0).unwrap(), &LnPoly::ln_alpha(ParamPoly::one()));
        // d/dalpha (alpha^s ln alpha) = alpha^{s-1} (s ln alpha + 1)
        let dd = d.d_alpha();
        assert_eq!(dd.coeff(0).unwrap(), &LnPoly::new(vec![ParamPoly::one(), s()]));
        assert!(AsymptoticSeries::new(s(), vec![ParamPoly::zero()]).log().is_err());
    }
}
