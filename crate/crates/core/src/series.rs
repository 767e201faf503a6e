//! Exact truncated power series in one named variable.
//!
//! A series stores its known coefficients `c_0 .. c_{prec-1}`; everything from
//! `x^prec` on is unknown. Every operation propagates the precision it can
//! actually guarantee and reading past it is an error, never a silent zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param_poly::{ParamPoly, Symbol};
use crate::rational::{self, int, Rational};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    T,
    S,
    Alpha,
    /// The omega coordinate: `y = omega(x)`.
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::T => "t",
            Var::S => "s",
            Var::Alpha => "alpha",
            Var::Y => "y",
        })
    }
}

#[derive(Clone, PartialEq)]
pub struct PowerSeries<C> {
    var: Var,
    coeffs: Vec<C>,
    unit: C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub type RatSeries = PowerSeries<Rational>;
pub type ParamSeries = PowerSeries<ParamPoly>;

impl<C: Ring> PowerSeries<C> {
    /// `unit` is the multiplicative identity of the coefficient ring; it
    /// shapes zeros and ones when the series has no coefficients left.
    pub fn new(var: Var, coeffs: Vec<C>, unit: C) -> Self {
        PowerSeries { var, coeffs, unit }
    }

    pub fn zero(var: Var, unit: &C, prec: usize) -> Self {
        PowerSeries::new(var, vec![unit.zero_like(); prec], unit.one_like())
    }

    pub fn one(var: Var, unit: &C, prec: usize) -> Self {
        PowerSeries::constant(var, unit.one_like(), prec)
    }

    pub fn constant(var: Var, c: C, prec: usize) -> Self {
        let mut s = PowerSeries::zero(var, &c, prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The series `x` itself, known to `prec` coefficients.
    pub fn variable(var: Var, unit: &C, prec: usize) -> Self {
        let mut s = PowerSeries::zero(var, unit, prec);
        if prec > 1 {
            s.coeffs[1] = unit.one_like();
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn unit(&self) -> &C {
        &self.unit
    }

    /// Number of known coefficients.
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest known exponent (the inclusive truncation order).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn get(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn coeff(&self, n: usize) -> Result<&C> {
        self.coeffs
            .get(n)
            .ok_or_else(|| Error::truncation("coeff", n + 1, self.prec()))
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(prec);
        s
    }

    pub fn require_prec(&self, op: &'static str, needed: usize) -> Result<()> {
        if self.prec() < needed {
            Err(Error::truncation(op, needed, self.prec()))
        } else {
            Ok(())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<D: Ring>(&self, unit: D, f: impl Fn(&C) -> D) -> PowerSeries<D> {
        PowerSeries::new(self.var, self.coeffs.iter().map(f).collect(), unit)
    }

    fn same_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            Err(Error::VariableMismatch {
                left: self.var,
                right: other.var,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_var(rhs)?;
        let prec = self.prec().min(rhs.prec());
        let coeffs = (0..prec).map(|i| self.coeffs[i].plus(&rhs.coeffs[i])).collect();
        Ok(PowerSeries::new(self.var, coeffs, self.unit.clone()))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_var(rhs)?;
        let prec = self.prec().min(rhs.prec());
        let coeffs = (0..prec).map(|i| self.coeffs[i].minus(&rhs.coeffs[i])).collect();
        Ok(PowerSeries::new(self.var, coeffs, self.unit.clone()))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_var(rhs)?;
        Ok(self.mul_trunc(rhs, self.prec().min(rhs.prec())))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.same_var(rhs)?;
        Ok(self.mul_trunc(&rhs.inverse()?, self.prec().min(rhs.prec())))
    }

    fn mul_trunc(&self, rhs: &Self, prec: usize) -> Self {
        let out = C::convolve(&self.coeffs, &rhs.coeffs, prec, &self.unit);
        PowerSeries::new(self.var, out, self.unit.clone())
    }

    pub fn negate(&self) -> Self {
        self.map(self.unit.clone(), Ring::negate)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(self.unit.clone(), |c| c.scale(r))
    }

    /// Multiplication by a coefficient-ring constant.
    pub fn scale_by(&self, k: &C) -> Self {
        self.map(self.unit.clone(), |c| k.times(c))
    }

    pub fn pow_int(&self, e: u32) -> Self {
        let mut acc = PowerSeries::one(self.var, &self.unit, self.prec());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0).map_err(|_| Error::NotInvertible { op: "inverse" })?;
        let inv0 = c0.try_inv().ok_or(Error::NotInvertible { op: "inverse" })?;
        let prec = self.prec();
        let mut out: Vec<C> = Vec::with_capacity(prec);
        out.push(inv0.clone());
        for n in 1..prec {
            let mut acc = self.unit.zero_like();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.plus(&self.coeffs[k].times(&out[n - k]));
                }
            }
            out.push(inv0.times(&acc).negate());
        }
        Ok(PowerSeries::new(self.var, out, self.unit.clone()))
    }

    pub fn derive(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&int(k as i64)))
            .collect();
        PowerSeries::new(self.var, coeffs, self.unit.clone())
    }

    /// Termwise antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.prec() + 1);
        coeffs.push(self.unit.zero_like());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&rational::rat(1, k as i64 + 1)));
        }
        PowerSeries::new(self.var, coeffs, self.unit.clone())
    }

    /// The 0-derivative `(F(x) - F(0)) / x`.
    pub fn zero_derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().skip(1).cloned().collect();
        PowerSeries::new(self.var, coeffs, self.unit.clone())
    }

    /// `x * F(x)`.
    pub fn mul_var(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.prec() + 1);
        coeffs.push(self.unit.zero_like());
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries::new(self.var, coeffs, self.unit.clone())
    }

    /// Divides by `x^k`, requiring the first `k` known coefficients to vanish.
    pub fn div_var_pow(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::precondition("div_var_pow", "series not divisible by the variable power"));
        }
        self.require_prec("div_var_pow", k)?;
        let coeffs = self.coeffs.iter().skip(k).cloned().collect();
        Ok(PowerSeries::new(self.var, coeffs, self.unit.clone()))
    }

    /// `outer(inner(x))`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner
            .get(0)
            .ok_or(Error::NonzeroConstant { op: "compose" })?;
        if !c0.is_zero() {
            return Err(Error::NonzeroConstant { op: "compose" });
        }
        let prec = self.prec().min(inner.prec());
        let inner = inner.truncate(prec);
        let mut acc = PowerSeries::zero(inner.var, &self.unit, prec);
        for c in self.coeffs.iter().take(prec).rev() {
            acc = acc.mul_trunc(&inner, prec);
            if prec > 0 {
                acc.coeffs[0] = acc.coeffs[0].plus(c);
            }
        }
        Ok(acc)
    }

    /// Compositional inverse by Newton iteration with precision doubling.
    pub fn revert(&self) -> Result<Self> {
        let op = "revert";
        let prec = self.prec();
        if prec < 2 {
            return Err(Error::truncation(op, 2, prec));
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant { op });
        }
        let lead = self.coeffs[1].clone();
        let lead_inv = lead.try_inv().ok_or_else(|| {
            Error::precondition(op, "linear coefficient is not invertible")
        })?;
        // w = u / c has unit linear coefficient; revert(u)(y) = revert(w)(y / c)
        let w = self.scale_by(&lead_inv);
        let w_prime = w.derive();
        let x = PowerSeries::variable(self.var, &self.unit, prec);
        let mut v = x.truncate(2);
        let mut known = 2;
        while known < prec {
            known = (2 * known).min(prec);
            let vk = pad(&v, known);
            let wv = w.truncate(known).compose(&vk)?;
            // w' is one coefficient short; the residual vanishes to the old
            // order so the missing top coefficient never reaches the result
            let dv = pad(&w_prime, known).compose(&vk)?;
            let residual = wv.try_sub(&x.truncate(known))?;
            let step = residual.try_div(&dv)?;
            v = vk.try_sub(&step)?;
        }
        let mut scale = self.unit.one_like();
        let coeffs = v
            .coeffs
            .iter()
            .map(|c| {
                let out = c.times(&scale);
                scale = scale.times(&lead_inv);
                out
            })
            .collect();
        Ok(PowerSeries::new(self.var, coeffs, self.unit.clone()))
    }

    pub fn exp(&self) -> Result<Self> {
        let op = "exp";
        let c0 = self.coeff(0)?;
        if !c0.is_zero() {
            return Err(Error::precondition(op, "constant term must be zero"));
        }
        let prec = self.prec();
        let mut out: Vec<C> = vec![self.unit.one_like()];
        for n in 1..prec {
            let mut acc = self.unit.zero_like();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.plus(&self.coeffs[k].times(&out[n - k]).scale(&int(k as i64)));
                }
            }
            out.push(acc.scale(&rational::rat(1, n as i64)));
        }
        Ok(PowerSeries::new(self.var, out, self.unit.clone()))
    }

    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(0)?;
        if *c0 != self.unit.one_like() {
            return Err(Error::precondition("log", "constant term must be one"));
        }
        if self.prec() == 1 {
            return Ok(PowerSeries::zero(self.var, &self.unit, 1));
        }
        Ok(self.derive().try_div(&self.truncate(self.prec().saturating_sub(1)))?.integrate())
    }

    /// `u^e` for a ring element `e`, via the J.C.P. Miller recurrence.
    pub fn pow(&self, e: &C) -> Result<Self> {
        let c0 = self.coeff(0)?;
        if *c0 != self.unit.one_like() {
            return Err(Error::precondition("pow", "constant term must be one"));
        }
        let prec = self.prec();
        let e1 = e.plus(&self.unit.one_like());
        let mut out: Vec<C> = vec![self.unit.one_like()];
        for n in 1..prec {
            let mut acc = self.unit.zero_like();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let factor = e1.scale(&int(k as i64)).minus(&self.unit.constant_like(&int(n as i64)));
                acc = acc.plus(&factor.times(&self.coeffs[k]).times(&out[n - k]));
            }
            out.push(acc.scale(&rational::rat(1, n as i64)));
        }
        Ok(PowerSeries::new(self.var, out, self.unit.clone()))
    }

    /// Sum of the known coefficients against powers of `point`.
    pub fn eval_truncated(&self, point: &C) -> C {
        let mut acc = self.unit.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(point).plus(c);
        }
        acc
    }
}

fn pad<C: Ring>(s: &PowerSeries<C>, prec: usize) -> PowerSeries<C> {
    let mut out = s.clone();
    while out.coeffs.len() < prec {
        out.coeffs.push(s.unit.zero_like());
    }
    out.coeffs.truncate(prec);
    out
}

impl PowerSeries<Rational> {
    pub fn from_rationals(var: Var, coeffs: Vec<Rational>) -> Self {
        PowerSeries::new(var, coeffs, int(1))
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        PowerSeries::from_rationals(var, coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Lifts rational coefficients into another ring.
    pub fn lift<C: Ring>(&self, unit: &C) -> PowerSeries<C> {
        self.map(unit.one_like(), |c| unit.constant_like(c))
    }

    pub fn to_param(&self) -> ParamSeries {
        self.lift(&ParamPoly::one())
    }

    pub fn eval_at(&self, point: &Rational) -> Rational {
        self.eval_truncated(point)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_string).collect()
    }
}

impl PowerSeries<ParamPoly> {
    pub fn substitute(&self, sym: Symbol, value: &ParamPoly) -> Self {
        self.map(ParamPoly::one(), |c| c.substitute(sym, value))
    }

    pub fn eval_symbol(&self, sym: Symbol, value: &Rational) -> Self {
        self.map(ParamPoly::one(), |c| c.eval(sym, value))
    }

    /// Collapses to rational coefficients when every coefficient is constant.
    pub fn to_rational(&self) -> Result<RatSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.as_constant().ok_or_else(|| {
                    Error::precondition("to_rational", format!("non-constant coefficient {c}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RatSeries::from_rationals(self.var, coeffs))
    }
}

/// Coefficientwise arithmetic with variable checking.
pub fn arith<C: Ring>(a: &PowerSeries<C>, b: &PowerSeries<C>, op: ArithOp) -> Result<PowerSeries<C>> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// `u^sym` with the exponent kept symbolic.
pub fn pow_param(u: &RatSeries, sym: Symbol) -> Result<ParamSeries> {
    u.to_param().pow(&ParamPoly::symbol(sym))
}

impl<C: Ring> fmt::Debug for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[{}; prec {}](", self.var, self.prec())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c:?}")?;
        }
        f.write_str(")")
    }
}

impl<C: Ring + fmt::Display> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{i}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.prec())
    }
}

// Operator sugar for use inside algorithms where the variables are known to
// agree; these panic on a variable mismatch. Use `arith` for checked access.
impl<C: Ring> Add for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn add(self, rhs: Self) -> PowerSeries<C> {
        self.try_add(rhs).expect("series variable mismatch")
    }
}

impl<C: Ring> Sub for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn sub(self, rhs: Self) -> PowerSeries<C> {
        self.try_sub(rhs).expect("series variable mismatch")
    }
}

impl<C: Ring> Mul for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn mul(self, rhs: Self) -> PowerSeries<C> {
        self.try_mul(rhs).expect("series variable mismatch")
    }
}

impl<C: Ring> Neg for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn neg(self) -> PowerSeries<C> {
        self.negate()
    }
}

impl<C: Ring> Ring for PowerSeries<C> {
    fn zero_like(&self) -> Self {
        PowerSeries::zero(self.var, &self.unit, self.prec())
    }
    fn one_like(&self) -> Self {
        PowerSeries::one(self.var, &self.unit, self.prec())
    }
    fn is_zero(&self) -> bool {
        PowerSeries::is_zero(self)
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
        PowerSeries::negate(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        PowerSeries::scale(self, r)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn constant_like(&self, r: &Rational) -> Self {
        PowerSeries::constant(self.var, self.unit.constant_like(r), self.prec())
    }
}

/// Elementary series used throughout the test-suites and presets.
pub mod elementary {
    use super::*;

    /// `e^x - 1`.
    pub fn expm1(var: Var, prec: usize) -> RatSeries {
        let mut coeffs = vec![int(0)];
        let mut fact = Rational::from_integer(1.into());
        for k in 1..prec {
            fact *= int(k as i64);
            coeffs.push(fact.recip());
        }
        coeffs.truncate(prec);
        RatSeries::from_rationals(var, coeffs)
    }

    /// `ln(1 + x)`.
    pub fn log1p(var: Var, prec: usize) -> RatSeries {
        let coeffs = (0..prec)
            .map(|k| match k {
                0 => int(0),
                k if k % 2 == 1 => rational::rat(1, k as i64),
                k => rational::rat(-1, k as i64),
            })
            .collect();
        RatSeries::from_rationals(var, coeffs)
    }

    /// `-ln(1 - x)`.
    pub fn neg_log1m(var: Var, prec: usize) -> RatSeries {
        let coeffs = (0..prec)
            .map(|k| if k == 0 { int(0) } else { rational::rat(1, k as i64) })
            .collect();
        RatSeries::from_rationals(var, coeffs)
    }

    /// `1 / (1 - x)`.
    pub fn geometric(var: Var, prec: usize) -> RatSeries {
        RatSeries::from_rationals(var, vec![int(1); prec])
    }

    /// A polynomial given by its coefficients, known to `prec` terms.
    pub fn polynomial(var: Var, coeffs: &[Rational], prec: usize) -> RatSeries {
        let mut c: Vec<Rational> = coeffs.iter().take(prec).cloned().collect();
        c.resize(prec, int(0));
        RatSeries::from_rationals(var, c)
    }
}

#[cfg(test)]
mod tests {
    use super::elementary::*;
    use super::*;
    use crate::rational::rat;

    fn x_series(coeffs: &[i64]) -> RatSeries {
        RatSeries::from_ints(Var::X, coeffs)
    }

    #[test]
    fn telescoping_product() {
        let a = x_series(&[1, 1, 0, 0]);
        let b = x_series(&[1, -1, 0, 0]);
        assert_eq!(arith(&a, &b, ArithOp::Mul).unwrap(), x_series(&[1, 0, -1, 0]));
    }

    #[test]
    fn bernoulli_generating_function() {
        // x/(e^x-1) from the Bernoulli recurrence sum_k binom(n+1,k) B_k = 0
        let mut b = vec![int(1)];
        for n in 1..5usize {
            let mut acc = int(0);
            for (k, bk) in b.iter().enumerate() {
                acc += Rational::from_integer(rational::binomial_int(n + 1, k)) * bk;
            }
            b.push(-acc / int(n as i64 + 1));
        }
        let oracle: Vec<Rational> = b
            .iter()
            .enumerate()
            .map(|(n, bn)| bn / Rational::from_integer(rational::factorial(n)))
            .collect();
        let num = expm1(Var::X, 6).div_var_pow(1).unwrap();
        let ratio = arith(&num.one_like(), &num, ArithOp::Div).unwrap();
        assert_eq!(ratio.coeffs(), &oracle[..]);
        assert_eq!(oracle, vec![int(1), rat(-1, 2), rat(1, 12), int(0), rat(-1, 720)]);
    }

    #[test]
    fn division_requires_unit() {
        let a = x_series(&[1, 2, 3]);
        let b = x_series(&[0, 1, 1]);
        assert!(matches!(arith(&a, &b, ArithOp::Div), Err(Error::NotInvertible { .. })));
        let t = RatSeries::from_ints(Var::T, &[1, 1]);
        assert!(matches!(arith(&a, &t, ArithOp::Add), Err(Error::VariableMismatch { .. })));
        let q = arith(&a, &a, ArithOp::Div).unwrap();
        assert_eq!(q, x_series(&[1, 0, 0]));
    }

    #[test]
    fn composition_examples() {
        let c = expm1(Var::X, 12).compose(&log1p(Var::X, 12)).unwrap();
        assert_eq!(c, RatSeries::variable(Var::X, &int(1), 12));
        let sq = x_series(&[0, 0, 1, 0, 0, 0]);
        let inner = x_series(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(sq.compose(&inner).unwrap(), x_series(&[0, 0, 1, 2, 1, 0]));
        assert!(matches!(sq.compose(&x_series(&[1, 1])), Err(Error::NonzeroConstant { .. })));
    }

    #[test]
    fn reversion_examples() {
        let x = RatSeries::variable(Var::X, &int(1), 8);
        assert_eq!(x.revert().unwrap(), x);
        // 1 - e^{-x} reverts to -ln(1 - x)
        let one_minus_exp = expm1(Var::X, 10).compose(&x_series(&[0, -1, 0, 0, 0, 0, 0, 0, 0, 0])).unwrap().negate();
        assert_eq!(one_minus_exp.revert().unwrap(), neg_log1m(Var::X, 10));
        let r = x_series(&[0, 1, 1, 0, 0, 0]).revert().unwrap();
        assert_eq!(r, x_series(&[0, 1, -1, 2, -5, 14]));
        // non-unit but invertible linear coefficient
        let two_x = x_series(&[0, 2, 0, 0]);
        assert_eq!(two_x.revert().unwrap(), RatSeries::from_rationals(Var::X, vec![int(0), rat(1, 2), int(0), int(0)]));
        assert!(x_series(&[0, 0, 1]).revert().is_err());
    }

    #[test]
    fn exp_log_examples() {
        let zero = RatSeries::zero(Var::X, &int(1), 5);
        assert_eq!(zero.exp().unwrap(), RatSeries::one(Var::X, &int(1), 5));
        let u = x_series(&[0, 1, 0, 1, 0, 0, 0]);
        assert_eq!(u.exp().unwrap().log().unwrap(), u);
        // exp(sum x^n/(n n!)) = 1 + x + 3/4 x^2 + 17/36 x^3
        let v = RatSeries::from_rationals(Var::X, vec![int(0), int(1), rat(1, 4), rat(1, 18)]);
        assert_eq!(
            v.exp().unwrap(),
            RatSeries::from_rationals(Var::X, vec![int(1), int(1), rat(3, 4), rat(17, 36)])
        );
        assert!(x_series(&[1, 1]).exp().is_err());
        assert!(x_series(&[2, 1]).log().is_err());
    }

    #[test]
    fn pow_param_examples() {
        let one = RatSeries::one(Var::X, &int(1), 6);
        assert_eq!(pow_param(&one, Symbol::S).unwrap(), ParamSeries::one(Var::X, &ParamPoly::one(), 6));
        let bern = expm1(Var::X, 7).div_var_pow(1).unwrap().inverse().unwrap();
        let q = pow_param(&bern, Symbol::S).unwrap();
        assert_eq!(q.coeff(1).unwrap(), &ParamPoly::symbol(Symbol::S).scale(&rat(-1, 2)));
        let one_plus_x = x_series(&[1, 1, 0, 0, 0, 0]);
        let p = pow_param(&one_plus_x, Symbol::S).unwrap();
        for n in 0..6 {
            assert_eq!(p.coeff(n).unwrap(), &ParamPoly::symbol(Symbol::S).binomial(n));
        }
        assert!(pow_param(&x_series(&[2, 1]), Symbol::S).is_err());
    }

    #[test]
    fn calculus_examples() {
        assert_eq!(x_series(&[0, 0, 0, 1]).derive(), x_series(&[0, 0, 3]));
        let g = &geometric(Var::X, 6) - &RatSeries::one(Var::X, &int(1), 6);
        let expect: Vec<Rational> = (0..7)
            .map(|n| if n < 2 { int(0) } else { rat(1, n) })
            .collect();
        assert_eq!(g.integrate().coeffs(), &expect[..]);
        let w = neg_log1m(Var::X, 10);
        assert_eq!(w.derive(), geometric(Var::X, 9));
    }

    #[test]
    fn reading_past_order_is_an_error() {
        let a = x_series(&[1, 2]);
        assert!(matches!(a.coeff(2), Err(Error::Truncation { .. })));
        assert_eq!(a.derive().prec(), 1);
        assert_eq!(a.integrate().prec(), 3);
    }
}
