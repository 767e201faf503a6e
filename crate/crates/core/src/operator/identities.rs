//! Brute-force checks: the divided-difference identity for `(1 - pL)^{-1} L`
//! and the iterated-integral representation of `T_n`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param_poly::{ParamPoly, Symbol};
use crate::rational::{self, int, Rational};
use crate::series::{RatSeries, Var};
use crate::umbral::BinomialFamily;

/// Polynomial in `x` with coefficients in `Q[p]` (`p` stored as the symbol `s`).
type XPoly = Vec<ParamPoly>;

fn p_sym() -> ParamPoly {
    ParamPoly::symbol(Symbol::S)
}

fn x_trim(mut v: XPoly) -> XPoly {
    while v.last().is_some_and(ParamPoly::is_zero) {
        v.pop();
    }
    v
}

fn l_op(g: &XPoly) -> XPoly {
    g.iter().skip(1).cloned().collect()
}

/// `g(p)`: substitute `x = p`.
fn at_x_eq_p(g: &XPoly) -> ParamPoly {
    let p = p_sym();
    g.iter()
        .enumerate()
        .fold(ParamPoly::zero(), |acc, (k, c)| &acc + &(c * &p.pow(k as u32)))
}

/// `(x g(x) - p g(p)) / (x - p)` by synthetic division.
fn resolvent_action(g: &XPoly) -> Result<XPoly> {
    let p = p_sym();
    let mut num: XPoly = vec![-&(&p * &at_x_eq_p(g))];
    num.extend(g.iter().cloned());
    let num = x_trim(num);
    if num.is_empty() {
        return Ok(Vec::new());
    }
    let d = num.len() - 1;
    let mut q = vec![ParamPoly::zero(); d];
    let mut carry = ParamPoly::zero();
    for k in (1..=d).rev() {
        carry = &num[k] + &(&p * &carry);
        q[k - 1] = carry.clone();
    }
    let rem = &num[0] + &(&p * &carry);
    if !rem.is_zero() {
        return Err(Error::precondition("divided_difference", "divided difference left a remainder"));
    }
    Ok(x_trim(q))
}

fn dp(g: &XPoly) -> XPoly {
    x_trim(g.iter().map(|c| c.derivative(Symbol::S)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DividedDifferenceReport {
    pub n: usize,
    pub m: usize,
    pub p_power: u32,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Both sides of the identity on `f = x^m p^j`.
pub fn divided_difference_sides(n: usize, m: usize, p_power: u32) -> Result<(ParamPoly, ParamPoly)> {
    let p = p_sym();
    let mut f: XPoly = vec![ParamPoly::zero(); m + 1];
    f[m] = p.pow(p_power);
    let mut h = resolvent_action(&l_op(&f))?;
    for _ in 0..n {
        h = dp(&h);
    }
    let lhs = at_x_eq_p(&h);
    let mut diag = at_x_eq_p(&f);
    let mut inner = f.clone();
    for _ in 0..=n {
        diag = diag.derivative(Symbol::S);
        inner = dp(&inner);
    }
    let rhs = (&diag - &at_x_eq_p(&inner)).scale(&Rational::new(1.into(), (n as i64 + 1).into()));
    Ok((lhs, rhs))
}

pub fn divided_difference_check(n: usize, m: usize) -> Result<Vec<DividedDifferenceReport>> {
    (0..=2u32)
        .map(|j| {
            let (lhs, rhs) = divided_difference_sides(n, m, j)?;
            Ok(DividedDifferenceReport {
                n,
                m,
                p_power: j,
                holds: lhs == rhs,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        })
        .collect()
}

/// Polynomial in `eps_1..eps_n, t_1..t_n` over series in `s`, cut at
/// degree 2 in each `eps`.
#[derive(Debug, Clone)]
struct EpsPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, RatSeries>,
}

impl EpsPoly {
    fn constant(n: usize, c: RatSeries) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; 2 * n], c);
        EpsPoly { n, terms }
    }

    fn add_term(&mut self, key: Vec<u32>, c: RatSeries) -> Result<()> {
        if key[..self.n].iter().any(|&e| e > 2) || c.is_zero() {
            return Ok(());
        }
        let merged = match self.terms.remove(&key) {
            Some(old) => old.try_add(&c)?,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
        Ok(())
    }

    fn mul(&self, rhs: &EpsPoly) -> Result<EpsPoly> {
        let mut out = EpsPoly { n: self.n, terms: BTreeMap::new() };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(key, ca.try_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    fn add(&self, rhs: &EpsPoly) -> Result<EpsPoly> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// `delta_k = sum_{i<=k} eps_i t_i ... t_k` with unit coefficients.
    fn shift_sum(n: usize, k: usize, unit_prec: usize) -> EpsPoly {
        let one = RatSeries::one(Var::S, &Rational::one(), unit_prec);
        let mut out = EpsPoly { n, terms: BTreeMap::new() };
        for i in 1..=k {
            let mut key = vec![0; 2 * n];
            key[i - 1] = 1;
            for l in i..=k {
                key[n + l - 1] = 1;
            }
            out.terms.insert(key, one.clone());
        }
        out
    }
}

/// `h(s + delta) = sum_j h^{(j)}(s) delta^j / j!`, cut where the eps degree runs out.
fn taylor_shift(h: &RatSeries, delta: &EpsPoly, max_j: usize) -> Result<EpsPoly> {
    let n = delta.n;
    let mut acc = EpsPoly::constant(n, h.clone());
    let mut power = EpsPoly::constant(n, RatSeries::one(Var::S, &Rational::one(), h.prec()));
    let mut deriv = h.clone();
    for j in 1..=max_j {
        if deriv.prec() == 0 {
            return Err(Error::truncation("Tn_integral_oracle", j, h.prec()));
        }
        deriv = deriv.derive();
        power = power.mul(delta)?;
        let jf = Rational::from_integer(rational::factorial(j)).recip();
        let term = EpsPoly::constant(n, deriv.scale(&jf));
        acc = acc.add(&term.mul(&power)?)?;
    }
    Ok(acc)
}

/// `T_n g` from the `[0,1]^n` integral: expand to second order in every
/// `eps_k`, then integrate `t^{a-1}` to `1/a`.
pub fn tn_integral_oracle(fam: &BinomialFamily, n: usize, g: &RatSeries) -> Result<RatSeries> {
    let g = g.clone().with_var(Var::S);
    let sigma = fam.sigma(Var::S)?;
    if n == 0 {
        return Ok(g);
    }
    let mut prod = EpsPoly::constant(n, RatSeries::one(Var::S, &Rational::one(), g.prec()));
    for k in 1..n {
        let delta = EpsPoly::shift_sum(n, k, sigma.prec());
        prod = prod.mul(&taylor_shift(&sigma, &delta, 2 * k)?)?;
    }
    let delta = EpsPoly::shift_sum(n, n, g.prec());
    prod = prod.mul(&taylor_shift(&g, &delta, 2 * n)?)?;
    let mut acc: Option<RatSeries> = None;
    for (key, c) in &prod.terms {
        if key[..n].iter().any(|&e| e != 2) {
            continue;
        }
        // d^2/deps^2 at zero gives 2 per variable
        let mut w: Rational = int(1 << n);
        for &a in &key[n..] {
            if a == 0 {
                return Err(Error::DivergentMonomial(-1));
            }
            w /= int(a as i64);
        }
        let term = c.scale(&w);
        acc = Some(match acc {
            None => term,
            Some(a) => a.try_add(&term)?,
        });
    }
    let inner = acc.unwrap_or_else(|| RatSeries::zero(Var::S, &Rational::one(), g.prec()));
    sigma.try_mul(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::diffop::build_tn;
    use crate::operator::nc::Route;
    use crate::series::elementary::expm1;
    use crate::umbral::build_family;

    #[test]
    fn divided_difference_low_cases() {
        let (l, r) = divided_difference_sides(0, 1, 0).unwrap();
        assert_eq!(l, ParamPoly::one());
        assert_eq!(r, ParamPoly::one());
        for n in 0..=3 {
            for m in 0..=5 {
                assert!(divided_difference_check(n, m).unwrap().iter().all(|r| r.holds), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn integral_matches_operator() {
        let fam = build_family(&expm1(Var::X, 12)).unwrap();
        let s2 = RatSeries::from_ints(Var::S, &[0, 0, 1, 0, 0, 0, 0, 0]);
        let via_int = tn_integral_oracle(&fam, 1, &s2).unwrap();
        assert_eq!(&via_int.coeffs()[..3], &[int(0), int(1), int(-1)]);
        for n in 1..=2 {
            let t = build_tn(&fam, n, Route::Nu).unwrap();
            let s4 = RatSeries::from_ints(Var::S, &[0, 0, 0, 0, 1, 0, 0, 0, 0, 0]);
            let a = t.apply(&s4).unwrap();
            let b = tn_integral_oracle(&fam, n, &s4).unwrap();
            let k = a.prec().min(b.prec());
            assert_eq!(a.truncate(k), b.truncate(k), "n={n}");
        }
        let c = RatSeries::from_ints(Var::S, &[3, 0, 0, 0]);
        assert!(tn_integral_oracle(&fam, 1, &c).unwrap().is_zero());
    }
}
