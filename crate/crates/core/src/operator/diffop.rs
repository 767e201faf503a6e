//! Normal-ordered differential operators `sum_j c_j(v) (d/dv)^j`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::nc::{self, Letter, NCPoly, Route};
use crate::rational::Rational;
use crate::param_poly::ParamPoly;
use crate::series::{ParamSeries, RatSeries, Var};
use crate::umbral::BinomialFamily;

#[derive(Debug, Clone, PartialEq)]
pub struct DiffOperator {
    var: Var,
    /// `terms[j]` multiplies `(d/dv)^j`.
    terms: Vec<RatSeries>,
    prec: usize,
}

/// Series substituted for the letters of a word.
#[derive(Debug, Clone)]
pub struct Substitution {
    pub sigma: RatSeries,
    pub lambda: Option<RatSeries>,
    pub lambda_inv: Option<RatSeries>,
}

impl Substitution {
    pub fn sigma_only(sigma: RatSeries) -> Self {
        Substitution {
            sigma,
            lambda: None,
            lambda_inv: None,
        }
    }

    fn series_for(&self, l: Letter) -> Result<&RatSeries> {
        let missing = |what| Error::precondition("normal_order", what);
        match l {
            Letter::Sigma => Ok(&self.sigma),
            Letter::Lambda => self.lambda.as_ref().ok_or_else(|| missing("no series for lambda")),
            Letter::LambdaInv => self.lambda_inv.as_ref().ok_or_else(|| missing("no series for lambda^-1")),
            Letter::D | Letter::E => Err(missing("not a multiplication letter")),
        }
    }
}

/// One term of a serialized operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTerm {
    pub derivative: usize,
    pub coeffs: Vec<String>,
}

impl DiffOperator {
    pub fn identity(var: Var, prec: usize) -> Self {
        DiffOperator {
            var,
            terms: vec![RatSeries::one(var, &Rational::one(), prec)],
            prec,
        }
    }

    pub fn zero(var: Var, prec: usize) -> Self {
        DiffOperator {
            var,
            terms: Vec::new(),
            prec,
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn terms(&self) -> &[RatSeries] {
        &self.terms
    }

    /// Coefficient of `(d/dv)^j` (zero if absent).
    pub fn coeff(&self, j: usize) -> RatSeries {
        self.terms
            .get(j)
            .cloned()
            .unwrap_or_else(|| RatSeries::zero(self.var, &Rational::one(), self.prec))
    }

    pub fn order(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn add(&self, rhs: &DiffOperator) -> Result<DiffOperator> {
        let n = self.terms.len().max(rhs.terms.len());
        let prec = self.prec.min(rhs.prec);
        let terms = (0..n)
            .map(|j| self.coeff(j).try_add(&rhs.coeff(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiffOperator { var: self.var, terms, prec }.trimmed())
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(RatSeries::is_zero) {
            self.terms.pop();
        }
        self.prec = self.terms.iter().map(RatSeries::prec).min().unwrap_or(self.prec).min(self.prec);
        self
    }

    pub fn scale(&self, r: &Rational) -> DiffOperator {
        DiffOperator {
            var: self.var,
            terms: self.terms.iter().map(|t| t.scale(r)).collect(),
            prec: self.prec,
        }
        .trimmed()
    }

    /// `c * self`.
    pub fn left_mul_series(&self, c: &RatSeries) -> Result<DiffOperator> {
        let terms = self.terms.iter().map(|t| c.try_mul(t)).collect::<Result<Vec<_>>>()?;
        Ok(DiffOperator { var: self.var, terms, prec: self.prec.min(c.prec()) }.trimmed())
    }

    /// `D * self`, using `D c = c' + c D`.
    pub fn left_mul_d(&self) -> Result<DiffOperator> {
        let mut out = DiffOperator::zero(self.var, self.prec);
        for (j, c) in self.terms.iter().enumerate() {
            let mut part = vec![RatSeries::zero(self.var, &Rational::one(), c.prec()); j + 2];
            part[j] = c.derive();
            part[j + 1] = c.clone();
            out = out.add(&DiffOperator { var: self.var, terms: part, prec: c.prec() })?;
        }
        Ok(out)
    }

    /// `sum_j c_j g^{(j)}`.
    pub fn apply(&self, g: &RatSeries) -> Result<RatSeries> {
        if g.var() != self.var {
            return Err(Error::VariableMismatch { left: self.var, right: g.var() });
        }
        let mut acc: Option<RatSeries> = None;
        let mut d = g.clone();
        for (j, c) in self.terms.iter().enumerate() {
            if j > 0 {
                if d.prec() == 0 {
                    return Err(Error::truncation("apply_Tn", j + 1, g.prec()));
                }
                d = d.derive();
            }
            let term = c.try_mul(&d)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.try_add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| RatSeries::zero(self.var, &Rational::one(), g.prec())))
    }

    /// Application to a series with parameter coefficients.
    pub fn apply_param(&self, g: &ParamSeries) -> Result<ParamSeries> {
        if g.var() != self.var {
            return Err(Error::VariableMismatch { left: self.var, right: g.var() });
        }
        let mut acc = ParamSeries::zero(self.var, &ParamPoly::one(), g.prec());
        let mut d = g.clone();
        for (j, c) in self.terms.iter().enumerate() {
            if j > 0 {
                if d.prec() == 0 {
                    return Err(Error::truncation("apply_Tn", j + 1, g.prec()));
                }
                d = d.derive();
            }
            acc = acc.try_add(&c.to_param().try_mul(&d)?)?;
        }
        Ok(acc)
    }

    pub fn describe(&self) -> Vec<OperatorTerm> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| OperatorTerm { derivative: j, coeffs: c.to_strings() })
            .collect()
    }
}

/// Realizes a combination of `{sigma, D, lambda, lambda^-1}` words as a
/// normal-ordered operator, reading each word right to left.
pub fn normal_order(words: &NCPoly, sub: &Substitution, var: Var) -> Result<DiffOperator> {
    let prec = sub.sigma.prec();
    let mut total = DiffOperator::zero(var, prec);
    for (w, c) in words.terms() {
        let mut op = DiffOperator::identity(var, prec);
        for &l in w.letters().iter().rev() {
            op = match l {
                Letter::D => op.left_mul_d()?,
                Letter::E => return Err(Error::MalformedShape(format!("E inside coefficient word {w}"))),
                other => op.left_mul_series(&sub.series_for(other)?.clone().with_var(var))?,
            };
        }
        total = total.add(&op.scale(c))?;
    }
    Ok(total)
}

/// `T_n(s, d/ds)` with `sigma = s / omega'(s)`.
pub fn build_tn(fam: &BinomialFamily, n: usize, route: Route) -> Result<DiffOperator> {
    let words = nc::tn_words(n, route)?;
    let sigma = fam.sigma(Var::S)?;
    normal_order(&words, &Substitution::sigma_only(sigma), Var::S)
}

pub fn apply_tn(t: &DiffOperator, g: &RatSeries) -> Result<RatSeries> {
    t.apply(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::series::elementary::expm1;
    use crate::umbral::build_family;

    #[test]
    fn low_operators_for_exp_family() {
        let fam = build_family(&expm1(Var::X, 12)).unwrap();
        let t0 = build_tn(&fam, 0, Route::Nu).unwrap();
        assert_eq!(t0.order(), 0);
        let t1 = build_tn(&fam, 1, Route::Nu).unwrap();
        // 1/2 s (1 - s) d^2/ds^2
        assert_eq!(t1.order(), 2);
        assert!(t1.coeff(0).is_zero() && t1.coeff(1).is_zero());
        assert_eq!(&t1.coeff(2).coeffs()[..4], &[int(0), rat(1, 2), rat(-1, 2), int(0)]);
        let s2 = RatSeries::from_ints(Var::S, &[0, 0, 1, 0, 0, 0]);
        let out = t1.apply(&s2).unwrap();
        assert_eq!(&out.coeffs()[..3], &[int(0), int(1), int(-1)]);
        let c = RatSeries::from_ints(Var::S, &[5, 0, 0, 0]);
        assert!(t1.apply(&c).unwrap().is_zero());
    }

    #[test]
    fn routes_agree_on_identity_family() {
        let x = RatSeries::variable(Var::X, &int(1), 10);
        let fam = build_family(&x).unwrap();
        let t1 = build_tn(&fam, 1, Route::Matrix).unwrap();
        let s3 = RatSeries::from_ints(Var::S, &[0, 0, 0, 1, 0, 0]);
        assert_eq!(&t1.apply(&s3).unwrap().coeffs()[..3], &[int(0), int(0), int(3)]);
        for n in 0..=3 {
            assert_eq!(build_tn(&fam, n, Route::Nu).unwrap(), build_tn(&fam, n, Route::Matrix).unwrap());
        }
    }
}
