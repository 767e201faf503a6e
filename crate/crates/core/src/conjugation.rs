//! The conjugated operator `(w/f(w))^s (sL - d/dw) (f(w)/w)^s` on
//! `sum g_n w^n/n!`, its iterates, the series `l_s(alpha)`, the closed-form
//! resolvent and the conjugation formula for a general `T(alpha, D)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::asymptotic::AsymptoticSeries;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::operator::graded::{graded_resolvent, resolvent_series, resolvent_x, shifted_x, ElemOp, EvalPoint, GradedOperator};
use crate::param_poly::{ParamPoly, Symbol};
use crate::rational::{self, int, Rational};
use crate::ring::Ring;
use crate::series::{ParamSeries, RatSeries, Var};
use crate::sheffer::{apply_t, compare_descending, t_target, TTerm};
use crate::umbral::{self, BinomialFamily};

fn fact(n: usize) -> Rational {
    Rational::from_integer(rational::factorial(n))
}

fn q_in(fam: &BinomialFamily, count: usize, s: &ParamPoly) -> Result<Vec<ParamPoly>> {
    Ok(fam
        .q_at_zero(count)?
        .iter()
        .map(|q| q.substitute(Symbol::S, s))
        .collect())
}

/// The coefficient law: `g'_n = (s-n-1)/(n+1) (g_{n+1} - g_0 q_{n+1}(s))`.
pub fn conjugated_step(fam: &BinomialFamily, g_col: &[ParamPoly], s: &ParamPoly) -> Result<Vec<ParamPoly>> {
    if g_col.is_empty() {
        return Ok(Vec::new());
    }
    let q = q_in(fam, g_col.len(), s)?;
    Ok((0..g_col.len() - 1)
        .map(|n| {
            let factor = (s - &ParamPoly::from_int(n as i64 + 1)).scale(&Rational::new(1.into(), (n as i64 + 1).into()));
            &factor * &(&g_col[n + 1] - &(&g_col[0] * &q[n + 1]))
        })
        .collect())
}

/// The same step by conjugating series in `x` and re-expanding in `omega`.
pub fn conjugated_step_series(fam: &BinomialFamily, g_col: &[ParamPoly], s: &ParamPoly) -> Result<Vec<ParamPoly>> {
    let op = "conjugated_step";
    let n = g_col.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if fam.order < n + 2 {
        return Err(Error::truncation(op, n + 2, fam.order));
    }
    let prec = n + 1;
    let omega = fam.omega.truncate(prec + 1);
    let w = omega.to_param();
    // sum g_k w^k / k!
    let coeffs: Vec<ParamPoly> = g_col.iter().enumerate().map(|(k, g)| g.scale(&fact(k).recip())).collect();
    let g_w = ParamSeries::new(Var::X, coeffs, ParamPoly::one()).compose(&w.truncate(n))?;
    let ratio = fam.f.compose(&omega)?.div_var_pow(1)?.try_div(&omega.div_var_pow(1)?)?;
    let up = ratio.to_param().pow(s)?;
    let down = ratio.to_param().pow(&-s)?;
    let conj = GradedOperator::new(fam)?
        .with_part(1, vec![ElemOp::Scale(s.clone()), ElemOp::L])
        .with_part(1, vec![ElemOp::Scale(ParamPoly::from_int(-1)), ElemOp::DOmega]);
    let h = down.try_mul(&conj.apply_sum(&up.try_mul(&g_w)?)?)?;
    // x = tau_f(w) re-expands in powers of omega
    let in_w = h.compose(&fam.tau_f.truncate(h.prec()).to_param())?;
    if in_w.prec() < n - 1 {
        return Err(Error::truncation(op, n - 1, in_w.prec()));
    }
    Ok((0..n - 1).map(|k| in_w.coeffs()[k].scale(&fact(k))).collect())
}

/// Columns `g^0, g^1, ..`; column `k` has `len - k` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatedState {
    pub g_table: Vec<Vec<ParamPoly>>,
}

impl ConjugatedState {
    pub fn g(&self, n: usize, k: usize) -> Option<&ParamPoly> {
        self.g_table.get(k).and_then(|c| c.get(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pipeline {
    CoefficientLaw,
    Series,
}

pub fn conjugated_table(
    fam: &BinomialFamily,
    g0: &[ParamPoly],
    s: &ParamPoly,
    k_max: usize,
    pipeline: Pipeline,
) -> Result<ConjugatedState> {
    let mut table = vec![g0.to_vec()];
    for k in 0..k_max {
        let col = &table[k];
        let next = match pipeline {
            Pipeline::CoefficientLaw => conjugated_step(fam, col, s)?,
            Pipeline::Series => conjugated_step_series(fam, col, s)?,
        };
        table.push(next);
    }
    Ok(ConjugatedState { g_table: table })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialRecurrenceReport {
    pub n_max: usize,
    pub k_max: usize,
    pub failures: Vec<(usize, usize)>,
    pub pipelines_agree: bool,
    pub holds: bool,
}

/// `binom(s-1,n)(g_n^k - g_0^k q_n) + sum_{m<=k} binom(s-1,n+m) q_{n+m} g_0^{k-m}
/// = binom(s-1,n+k) g_{n+k}^0`, table from series conjugation.
pub fn binomial_recurrence_check(fam: &BinomialFamily, g0: &[ParamPoly], n_max: usize, k_max: usize) -> Result<BinomialRecurrenceReport> {
    let len = n_max + k_max + 1;
    if g0.len() < len {
        return Err(Error::truncation("binomial_recurrence_check", len, g0.len()));
    }
    let s = ParamPoly::symbol(Symbol::S);
    let g0 = &g0[..len];
    let table = conjugated_table(fam, g0, &s, k_max, Pipeline::Series)?;
    let law = conjugated_table(fam, g0, &s, k_max, Pipeline::CoefficientLaw)?;
    let q = q_in(fam, len, &s)?;
    let b = |j: usize| (&s - &ParamPoly::one()).binomial(j);
    let mut failures = Vec::new();
    for k in 0..=k_max {
        for n in 0..=n_max {
            let g = |n: usize, k: usize| table.g(n, k).cloned().expect("table sized to n_max + k_max");
            let mut lhs = &b(n) * &(&g(n, k) - &(&g(0, k) * &q[n]));
            for m in 0..=k {
                lhs = &lhs + &(&(&b(n + m) * &q[n + m]) * &g(0, k - m));
            }
            let rhs = &b(n + k) * &g(n + k, 0);
            if lhs != rhs {
                failures.push((n, k));
            }
        }
    }
    Ok(BinomialRecurrenceReport {
        n_max,
        k_max,
        pipelines_agree: table == law,
        holds: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllReport {
    pub depth: usize,
    pub from_table: Vec<String>,
    pub from_p_s: Vec<String>,
    /// `l_s * sum binom(s-1,k) q_k a^{-k} = sum binom(s-1,k) g_k a^{-k}`.
    pub product_identity: bool,
    pub holds: bool,
}

/// `l_s(alpha) = sum_k g_0^k alpha^{-k}` against `(alpha/p_s) g(D) alpha^{s-1}`.
pub fn ell_s(fam: &BinomialFamily, g0: &[ParamPoly], depth: usize) -> Result<EllReport> {
    if g0.len() < depth + 1 {
        return Err(Error::truncation("ell_s", depth + 1, g0.len()));
    }
    let s = ParamPoly::symbol(Symbol::S);
    let s1 = &s - &ParamPoly::one();
    let table = conjugated_table(fam, &g0[..=depth], &s, depth, Pipeline::CoefficientLaw)?;
    let from_table: Vec<ParamPoly> = (0..=depth).map(|k| table.g(0, k).cloned().expect("column head")).collect();

    // g(D) alpha^{s-1} = alpha^{s-1} sum_k g_k (s-1)_k / k! alpha^{-k}
    let gd = AsymptoticSeries::new(
        s1.clone(),
        (0..=depth).map(|k| (&s1.falling(k) * &g0[k]).scale(&fact(k).recip())).collect(),
    );
    let ps = umbral::p_symbolic(fam, depth)?;
    let ratio = gd.div(&ps)?;
    let from_p_s = ratio.param_coeffs()?;

    let q = fam.q_at_zero(depth + 1)?;
    let lhs: Vec<ParamPoly> = (0..=depth)
        .map(|m| {
            (0..=m).fold(ParamPoly::zero(), |acc, k| &acc + &(&from_table[m - k] * &(&s1.binomial(k) * &q[k])))
        })
        .collect();
    let product_identity = lhs.iter().enumerate().all(|(k, c)| c == &(&s1.binomial(k) * &g0[k]));
    Ok(EllReport {
        depth,
        holds: from_table == from_p_s,
        product_identity,
        from_table: from_table.iter().map(ToString::to_string).collect(),
        from_p_s: from_p_s.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub s: String,
    pub depth_x: usize,
    pub depth_a: usize,
    /// `(omega^N, alpha^{-m})` entries where the two sides differ.
    pub mismatches: Vec<(usize, usize)>,
    /// Positive powers of `alpha` left over on the closed-form side.
    pub positive_leftovers: usize,
    pub holds: bool,
}

fn laurent_at(l: &Laurent, e: i64) -> Rational {
    l.coeff(e).unwrap_or_else(Rational::zero)
}

/// `(1 - s a^{-1} L + a^{-1} d/dw)^{-1} g(w(x))` by graded inversion against
/// the closed form with `int_0^1 t^{k-s} dt = 1/(k+1-s)` applied termwise.
pub fn resolvent_closed_form(
    fam: &BinomialFamily,
    g: &RatSeries,
    s_val: &Rational,
    depth_x: usize,
    depth_a: usize,
) -> Result<ClosedFormReport> {
    let op = "resolvent_closed_form";
    let nx = depth_x + 1;
    let big = depth_a + depth_x + 2;
    let need = nx + depth_a + 2;
    if fam.order < need.max(big + 1) {
        return Err(Error::truncation(op, need.max(big + 1), fam.order));
    }
    for k in 0..=depth_x + 1 {
        for b in 0..=depth_x {
            if int((k + b + 1) as i64) == *s_val {
                return Err(Error::precondition(op, format!("pole at k + b + 1 = s for k = {k}, b = {b}")));
            }
        }
    }
    let s = ParamPoly::constant(s_val.clone());
    let g = g.clone().with_var(Var::X);

    // left side, re-expanded in omega
    let omega = fam.omega.truncate(need);
    let g_x = g.truncate(need).compose(&omega)?.to_param();
    let r = resolvent_series(&resolvent_x(fam, &s)?, &[g_x], depth_a)?;
    let tau = fam.tau_f.truncate(need).to_param();
    let lhs: Vec<Vec<Rational>> = r
        .iter()
        .map(|rm| {
            let in_w = rm.compose(&tau.truncate(rm.prec()))?.to_rational()?;
            in_w.require_prec(op, nx)?;
            Ok(in_w.coeffs()[..nx].to_vec())
        })
        .collect::<Result<_>>()?;

    // g~ = (w/f(w))^s g, coefficients g~_k = k! [w^k]
    let f_over = fam.f.truncate(big + 1).div_var_pow(1)?;
    let down = f_over.inverse()?.pow(s_val)?;
    let up = f_over.pow(s_val)?;
    let g_tilde = down.try_mul(&g.truncate(big))?;
    let q: Vec<Rational> = (0..big).map(|k| &down.coeffs()[k] * fact(k)).collect();
    let gt: Vec<Rational> = (0..big).map(|k| &g_tilde.coeffs()[k] * fact(k)).collect();

    // l_s = sum binom(s-1,k) g~_k a^{-k} / sum binom(s-1,k) q_k a^{-k}
    let b = |k: usize| {
        (ParamPoly::constant(s_val - int(1)))
            .binomial(k)
            .as_constant()
            .expect("numeric binomial")
    };
    let num = RatSeries::from_rationals(Var::Alpha, (0..big).map(|k| b(k) * &gt[k]).collect());
    let den = RatSeries::from_rationals(Var::Alpha, (0..big).map(|k| b(k) * &q[k]).collect());
    let ell = num.try_div(&den)?;
    let floor = -(big as i64) + 1;
    let ell_l = Laurent::from_terms(ell.coeffs().iter().enumerate().map(|(j, c)| (-(j as i64), c.clone())), Some(floor));

    // termwise part T_j, j = 1..=depth_x
    let mut t_part = vec![Laurent::zero().with_floor(Some(floor)); nx];
    for (j, slot) in t_part.iter_mut().enumerate().skip(1) {
        for k in 0..j {
            let diff = Laurent::monomial(0, gt[k].clone()).minus(&ell_l.scale(&q[k]));
            let rest = j - 1 - k;
            for a in 0..=rest {
                let bb = rest - a;
                let sign = if a % 2 == 0 { int(1) } else { int(-1) };
                let w = sign / (fact(k) * fact(a) * fact(bb) * (int((k + bb + 1) as i64) - s_val));
                let term = diff.times(&Laurent::monomial((1 + a + bb) as i64, w));
                *slot = slot.plus(&term);
            }
        }
    }
    // (f(w)/w)^s times the termwise part, plus l_s
    let mut rhs = Vec::with_capacity(nx);
    for n in 0..nx {
        let mut acc = if n == 0 { ell_l.clone() } else { Laurent::zero().with_floor(Some(floor)) };
        for j in 1..=n {
            acc = acc.plus(&t_part[j].scale(&up.coeffs()[n - j]));
        }
        rhs.push(acc);
    }

    let mut mismatches = Vec::new();
    let mut positive_leftovers = 0;
    for (n, rn) in rhs.iter().enumerate() {
        positive_leftovers += rn.terms().filter(|(e, c)| **e > 0 && !Zero::is_zero(*c)).count();
        for (m, lm) in lhs.iter().enumerate() {
            if laurent_at(rn, -(m as i64)) != lm[n] {
                mismatches.push((n, m));
            }
        }
    }
    Ok(ClosedFormReport {
        s: rational::to_string(s_val),
        depth_x,
        depth_a,
        holds: mismatches.is_empty() && positive_leftovers == 0,
        mismatches,
        positive_leftovers,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub s: usize,
    pub depth: usize,
    pub direct: Vec<String>,
    pub at_zero: Vec<String>,
    pub shifted: Vec<String>,
    pub at_zero_holds: bool,
    pub shifted_holds: bool,
}

/// `(alpha/p_s) T (p_s/alpha)` directly, through the graded inverse at
/// `x = 0`, and through the form evaluated at `x = s/alpha`.
pub fn conjugated_expectation(fam: &BinomialFamily, t: &[TTerm], s: usize, depth: usize) -> Result<ExpectationReport> {
    let op = "conjugated_expectation";
    if s == 0 {
        return Err(Error::precondition(op, "s must be at least 1"));
    }
    let ps = umbral::p_seq(fam, s)?;
    let p = &ps.polys[s];
    let num = apply_t(t, &p.unshift(1)?)?.shift(1);
    let (top_l, direct) = num.laurent_div(p, depth + 1)?;

    let weight = ParamSeries::one(Var::X, &ParamPoly::one(), fam.order);
    let (top, target) = t_target(t, &fam.omega, &weight)?;
    let sp = ParamPoly::from_int(s as i64);
    let constants = |v: Vec<ParamPoly>| -> Result<Vec<Rational>> {
        v.iter()
            .map(|c| c.as_constant().ok_or_else(|| Error::precondition(op, "non-constant coefficient")))
            .collect()
    };
    let zero_form = constants(graded_resolvent(&resolvent_x(fam, &sp)?, &target, depth, &EvalPoint::Zero)?)?;
    let shifted = constants(graded_resolvent(
        &shifted_x(fam, &sp, depth)?,
        &target,
        depth,
        &EvalPoint::ScaledInverse(sp.clone()),
    )?)?;
    let (d, z, hz) = compare_descending((top_l, &direct), (top as i64, &zero_form), depth);
    let (_, sh, hs) = compare_descending((top_l, &direct), (top as i64, &shifted), depth);
    Ok(ExpectationReport {
        s,
        depth,
        direct: d,
        at_zero: z,
        shifted: sh,
        at_zero_holds: hz,
        shifted_holds: hs,
    })
}
