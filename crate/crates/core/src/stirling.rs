//! The expansion of `ln p_s(s/alpha)` in powers of `1/s`, the two operator
//! forms of `(1/s) ln p_s`, the `f -> f e^{-Ax}` symmetry and the limit
//! formulas.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotic::AsymptoticSeries;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::numeric;
use crate::operator::diffop::build_tn;
use crate::operator::graded::{ElemOp, GradedOperator};
use crate::operator::nc::Route;
use crate::param_poly::{ParamPoly, Symbol};
use crate::rational::{self, int, Rational};
use crate::series::{ParamSeries, PowerSeries, RatSeries, Var};
use crate::umbral::{self, build_family, BinomialFamily};

/// `(-s)^{1-n} alpha^{n-2} (T_n omega)(alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivTerm {
    pub n: usize,
    pub s_power: i64,
    pub sign: i64,
    pub alpha_shift: i64,
    pub t_n_omega: RatSeries,
}

pub fn log_deriv_expansion(fam: &BinomialFamily, n_max: usize) -> Result<Vec<LogDerivTerm>> {
    let omega = fam.omega.clone().with_var(Var::S);
    (0..=n_max)
        .map(|n| {
            let t = build_tn(fam, n, Route::Nu)?;
            let applied = t.apply(&omega)?.with_var(Var::Alpha);
            Ok(LogDerivTerm {
                n,
                s_power: 1 - n as i64,
                sign: if n % 2 == 1 { 1 } else { -1 },
                alpha_shift: n as i64 - 2,
                t_n_omega: applied,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StirlingTerm {
    pub k: usize,
    /// The term multiplies `s^{s_power}`, `s_power = 2 - k`.
    pub s_power: i64,
    pub series: RatSeries,
}

/// `ln p_s(s/alpha) ~ log_coeff * s ln(s/alpha) + sum_k g_k(alpha) s^{2-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StirlingExpansion {
    pub log_coeff: Rational,
    /// `int_0^alpha ln f'(omega(t)) dt`.
    pub integral_term: RatSeries,
    pub g_terms: Vec<StirlingTerm>,
}

impl StirlingExpansion {
    pub fn g(&self, k: usize) -> Result<&RatSeries> {
        self.g_terms
            .iter()
            .find(|t| t.k == k)
            .map(|t| &t.series)
            .ok_or_else(|| Error::truncation("stirling_terms", k, self.g_terms.len()))
    }
}

/// Integrates every graded term in `alpha`; the single `alpha^{-1}` term
/// (from `n = 0`) becomes the logarithm.
pub fn stirling_terms(fam: &BinomialFamily, n_terms: usize) -> Result<StirlingExpansion> {
    let op = "stirling_terms";
    if n_terms == 0 {
        return Err(Error::precondition(op, "need at least one term"));
    }
    let terms = log_deriv_expansion(fam, n_terms - 1)?;
    let mut log_coeff = Rational::zero();
    let mut g_terms = Vec::with_capacity(n_terms);
    for t in &terms {
        let c = t.t_n_omega.coeffs();
        let len = (c.len() as i64 + t.alpha_shift + 1).max(0) as usize;
        let mut out = vec![Rational::zero(); len];
        for (j, cj) in c.iter().enumerate() {
            let e = j as i64 + t.alpha_shift;
            if cj.is_zero() {
                continue;
            }
            match e {
                -1 if t.n == 0 => log_coeff = -cj * int(t.sign),
                e if e < 0 => {
                    return Err(Error::precondition(op, format!("resonant alpha^{e} term at n = {}", t.n)));
                }
                e => out[(e + 1) as usize] = cj * int(t.sign) / int(e + 1),
            }
        }
        g_terms.push(StirlingTerm {
            k: t.n + 1,
            s_power: t.s_power,
            series: RatSeries::from_rationals(Var::Alpha, out),
        });
    }
    let integral_term = fam.fprime_of_omega()?.log()?.integrate().with_var(Var::Alpha);
    Ok(StirlingExpansion {
        log_coeff,
        integral_term,
        g_terms,
    })
}

pub(crate) fn param_to_laurent(p: &ParamPoly) -> Result<Laurent> {
    let deg = p.degree_in(Symbol::S).unwrap_or(0);
    let mut terms = Vec::new();
    for d in 0..=deg {
        let c = p
            .coeff_of(Symbol::S, d)
            .as_constant()
            .ok_or_else(|| Error::precondition("direct_log", "coefficient depends on more than s"))?;
        terms.push((d as i64, c));
    }
    Ok(Laurent::from_terms(terms, None))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectLogReport {
    pub compared: usize,
    pub mismatches: Vec<String>,
}

/// Recomputes `g_k` from `ln sum_k binom(s-1,k) q_k(s) s^{-k} alpha^k` over
/// Laurent polynomials in `s` and compares coefficientwise.
pub fn direct_log_check(fam: &BinomialFamily, exp: &StirlingExpansion, alpha_order: usize) -> Result<DirectLogReport> {
    let ps = umbral::p_symbolic(fam, alpha_order)?;
    let coeffs = ps.param_coeffs()?;
    let body: Vec<Laurent> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| Ok(param_to_laurent(c)?.shift(-(k as i64))))
        .collect::<Result<_>>()?;
    let series = PowerSeries::new(Var::Alpha, body, Laurent::one());
    let log = series.log()?;
    let mut report = DirectLogReport { compared: 0, mismatches: Vec::new() };
    for (k, lk) in log.coeffs().iter().enumerate() {
        if lk.top().is_some_and(|t| t > 1) {
            report.mismatches.push(format!("alpha^{k}: s-power above 1"));
        }
        for term in &exp.g_terms {
            let Some(g) = term.series.get(k) else { continue };
            let direct = lk.coeff(term.s_power).unwrap_or_else(Rational::zero);
            report.compared += 1;
            if &direct != g {
                report.mismatches.push(format!(
                    "g_{} alpha^{k}: operator {} direct {}",
                    term.k,
                    rational::to_string(g),
                    rational::to_string(&direct)
                ));
            }
        }
    }
    Ok(report)
}

/// `(1/24)(2(w'-1)/w' + 4 a^2 w''^2/w'^3 - 2 a w''/w'^2 - 3 a^2 w'''/w'^2)`.
pub fn boxed_third_term(fam: &BinomialFamily) -> Result<RatSeries> {
    let w1 = fam.omega_prime().with_var(Var::Alpha);
    let w2 = w1.derive();
    let w3 = w2.derive();
    let inv = w1.inverse()?;
    let inv2 = inv.try_mul(&inv)?;
    let inv3 = inv2.try_mul(&inv)?;
    let a = RatSeries::variable(Var::Alpha, &int(1), w1.prec());
    let a2 = a.try_mul(&a)?;
    let one = RatSeries::one(Var::Alpha, &int(1), w1.prec());
    let t1 = w1.try_sub(&one)?.try_mul(&inv)?.scale(&int(2));
    let t2 = a2.try_mul(&w2)?.try_mul(&w2)?.try_mul(&inv3)?.scale(&int(4));
    let t3 = a.try_mul(&w2)?.try_mul(&inv2)?.scale(&int(-2));
    let t4 = a2.try_mul(&w3)?.try_mul(&inv2)?.scale(&int(-3));
    Ok(t1.try_add(&t2)?.try_add(&t3)?.try_add(&t4)?.scale(&Rational::new(1.into(), 24.into())))
}

/// `-(1/48) (a^3/w') (a/w')^(4)`.
pub fn boxed_fourth_term(fam: &BinomialFamily) -> Result<RatSeries> {
    let sigma = fam.sigma(Var::Alpha)?;
    let d4 = sigma.derive().derive().derive().derive();
    let a2 = RatSeries::variable(Var::Alpha, &int(1), d4.prec()).pow_int(2);
    Ok(sigma.try_mul(&a2)?.try_mul(&d4)?.scale(&Rational::new((-1).into(), 48.into())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogVariant {
    OperatorLog,
    ShiftExponential,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogIdentityReport {
    pub variant: LogVariant,
    pub depth: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub mismatched: Vec<usize>,
    pub holds: bool,
}

/// `(1/s) ln(alpha^{-s} p_s)` (or with the `ln alpha` part kept), as
/// coefficients of `alpha^{-k}`; entry 0 of the second vector is the
/// coefficient of `ln alpha`.
fn log_lhs(fam: &BinomialFamily, depth: usize, keep_exponent: bool) -> Result<(ParamPoly, Vec<ParamPoly>)> {
    // the series log needs at least two known coefficients
    let ps = umbral::p_symbolic(fam, depth.max(1))?;
    let ps = if keep_exponent {
        ps
    } else {
        AsymptoticSeries::new(ParamPoly::zero(), ps.param_coeffs()?)
    };
    let log = ps.log()?;
    let mut ln_part = ParamPoly::zero();
    let mut out = Vec::with_capacity(depth + 1);
    for (k, c) in log.body().coeffs().iter().enumerate() {
        if k == 0 {
            ln_part = c.part(1).div_by_symbol(Symbol::S)?;
        }
        if c.parts().len() > 2 || (k > 0 && !c.part(1).is_zero()) {
            return Err(Error::precondition("verify_log_identity", "unexpected ln alpha power"));
        }
        out.push(c.part(0).div_by_symbol(Symbol::S)?);
    }
    out.truncate(depth + 1);
    Ok((ln_part, out))
}

fn x_series_of(r: &RatSeries) -> ParamSeries {
    r.clone().with_var(Var::X).to_param()
}

/// Coefficients `[Y^k seed](0)`, `k <= depth`, for a grade-one operator `Y`.
fn iterate_at_zero(op: &GradedOperator, seed: &ParamSeries, depth: usize) -> Result<Vec<ParamPoly>> {
    let mut g = seed.clone();
    let mut out = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        if k > 0 {
            g = op.apply_sum(&g)?;
        }
        out.push(
            g.coeff(0)
                .map_err(|_| Error::truncation("verify_log_identity", depth + 1, seed.prec()))?
                .clone(),
        );
    }
    Ok(out)
}

pub fn verify_log_identity(fam: &BinomialFamily, variant: LogVariant, depth: usize) -> Result<LogIdentityReport> {
    let s = ParamPoly::symbol(Symbol::S);
    let (lhs, rhs) = match variant {
        LogVariant::OperatorLog => {
            let (_, lhs) = log_lhs(fam, depth, false)?;
            // ln(1 - X) = -sum X^k / k with X = alpha^{-1}(sL - d/domega)
            let op = GradedOperator::new(fam)?
                .with_part(1, vec![ElemOp::Scale(s.clone()), ElemOp::L])
                .with_part(1, vec![ElemOp::Scale(ParamPoly::from_int(-1)), ElemOp::DOmega]);
            let seed = x_series_of(&fam.omega.div_var_pow(1)?);
            let powers = iterate_at_zero(&op, &seed, depth)?;
            let rhs = powers
                .iter()
                .enumerate()
                .map(|(k, c)| if k == 0 { ParamPoly::zero() } else { c.scale(&Rational::new((-1).into(), (k as i64).into())) })
                .collect::<Vec<_>>();
            (lhs, rhs)
        }
        LogVariant::ShiftExponential => {
            let (ln_part, mut lhs) = log_lhs(fam, depth, true)?;
            // e^{d/dalpha Y} u |_0 ln(alpha), with d^m/dalpha^m ln(alpha) = (-1)^{m-1} (m-1)! alpha^{-m}
            let u = fam.fprime.try_div(&fam.f.div_var_pow(1)?)?;
            let u_param = x_series_of(&u);
            let op = GradedOperator::new(fam)?
                .with_part(1, vec![ElemOp::Dx])
                .with_part(1, vec![ElemOp::Scale(-&s), ElemOp::Mul(u_param.clone()), ElemOp::L]);
            let powers = iterate_at_zero(&op, &u_param, depth)?;
            let mut rhs = Vec::with_capacity(depth + 2);
            // slot 0 carries the ln(alpha) coefficient on both sides
            lhs.insert(0, ln_part);
            rhs.push(powers[0].clone());
            rhs.push(ParamPoly::zero());
            for (m, c) in powers.iter().enumerate().skip(1) {
                let sign = if m % 2 == 1 { 1 } else { -1 };
                rhs.push(c.scale(&Rational::new(sign.into(), (m as i64).into())));
            }
            (lhs, rhs)
        }
    };
    let mismatched: Vec<usize> = (0..lhs.len().max(rhs.len()))
        .filter(|&k| lhs.get(k) != rhs.get(k))
        .collect();
    Ok(LogIdentityReport {
        variant,
        depth,
        holds: mismatched.is_empty(),
        lhs: lhs.iter().map(ToString::to_string).collect(),
        rhs: rhs.iter().map(ToString::to_string).collect(),
        mismatched,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceEntry {
    pub k: usize,
    pub compared_to: usize,
    pub invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub a: String,
    pub omega_matches: bool,
    /// `s ln(s/alpha)` on its own.
    pub leading_invariant: bool,
    /// `s ln(s/alpha) + s g_1(alpha)` taken together.
    pub first_group_invariant: bool,
    pub entries: Vec<InvarianceEntry>,
    /// `g~_2(a) = g_2(a/(1+Aa)) - ln(1+Aa)`.
    pub second_term_shift_holds: bool,
}

impl InvarianceReport {
    pub fn invariant(&self, k: usize) -> Option<bool> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.invariant)
    }
}

/// `f e^{-Ax}`.
pub fn twisted(f: &RatSeries, a: &Rational) -> Result<RatSeries> {
    let lin = RatSeries::variable(f.var(), &int(1), f.prec()).scale(&-a);
    f.try_mul(&lin.exp()?)
}

fn agree_to(a: &RatSeries, b: &RatSeries, order: usize) -> bool {
    let k = a.prec().min(b.prec()).min(order + 1);
    a.truncate(k) == b.truncate(k)
}

/// Builds the twisted family independently and compares `g~_k(alpha)` with
/// `g_k(alpha/(1+A alpha))` for `k <= n_terms` through `alpha^order`.
pub fn invariance_check(fam: &BinomialFamily, a: &Rational, n_terms: usize, order: usize) -> Result<InvarianceReport> {
    let n_terms = n_terms.max(2);
    let twisted_fam = build_family(&twisted(&fam.f, a)?)?;
    let prec = fam.order;
    let x = RatSeries::variable(Var::X, &int(1), prec);
    let mut one_ax = vec![Rational::zero(); prec];
    one_ax[0] = int(1);
    if prec > 1 {
        one_ax[1] = a.clone();
    }
    let inner = x.try_div(&RatSeries::from_rationals(Var::X, one_ax))?;
    let omega_matches = fam.omega.compose(&inner)? == twisted_fam.omega;

    let base = stirling_terms(fam, n_terms)?;
    let tw = stirling_terms(&twisted_fam, n_terms)?;
    let inner_a = inner.clone().with_var(Var::Alpha);
    let mut entries = Vec::with_capacity(n_terms);
    for k in 1..=n_terms {
        let g = base.g(k)?;
        let moved = g.compose(&inner_a.truncate(g.prec()))?;
        let gt = tw.g(k)?;
        let cmp = order.min(moved.prec().min(gt.prec()).saturating_sub(1));
        entries.push(InvarianceEntry {
            k,
            compared_to: cmp,
            invariant: agree_to(gt, &moved, cmp),
        });
    }
    let g2 = base.g(2)?;
    let log1p = RatSeries::from_rationals(Var::Alpha, {
        let mut c = vec![Rational::zero(); g2.prec()];
        c[0] = int(1);
        if c.len() > 1 {
            c[1] = a.clone();
        }
        c
    })
    .log()?;
    // s ln(s/alpha) picks up s ln(1 + A alpha)
    let leading_invariant = log1p.truncate(order + 1).is_zero();
    let g1 = base.g(1)?;
    let g1_moved = g1.compose(&inner_a.truncate(g1.prec()))?;
    let first_group_invariant = agree_to(tw.g(1)?, &g1_moved.try_add(&log1p.truncate(g1_moved.prec()))?, order);
    let moved = g2.compose(&inner_a.truncate(g2.prec()))?;
    let second_term_shift_holds = agree_to(tw.g(2)?, &moved.try_sub(&log1p.truncate(moved.prec()))?, order);
    Ok(InvarianceReport {
        a: rational::to_string(a),
        omega_matches,
        leading_invariant,
        first_group_invariant,
        entries,
        second_term_shift_holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitKind {
    First,
    Second,
    Conclusion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSample {
    pub n: usize,
    pub value: String,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub quantity: String,
    pub kind: LimitKind,
    pub alpha: String,
    pub samples: Vec<LimitSample>,
    pub target: String,
    pub extrapolated: String,
    pub trend_ratios: Vec<f64>,
}

impl LimitReport {
    /// Whether `|error|` never increases over samples with `n >= from`.
    pub fn monotone_from(&self, from: usize) -> bool {
        let errs: Vec<f64> = self.samples.iter().filter(|s| s.n >= from).map(|s| s.error.abs()).collect();
        errs.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn final_error(&self) -> Option<f64> {
        self.samples.last().map(|s| s.error.abs())
    }

    pub fn sample(&self, n: usize) -> Option<&LimitSample> {
        self.samples.iter().find(|s| s.n == n)
    }
}

const LOG_DIGITS: u32 = 60;
const SHOW_DIGITS: u32 = 40;

/// Evaluates a truncated series at `x`, refusing when the tail is not small.
pub fn eval_safely(series: &RatSeries, x: &Rational) -> Result<Rational> {
    let op = "limit_check";
    let n = series.prec();
    if n < 4 {
        return Err(Error::truncation(op, 4, n));
    }
    let mut tail = Rational::zero();
    for k in n - 3..n {
        let t = &series.coeffs()[k] * num_traits::pow(x.clone(), k);
        tail = tail.max(t.abs());
    }
    if tail > Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 15)) {
        return Err(Error::precondition(op, format!("point {} outside safe range of the truncation", rational::to_string(x))));
    }
    Ok(series.eval_at(x))
}

fn ln(x: &Rational) -> Result<Rational> {
    numeric::ln(x, LOG_DIGITS)
}

/// Exact samples at `n = 4, 8, .., n_max` and the closed-form target.
pub fn limit_check(fam: &BinomialFamily, kind: LimitKind, alpha: &Rational, n_max: usize) -> Result<LimitReport> {
    let ns: Vec<usize> = (1..=n_max / 4).map(|i| 4 * i).collect();
    let ps = umbral::p_seq(fam, n_max + 1)?;
    let inv_alpha = alpha.recip();
    let (quantity, target) = match kind {
        LimitKind::Conclusion => ("p_n'(n a) / p_n(n a)", eval_safely(&fam.omega, &inv_alpha)?),
        LimitKind::First => {
            let fp = eval_safely(&fam.fprime_of_omega()?, &inv_alpha)?;
            ("p_{n+1}(n a) / (n p_n(n a))", alpha / fp)
        }
        LimitKind::Second => {
            let w1 = eval_safely(&fam.omega_prime(), &inv_alpha)?;
            ("ln p_n(n a) - n ln(n a) + n a int_0^{1/a} ln f'(omega)", ln(&w1)? / int(2))
        }
    };
    let integral = match kind {
        LimitKind::Second => Some(eval_safely(&fam.fprime_of_omega()?.log()?.integrate(), &inv_alpha)?),
        _ => None,
    };
    let mut samples = Vec::with_capacity(ns.len());
    let mut values = Vec::with_capacity(ns.len());
    for &n in &ns {
        let nr = int(n as i64);
        let point = &nr * alpha;
        let pn = ps.polys[n].eval(&point);
        if pn.is_zero() {
            return Err(Error::precondition("limit_check", format!("p_{n} vanishes at the sample point")));
        }
        let value = match kind {
            LimitKind::Conclusion => ps.polys[n].derive().eval(&point) / &pn,
            LimitKind::First => ps.polys[n + 1].eval(&point) / (&pn * &nr),
            LimitKind::Second => {
                if !pn.is_positive() {
                    return Err(Error::precondition("limit_check", "p_n not positive at the sample point"));
                }
                let integral = integral.as_ref().expect("set for the second formula");
                ln(&pn)? - &nr * ln(&point)? + &nr * alpha * integral
            }
        };
        samples.push(LimitSample {
            n,
            value: numeric::to_decimal(&value, SHOW_DIGITS),
            error: rational::to_f64(&(&value - &target)),
        });
        values.push(value);
    }
    // Richardson step assuming error ~ C/n
    let extrapolated = match (ns.len(), values.len()) {
        (k, _) if k >= 2 => {
            let (n1, n2) = (int(ns[k - 2] as i64), int(ns[k - 1] as i64));
            (&n2 * &values[k - 1] - &n1 * &values[k - 2]) / (n2 - n1)
        }
        _ => values.last().cloned().unwrap_or_else(Rational::zero),
    };
    let trend_ratios = samples
        .windows(2)
        .map(|w| if w[1].error == 0.0 { f64::INFINITY } else { w[0].error / w[1].error })
        .collect();
    Ok(LimitReport {
        quantity: quantity.to_string(),
        kind,
        alpha: rational::to_string(alpha),
        samples,
        target: numeric::to_decimal(&target, SHOW_DIGITS),
        extrapolated: numeric::to_decimal(&extrapolated, SHOW_DIGITS),
        trend_ratios,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationErrorReport {
    pub alpha: String,
    pub kept_terms: usize,
    pub ns: Vec<usize>,
    pub errors: Vec<f64>,
    pub ratios: Vec<f64>,
}

/// `|ln p_n(n/alpha) - (n ln(n/alpha) + sum_{k <= kept} g_k(alpha) n^{2-k})|`.
pub fn stirling_truncation_errors(
    fam: &BinomialFamily,
    exp: &StirlingExpansion,
    alpha: &Rational,
    kept_terms: usize,
    ns: &[usize],
) -> Result<TruncationErrorReport> {
    let n_top = ns.iter().copied().max().unwrap_or(0);
    let ps = umbral::p_seq(fam, n_top)?;
    let g_vals = (1..=kept_terms)
        .map(|k| eval_safely(exp.g(k)?, alpha))
        .collect::<Result<Vec<_>>>()?;
    let mut errors = Vec::with_capacity(ns.len());
    for &n in ns {
        let nr = int(n as i64);
        let point = &nr / alpha;
        let exact = ln(&ps.polys[n].eval(&point))?;
        let mut approx = &exp.log_coeff * &nr * ln(&point)?;
        for (i, g) in g_vals.iter().enumerate() {
            let k = i as i64 + 1;
            let weight = if 2 - k >= 0 {
                num_traits::pow(nr.clone(), (2 - k) as usize)
            } else {
                num_traits::pow(nr.recip(), (k - 2) as usize)
            };
            approx += g * weight;
        }
        errors.push(rational::to_f64(&(exact - approx)).abs());
    }
    let ratios = errors.windows(2).map(|w| w[0] / w[1]).collect();
    Ok(TruncationErrorReport {
        alpha: rational::to_string(alpha),
        kept_terms,
        ns: ns.to_vec(),
        errors,
        ratios,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoOrdersReport {
    pub leading_holds: bool,
    pub q1_closed_form_holds: bool,
    pub second_holds: bool,
    pub compared_to: usize,
}

/// Leading two `alpha`-orders of `p_{alpha s + H}/p_{alpha s}` from
/// `s^{-1} T_1 s` and `q_1^{omega(s)}`, against their closed forms.
pub fn ratio_two_orders(fam: &BinomialFamily, order: usize) -> Result<TwoOrdersReport> {
    let h = ParamPoly::symbol(Symbol::H);
    let omega_s = fam.omega.clone().with_var(Var::S).truncate(order + 3);
    let w = fam.fprime_of_omega()?.with_var(Var::S).truncate(order + 3).to_param().pow(&-&h)?;
    let leading = w.clone();
    let leading_holds = leading.coeff(0)? == &ParamPoly::one();

    let table = umbral::q_coeffs(fam, 1, order + 2)?;
    let q1 = table
        .at_series(1, &omega_s.to_param())?
        .substitute(Symbol::S, &(&h + &ParamPoly::one()));
    let w1 = fam.omega_prime().with_var(Var::S).truncate(order + 3);
    let w2 = w1.derive();
    let one = RatSeries::one(Var::S, &int(1), w1.prec());
    let one_minus = one.try_sub(&w1)?;
    // (1/2)(1+H)(1 - w')/(s w')
    let q1_closed = one_minus
        .div_var_pow(1)?
        .try_div(&w1)?
        .to_param()
        .scale_by(&(&h + &ParamPoly::one()).scale(&Rational::new(1.into(), 2.into())));
    let q1_closed_form_holds = {
        let k = q1.prec().min(q1_closed.prec());
        q1.truncate(k) == q1_closed.truncate(k)
    };

    let t1 = build_tn(fam, 1, Route::Nu)?;
    let s_w = w.mul_var();
    let t1_part = t1.apply_param(&s_w)?.div_var_pow(1)?;
    let machine = q1.try_mul(&w)?.scale_by(&h).try_sub(&t1_part)?;
    let h2_half = (&h * &h).scale(&Rational::new(1.into(), 2.into()));
    let closed = one_minus
        .div_var_pow(1)?
        .to_param()
        .scale_by(&h2_half)
        .try_add(&w2.try_div(&w1)?.to_param().scale_by(&h.scale(&Rational::new(1.into(), 2.into()))))?
        .try_mul(&w)?;
    let k = machine.prec().min(closed.prec()).min(order + 1);
    Ok(TwoOrdersReport {
        leading_holds,
        q1_closed_form_holds,
        second_holds: machine.truncate(k) == closed.truncate(k),
        compared_to: k,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuExampleReport {
    pub n: usize,
    pub s1_expected: Vec<String>,
    pub s1_computed: Vec<String>,
    pub s0_expected: Vec<String>,
    pub s0_computed: Vec<String>,
    pub holds: bool,
}

/// The `s^1` and `s^0` groups for `f` with `f/f' = x e^{-x}`.
pub fn nu_example_check(n: usize) -> Result<NuExampleReport> {
    let prec = n + 6;
    // x e^{-x}
    let mut c = vec![Rational::zero(); prec];
    for k in 1..prec {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        c[k] = int(sign) / Rational::from_integer(rational::factorial(k - 1));
    }
    let g = RatSeries::from_rationals(Var::X, c);
    let f = umbral::tau_inverse(&g)?;
    let fam = build_family(&f)?;
    let exp = stirling_terms(&fam, 2)?;
    let g1 = exp.g(1)?;
    let g2 = exp.g(2)?;
    let fact = |k: usize| Rational::from_integer(rational::factorial(k));
    let pw = |b: usize, e: usize| Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(b), e));
    let mut s1_expected = Vec::new();
    let mut s1_computed = Vec::new();
    let mut s0_expected = Vec::new();
    let mut s0_computed = Vec::new();
    let mut holds = true;
    for m in 1..=n {
        let e1 = -(pw(m + 1, m - 1) / fact(m)) / int(m as i64);
        let inner: Rational = (0..=m).map(|k| pw(m, k) / fact(k)).sum();
        let e0 = inner / int(2 * m as i64);
        let c1 = g1.coeff(m)?.clone();
        let c0 = g2.coeff(m)?.clone();
        holds &= c1 == e1 && c0 == e0;
        s1_expected.push(rational::to_string(&e1));
        s1_computed.push(rational::to_string(&c1));
        s0_expected.push(rational::to_string(&e0));
        s0_computed.push(rational::to_string(&c0));
    }
    Ok(NuExampleReport {
        n,
        s1_expected,
        s1_computed,
        s0_expected,
        s0_computed,
        holds,
    })
}
