//! Sheffer sequences `tau_s = l(D) A_f^s 1`, their number operator, the
//! resolvent identity, `T_n^l` and the Bernoulli logarithm experiment.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::asymptotic::AsymptoticSeries;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ring::Ring;
use crate::operator::diffop::{normal_order, DiffOperator, Substitution};
use crate::operator::graded::{graded_resolvent, ElemOp, EvalPoint, GradedOperator};
use crate::operator::nc;
use crate::param_poly::{ParamPoly, Symbol};
use crate::poly::Poly;
use crate::rational::{self, int, Rational};
use crate::series::{ParamSeries, PowerSeries, RatSeries, Var};
use crate::stirling::param_to_laurent;
use crate::umbral::{self, BinomialFamily};

#[derive(Debug, Clone, PartialEq)]
pub struct ShefferFamily {
    pub fam: BinomialFamily,
    pub ell: RatSeries,
    pub tau_polys: Vec<Poly>,
    pub tau_symbolic: AsymptoticSeries,
}

/// `x/(e^x - 1)`.
pub fn bernoulli_ell(prec: usize) -> Result<RatSeries> {
    crate::series::elementary::expm1(Var::X, prec + 1).div_var_pow(1)?.inverse()
}

/// `tau_n = l(D) p_n` for `n <= n`, plus the continuation in `s`.
pub fn tau_seq(fam: &BinomialFamily, ell: &RatSeries, n: usize) -> Result<ShefferFamily> {
    let op = "tau_seq";
    if ell.get(0) != Some(&int(1)) {
        return Err(Error::precondition(op, "l must have constant term 1"));
    }
    let ps = umbral::p_seq(fam, n)?;
    let ell_d = ell.clone().with_var(Var::X);
    let tau_polys = ps
        .polys
        .iter()
        .map(|p| p.apply_d_series(&ell_d))
        .collect::<Result<Vec<_>>>()?;

    // l(d/dalpha) alpha^{s-k} = sum_j l_j (s-k)_j alpha^{s-k-j}
    let ps_sym = umbral::p_symbolic(fam, n)?.param_coeffs()?;
    let s = ParamPoly::symbol(Symbol::S);
    ell.require_prec(op, n + 1)?;
    let coeffs = (0..=n)
        .map(|m| {
            (0..=m).fold(ParamPoly::zero(), |acc, k| {
                let j = m - k;
                let lj = &ell.coeffs()[j];
                let shifted = &s - &ParamPoly::from_int(k as i64);
                &acc + &(&ps_sym[k] * &shifted.falling(j)).scale(lj)
            })
        })
        .collect();
    Ok(ShefferFamily {
        fam: fam.clone(),
        ell: ell_d,
        tau_polys,
        tau_symbolic: AsymptoticSeries::new(s, coeffs),
    })
}

/// `sum_n tau_n x^n/n! = l(phi(x)) e^{alpha phi(x)}`, compared per power of
/// `alpha` with `l(phi) phi^k / k!`.
pub fn generating_function_check(sf: &ShefferFamily, order: usize) -> Result<bool> {
    let n = sf.tau_polys.len().min(order + 1);
    let phi = sf.fam.phi.truncate(n);
    let base = sf.ell.compose(&phi)?;
    let mut power = base.clone();
    for k in 0..n {
        if k > 0 {
            power = power.try_mul(&phi)?.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        for (m, tau) in sf.tau_polys.iter().enumerate().take(n) {
            let from_tau = tau.coeff(k) / Rational::from_integer(rational::factorial(m));
            if from_tau != power.coeffs()[m] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the continuation specializes to `tau_n` at `s = n`.
pub fn symbolic_specializes(sf: &ShefferFamily) -> Result<bool> {
    let coeffs = sf.tau_symbolic.param_coeffs()?;
    for (n, tau) in sf.tau_polys.iter().enumerate() {
        for (m, c) in coeffs.iter().enumerate() {
            let v = c.eval_all(&[(Symbol::S, int(n as i64))])?;
            let expect = if m <= n { tau.coeff(n - m) } else { Rational::zero() };
            if v != expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub n_max: usize,
    pub failures: Vec<usize>,
    pub holds: bool,
}

/// `theta = l(D) alpha (f/f')(D) l(D)^{-1}` on each `tau_n`.
pub fn theta_check(sf: &ShefferFamily, n_max: usize) -> Result<ThetaReport> {
    if n_max >= sf.tau_polys.len() {
        return Err(Error::truncation("theta_check", n_max + 1, sf.tau_polys.len()));
    }
    let ell_inv = sf.ell.inverse()?;
    let tau_f = sf.fam.tau_f.clone();
    let mut failures = Vec::new();
    for (n, tau) in sf.tau_polys.iter().enumerate().take(n_max + 1) {
        let v = tau
            .apply_d_series(&ell_inv)?
            .apply_d_series(&tau_f)?
            .shift(1)
            .apply_d_series(&sf.ell)?;
        if v != tau.scale(&int(n as i64)) {
            failures.push(n);
        }
    }
    Ok(ThetaReport {
        n_max,
        holds: failures.is_empty(),
        failures,
    })
}

/// `alpha^power q(D)` inside a finite operator `T(alpha, D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TTerm {
    pub alpha_power: usize,
    pub d_series: RatSeries,
}

impl TTerm {
    pub fn new(alpha_power: usize, d_series: RatSeries) -> Self {
        TTerm { alpha_power, d_series }
    }

    pub fn identity(prec: usize) -> Self {
        TTerm::new(0, RatSeries::one(Var::X, &int(1), prec))
    }

    pub fn d(prec: usize) -> Self {
        TTerm::new(0, RatSeries::variable(Var::X, &int(1), prec))
    }
}

pub(crate) fn apply_t(t: &[TTerm], p: &Poly) -> Result<Poly> {
    t.iter().try_fold(Poly::zero(), |acc, term| {
        Ok(acc.add(&p.apply_d_series(&term.d_series)?.shift(term.alpha_power)))
    })
}

/// Targets `T(alpha, omega(x)) w(x)` by grade below the top power of `alpha`.
pub(crate) fn t_target(t: &[TTerm], omega: &RatSeries, weight: &ParamSeries) -> Result<(usize, Vec<ParamSeries>)> {
    let top = t.iter().map(|x| x.alpha_power).max().unwrap_or(0);
    let mut target = vec![ParamSeries::zero(Var::X, &ParamPoly::one(), weight.prec()); top + 1];
    for term in t {
        let q = term.d_series.clone().with_var(Var::X).compose(omega)?.to_param();
        let g = top - term.alpha_power;
        target[g] = target[g].try_add(&q.try_mul(weight)?)?;
    }
    Ok((top, target))
}

/// Exponent-indexed comparison of two descending expansions.
pub(crate) fn compare_descending(
    lhs: (i64, &[Rational]),
    rhs: (i64, &[Rational]),
    depth: usize,
) -> (Vec<String>, Vec<String>, bool) {
    let at = |(top, v): (i64, &[Rational]), e: i64| -> Rational {
        if e > top {
            return Rational::zero();
        }
        v.get((top - e) as usize).cloned().unwrap_or_else(Rational::zero)
    };
    let top = lhs.0.max(rhs.0);
    let low = rhs.0 - depth as i64;
    let mut l = Vec::new();
    let mut r = Vec::new();
    let mut holds = true;
    for e in (low..=top).rev() {
        let (a, b) = (at(lhs, e), at(rhs, e));
        holds &= a == b;
        l.push(rational::to_string(&a));
        r.push(rational::to_string(&b));
    }
    (l, r, holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolventReport {
    pub s: i64,
    pub depth: usize,
    pub top_power: i64,
    /// Coefficients of `alpha^{top}, alpha^{top-1}, ..`.
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub holds: bool,
}

/// `(alpha/tau_s) T tau_{s-1}` by polynomial division against the graded
/// inverse of `1 + alpha^{-1} d/domega - s alpha^{-1} l(omega) L l(omega)^{-1}`.
pub fn sheffer_resolvent_check(sf: &ShefferFamily, t: &[TTerm], s: usize, depth: usize) -> Result<ResolventReport> {
    let op = "sheffer_resolvent_check";
    if s == 0 {
        return Err(Error::precondition(op, "s must be at least 1"));
    }
    if s >= sf.tau_polys.len() {
        return Err(Error::truncation(op, s + 1, sf.tau_polys.len()));
    }
    let num = apply_t(t, &sf.tau_polys[s - 1])?.shift(1);
    let (lhs_top, lhs) = num.laurent_div(&sf.tau_polys[s], depth + 1)?;

    let fam = &sf.fam;
    let ell_omega = sf.ell.compose(&fam.omega)?;
    let ell_omega_inv = ell_omega.inverse()?;
    let weight = ell_omega.try_mul(&fam.fprime_of_omega()?)?.to_param();
    let (top, target) = t_target(t, &fam.omega, &weight)?;
    let x = GradedOperator::new(fam)?
        .with_part(1, vec![ElemOp::Scale(ParamPoly::from_int(-1)), ElemOp::DOmega])
        .with_part(
            1,
            vec![
                ElemOp::Scale(ParamPoly::from_int(s as i64)),
                ElemOp::Mul(ell_omega.to_param()),
                ElemOp::L,
                ElemOp::Mul(ell_omega_inv.to_param()),
            ],
        );
    let rhs = graded_resolvent(&x, &target, depth, &EvalPoint::Zero)?
        .iter()
        .map(|c| c.as_constant().ok_or_else(|| Error::precondition(op, "non-constant coefficient")))
        .collect::<Result<Vec<_>>>()?;
    let (l, r, holds) = compare_descending((lhs_top, &lhs), (top as i64, &rhs), depth);
    Ok(ResolventReport {
        s: s as i64,
        depth,
        top_power: top as i64,
        lhs: l,
        rhs: r,
        holds,
    })
}

/// `T_n^l(alpha, d/dalpha)`: the `E`-leading part of the `n`-th bar
/// transform with `sigma = alpha/omega'(alpha)` and `lambda = l(omega(alpha))`.
pub fn build_tn_ell(sf: &ShefferFamily, n: usize) -> Result<DiffOperator> {
    let words = nc::nu_bar_power(n)?.alpha(0)?;
    let sigma = sf.fam.sigma(Var::Alpha)?;
    let lambda = sf.ell.compose(&sf.fam.omega)?.with_var(Var::Alpha);
    let sub = Substitution {
        sigma,
        lambda_inv: Some(lambda.inverse()?),
        lambda: Some(lambda),
    };
    normal_order(&words, &sub, Var::Alpha)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogDerivReport {
    pub compared: usize,
    pub mismatches: Vec<String>,
}

/// `(d/dx) ln tau_s(x)` at `x = s/alpha` against
/// `sum_n (-alpha/s)^n (T_n^l omega)(alpha)`, coefficientwise in `alpha` with
/// Laurent coefficients in `s`.
pub fn tn_ell_log_check(sf: &ShefferFamily, n_terms: usize) -> Result<LogDerivReport> {
    let coeffs = sf.tau_symbolic.param_coeffs()?;
    if coeffs.len() < n_terms {
        return Err(Error::truncation("tn_ell_log_check", n_terms, coeffs.len()));
    }
    let s = ParamPoly::symbol(Symbol::S);
    let mut num = Vec::with_capacity(n_terms);
    let mut den = Vec::with_capacity(n_terms);
    for (m, c) in coeffs.iter().enumerate().take(n_terms) {
        let d = param_to_laurent(c)?.shift(-(m as i64));
        let shifted = &s - &ParamPoly::from_int(m as i64);
        num.push(param_to_laurent(&(c * &shifted))?.shift(-(m as i64) - 1));
        den.push(d);
    }
    let ratio = PowerSeries::new(Var::Alpha, num, Laurent::one())
        .try_div(&PowerSeries::new(Var::Alpha, den, Laurent::one()))?
        .mul_var();

    let omega = sf.fam.omega.clone().with_var(Var::Alpha);
    let mut expected = vec![Laurent::zero(); n_terms];
    for n in 0..n_terms {
        let applied = build_tn_ell(sf, n)?.apply(&omega)?;
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        for k in n..n_terms {
            let Some(c) = applied.get(k - n) else {
                return Err(Error::truncation("tn_ell_log_check", k - n + 1, applied.prec()));
            };
            let term = Laurent::monomial(-(n as i64), c * &sign);
            expected[k] = expected[k].plus(&term);
        }
    }
    let mut report = LogDerivReport { compared: 0, mismatches: Vec::new() };
    for (k, e) in expected.iter().enumerate() {
        let Some(got) = ratio.get(k) else { break };
        report.compared += 1;
        if got != e {
            report.mismatches.push(format!("alpha^{k}: direct {got:?} operator {e:?}"));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDiff {
    pub name: String,
    pub lhs: Vec<String>,
    pub diff: Vec<String>,
    pub matches: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliReport {
    pub depth: usize,
    /// `alpha^{-k}` coefficients, `k = 0..=depth`.
    pub rhs: Vec<String>,
    pub candidates: Vec<CandidateDiff>,
    pub notes: Vec<String>,
}

fn log_coeffs(series: &AsymptoticSeries, depth: usize) -> Result<Vec<ParamPoly>> {
    let body = AsymptoticSeries::new(ParamPoly::zero(), series.param_coeffs()?);
    let log = body.log()?;
    (0..=depth)
        .map(|k| {
            let c = log
                .coeff(k)?
                .as_param()
                .ok_or_else(|| Error::precondition("bernoulli_log_experiment", "ln alpha in body log"))?;
            c.div_by_symbol(Symbol::S)
        })
        .collect()
}

/// Runs the displayed operator logarithm against two readings of `B_s`.
pub fn bernoulli_log_experiment(depth: usize) -> Result<BernoulliReport> {
    let n = depth.max(1);
    let prec = 2 * n + 6;
    let b = bernoulli_ell(prec)?;
    let b_inv = b.inverse()?;
    let s = ParamPoly::symbol(Symbol::S);

    // ln(1 - a^{-1} Y) b |_0, Y = s b L b^{-1} - d/dx
    let exp1 = umbral::build_family(&crate::series::elementary::expm1(Var::X, prec))?;
    let y = GradedOperator::new(&exp1)?
        .with_part(1, vec![ElemOp::Scale(ParamPoly::from_int(-1)), ElemOp::Dx])
        .with_part(
            1,
            vec![ElemOp::Scale(s.clone()), ElemOp::Mul(b.to_param()), ElemOp::L, ElemOp::Mul(b_inv.to_param())],
        );
    let mut g = b.to_param();
    let mut rhs = vec![ParamPoly::zero()];
    for k in 1..=depth {
        g = y.apply_sum(&g)?;
        let c = g.coeff(0).map_err(|_| Error::truncation("bernoulli_log_experiment", k, prec))?;
        rhs.push(c.scale(&Rational::new((-1).into(), (k as i64).into())));
    }

    let cand1 = tau_seq(&exp1, &b, n)?.tau_symbolic;
    // alpha^s sum_k binom(s, k) B_k alpha^{-k}
    let bern: Vec<Rational> = (0..=n)
        .map(|k| &b.coeffs()[k] * Rational::from_integer(rational::factorial(k)))
        .collect();
    let cand2 = AsymptoticSeries::new(
        s.clone(),
        bern.iter().enumerate().map(|(k, bk)| s.binomial(k).scale(bk)).collect(),
    );
    let mut candidates = Vec::new();
    for (name, series) in [
        ("tau(f = e^x - 1, l = x/(e^x - 1))", &cand1),
        ("classical Bernoulli continuation", &cand2),
    ] {
        let lhs = log_coeffs(series, depth)?;
        let diff: Vec<ParamPoly> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        candidates.push(CandidateDiff {
            name: name.to_string(),
            matches: diff.iter().map(ParamPoly::is_zero).collect(),
            lhs: lhs.iter().map(ToString::to_string).collect(),
            diff: diff.iter().map(ToString::to_string).collect(),
        });
    }
    Ok(BernoulliReport {
        depth,
        rhs: rhs.iter().map(ToString::to_string).collect(),
        candidates,
        notes: vec![
            "operators taken literally: d/dx and x/(e^x-1), not d/domega and l(omega)".to_string(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::diffop::build_tn;
    use crate::operator::nc::Route;
    use crate::rational::rat;
    use crate::series::elementary::{expm1, geometric};
    use crate::umbral::build_family;

    fn bern_family(n: usize) -> ShefferFamily {
        let fam = build_family(&expm1(Var::X, 2 * n + 8)).unwrap();
        tau_seq(&fam, &bernoulli_ell(2 * n + 8).unwrap(), n).unwrap()
    }

    #[test]
    fn low_tau_polynomials() {
        let sf = bern_family(8);
        assert_eq!(sf.tau_polys[1], Poly::new(vec![rat(-1, 2), int(1)]));
        assert_eq!(sf.tau_polys[2], Poly::new(vec![rat(2, 3), int(-2), int(1)]));
        assert!(generating_function_check(&sf, 8).unwrap());
        assert!(symbolic_specializes(&sf).unwrap());
        let plain = tau_seq(&sf.fam, &RatSeries::one(Var::X, &int(1), 12), 6).unwrap();
        let ps = umbral::p_seq(&sf.fam, 6).unwrap();
        assert_eq!(plain.tau_polys, ps.polys);
    }

    #[test]
    fn number_operator() {
        let sf = bern_family(8);
        assert!(theta_check(&sf, 8).unwrap().holds);
    }

    #[test]
    fn resolvent_identity() {
        let sf = bern_family(8);
        for s in 1..=3 {
            for t in [vec![TTerm::identity(16)], vec![TTerm::d(16)], vec![TTerm::new(1, RatSeries::one(Var::X, &int(1), 16))]] {
                let r = sheffer_resolvent_check(&sf, &t, s, 5).unwrap();
                assert!(r.holds, "s={s}: {:?} vs {:?}", r.lhs, r.rhs);
            }
        }
    }

    #[test]
    fn bar_operators() {
        let sf = bern_family(8);
        assert_eq!(build_tn_ell(&sf, 0).unwrap().order(), 0);
        let plain = tau_seq(&sf.fam, &RatSeries::one(Var::X, &int(1), 20), 6).unwrap();
        for n in 0..=2 {
            let a = build_tn_ell(&plain, n).unwrap();
            let b = build_tn(&sf.fam, n, Route::Nu).unwrap();
            assert_eq!(a.order(), b.order());
            for j in 0..=a.order() {
                let (x, y) = (a.coeff(j), b.coeff(j));
                let k = x.prec().min(y.prec());
                assert_eq!(x.truncate(k).coeffs(), y.truncate(k).coeffs(), "n={n} j={j}");
            }
        }
        let r = tn_ell_log_check(&sf, 6).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        let geo = build_family(&geometric(Var::X, 16).mul_var().truncate(16)).unwrap();
        let sg = tau_seq(&geo, &bernoulli_ell(16).unwrap(), 6).unwrap();
        assert!(tn_ell_log_check(&sg, 5).unwrap().mismatches.is_empty());
    }

    #[test]
    fn bernoulli_report() {
        let r = bernoulli_log_experiment(0).unwrap();
        assert!(r.candidates.iter().all(|c| c.matches.iter().all(|&m| m)));
        let r = bernoulli_log_experiment(3).unwrap();
        assert_eq!(r.rhs[1], "-1/2");
        assert_eq!(r.candidates.len(), 2);
        assert_eq!(r.candidates[0].lhs[1], "-1/2*s");
    }
}
