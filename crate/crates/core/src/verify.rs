//! Verification suites, one per area, each a list of named checks.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::conjugation::{self, Pipeline};
use crate::error::{Error, Result};
use crate::operator::diffop::build_tn;
use crate::operator::graded::{ratio_resolvent, ratio_resolvent_nested};
use crate::operator::nc::{self, Route};
use crate::operator::identities::{divided_difference_check, tn_integral_oracle};
use crate::param_poly::{ParamPoly, Symbol};
use crate::presets::{FamilySource, FamilySpec};
use crate::rational::{self, int, rat};
use crate::report::{diff_lists, Check, Diff, Report, SuiteReport};
use crate::series::{pow_param, RatSeries, Var};
use crate::sheffer::{self, TTerm};
use crate::stirling::{self, LimitKind, LogVariant};
use crate::umbral::{self, BinomialFamily, RatioMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Series,
    Umbral,
    Operator,
    Stirling,
    Sheffer,
    Conjugation,
}

pub const ALL_SUITES: [Suite; 6] = [
    Suite::Series,
    Suite::Umbral,
    Suite::Operator,
    Suite::Stirling,
    Suite::Sheffer,
    Suite::Conjugation,
];

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Series => "series",
            Suite::Umbral => "umbral",
            Suite::Operator => "operator",
            Suite::Stirling => "stirling",
            Suite::Sheffer => "sheffer",
            Suite::Conjugation => "conjugation",
        };
        f.write_str(name)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_SUITES
            .iter()
            .copied()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown suite '{s}'"),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Series order for the order-indexed checks.
    pub order: usize,
    /// Depth in `alpha^{-1}` for the graded checks.
    pub depth: usize,
    pub families: Vec<FamilySource>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 12,
            depth: 6,
            families: vec![FamilySource::Id, FamilySource::Exp1, FamilySource::Geom, FamilySource::Nu],
        }
    }
}

impl VerifyConfig {
    /// Families built to at least `need` terms.
    fn families(&self, need: usize) -> Result<Vec<(String, BinomialFamily)>> {
        self.families
            .iter()
            .map(|src| Ok((src.to_string(), FamilySpec::new(src.clone(), self.order.max(need)).build()?)))
            .collect()
    }
}

fn run_check(name: impl Into<String>, f: impl FnOnce() -> Result<Check>) -> Check {
    let name = name.into();
    match f() {
        Ok(mut c) => {
            c.name = name;
            c
        }
        Err(e) => Check::error(name, e),
    }
}

fn ok(b: bool) -> Result<Check> {
    Ok(Check::from_bool("", b))
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Series => series_suite(cfg),
        Suite::Umbral => umbral_suite(cfg),
        Suite::Operator => operator_suite(cfg),
        Suite::Stirling => stirling_suite(cfg),
        Suite::Sheffer => sheffer_suite(cfg),
        Suite::Conjugation => conjugation_suite(cfg),
    }
    .unwrap_or_else(|e| vec![Check::error("setup", e)]);
    SuiteReport {
        suite: suite.to_string(),
        checks,
        elapsed_us: start.elapsed().as_micros() as u64,
    }
}

/// Runs the suites on separate threads; the report keeps the requested order.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Report {
    let suites = std::thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|&s| scope.spawn(move || run_suite(s, cfg))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    Report { suites }
}

/// Fixed small-height test series `sum c_k x^k`.
fn sample_series(seed: i64, prec: usize, zero_constant: bool) -> RatSeries {
    let coeffs = (0..prec)
        .map(|k| {
            if k == 0 && zero_constant {
                return int(0);
            }
            let v = (seed * 31 + 17 * k as i64 + (k * k) as i64 * seed) % 11 - 5;
            rat(v, 1 + (k as i64 + seed) % 4)
        })
        .collect();
    RatSeries::from_rationals(Var::X, coeffs)
}

fn series_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let n = cfg.order.max(2);
    let a = sample_series(1, n, false);
    let b = sample_series(2, n, false);
    let c = sample_series(3, n, false);
    let mut out = vec![
        run_check("ring: associativity", || ok((&(&a * &b) * &c) == (&a * &(&b * &c)))),
        run_check("ring: distributivity", || ok(&a * &(&b + &c) == &(&a * &b) + &(&a * &c))),
        run_check("derive of integrate is identity", || {
            let g = sample_series(4, n, true);
            ok(g.integrate().derive().truncate(n) == g)
        }),
    ];
    for (name, fam) in cfg.families(n)? {
        out.push(run_check(format!("revert is two-sided inverse [{name}]"), || {
            let x = RatSeries::variable(Var::X, &int(1), fam.order);
            ok(fam.f.compose(&fam.phi)? == x && fam.phi.compose(&fam.f)? == x)
        }));
        out.push(run_check(format!("pow_param at e <= 5 [{name}]"), || {
            let u = fam.f.div_var_pow(1)?;
            let sym = pow_param(&u, Symbol::S)?;
            let good = (0..=5).all(|e| sym.eval_symbol(Symbol::S, &int(e)).to_rational().ok() == Some(u.pow_int(e as u32)));
            ok(good)
        }));
        out.push(run_check(format!("exp of log [{name}]"), || {
            let u = fam.fprime.clone();
            ok(u.log()?.exp()? == u)
        }));
    }
    Ok(out)
}

fn umbral_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let depth = cfg.depth;
    for (name, fam) in cfg.families(depth + 10)? {
        let fam = &fam;
        out.push(run_check(format!("generating function to order {} [{name}]", fam.order - 1), || {
            ok(umbral::generating_identity_holds(fam, fam.order - 1)?)
        }));
        out.push(run_check(format!("p_symbolic specializes at s = 0..8 [{name}]"), || {
            let ps = umbral::p_seq(fam, 8)?;
            let sym = umbral::p_symbolic(fam, 8)?.param_coeffs()?;
            let mut diffs = Vec::new();
            for s in 0..=8usize {
                for k in 0..=s {
                    let got = sym[k].eval_all(&[(Symbol::S, int(s as i64))])?;
                    let want = ps.polys[s].coeff(s - k);
                    if got != want {
                        diffs.push(Diff {
                            at: format!("p_{s}[alpha^{}]", s - k),
                            expected: rational::to_string(&want),
                            actual: rational::to_string(&got),
                        });
                    }
                }
            }
            Ok(Check::pass("").with_diffs(diffs))
        }));
        out.push(run_check(format!("deg_s P_n^H <= n, n <= {depth} [{name}]"), || {
            let p = umbral::ratio_p(fam, RatioMode::Symbolic, depth)?;
            ok(p.iter().enumerate().all(|(n, c)| c.degree_in(Symbol::S).is_none_or(|d| d as usize <= n)))
        }));
        out.push(run_check(format!("tau_inverse recovers f [{name}]"), || {
            ok(umbral::tau_inverse(&fam.tau_f)? == fam.f)
        }));
    }
    Ok(out)
}

fn operator_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.push(run_check("nu and matrix routes agree, n <= 5", || {
        ok((0..=5).all(|n| matches!((nc::tn_words(n, Route::Nu), nc::tn_words(n, Route::Matrix)), (Ok(a), Ok(b)) if a == b)))
    }));
    out.push(run_check("nu keeps exactly one E per word, n <= 5", || {
        let mut p = nc::NCPoly::e();
        for _ in 0..5 {
            p = nc::nu_step(&p)?;
            p.check_shape()?;
        }
        ok(true)
    }));
    out.push(run_check("nu-bar with lambda erased equals nu, n <= 4", || {
        ok((0..=4).all(|n| match (nc::nu_bar_power(n), nc::nu_power(n)) {
            (Ok(a), Ok(b)) => a.erase_lambda() == b,
            _ => false,
        }))
    }));
    out.push(run_check("divided difference identity for n <= 4, m <= 6", || {
        let mut bad = Vec::new();
        for n in 0..=4 {
            for m in 0..=6 {
                for r in divided_difference_check(n, m)? {
                    if !r.holds {
                        bad.push(Diff {
                            at: format!("n={n} m={m} p^{}", r.p_power),
                            expected: r.rhs,
                            actual: r.lhs,
                        });
                    }
                }
            }
        }
        Ok(Check::pass("").with_diffs(bad))
    }));
    let depth = cfg.depth;
    for (name, fam) in cfg.families(depth + 12)? {
        let fam = &fam;
        out.push(run_check(format!("T_0 = 1 and T_1 = (1/2) sigma d^2 [{name}]"), || {
            let t0 = build_tn(fam, 0, Route::Nu)?;
            let t1 = build_tn(fam, 1, Route::Nu)?;
            let half_sigma = fam.sigma(Var::S)?.scale(&rat(1, 2));
            let k = t1.coeff(2).prec().min(half_sigma.prec());
            ok(t0.order() == 0
                && t1.order() == 2
                && t1.coeff(0).is_zero()
                && t1.coeff(1).is_zero()
                && t1.coeff(2).truncate(k) == half_sigma.truncate(k))
        }));
        out.push(run_check(format!("iterated integral oracle, n <= 2, s^m, m <= 6 [{name}]"), || {
            let mut good = true;
            for n in 1..=2 {
                let t = build_tn(fam, n, Route::Nu)?;
                for m in 0..=6 {
                    let mut c = vec![0i64; 12];
                    c[m] = 1;
                    let g = RatSeries::from_ints(Var::S, &c);
                    let a = t.apply(&g)?;
                    let b = tn_integral_oracle(fam, n, &g)?;
                    let k = a.prec().min(b.prec());
                    good &= a.truncate(k) == b.truncate(k);
                }
            }
            ok(good)
        }));
        out.push(run_check(format!("graded resolvent equals division, (s,H) in 0..3, depth {depth} [{name}]"), || {
            let sym = ratio_resolvent(fam, depth)?;
            let nested = ratio_resolvent_nested(fam, depth)?;
            let mut diffs = Vec::new();
            for s in 0..=3i64 {
                for h in 0..=3i64 {
                    let direct = umbral::ratio_p(fam, RatioMode::Direct { s, h }, depth)?;
                    let at = [(Symbol::S, int(s)), (Symbol::H, int(h))];
                    for n in 0..=depth {
                        let want = direct[n].as_constant().unwrap_or_default();
                        for (label, v) in [("resolvent", &sym[n]), ("nested", &nested[n])] {
                            let got = v.eval_all(&at)?;
                            if got != want {
                                diffs.push(Diff {
                                    at: format!("{label} s={s} H={h} n={n}"),
                                    expected: rational::to_string(&want),
                                    actual: rational::to_string(&got),
                                });
                            }
                        }
                    }
                }
            }
            Ok(Check::pass("").with_diffs(diffs))
        }));
    }
    Ok(out)
}

fn stirling_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let depth = cfg.depth;
    for (name, fam) in cfg.families(depth + 8)? {
        let fam = &fam;
        for v in [LogVariant::OperatorLog, LogVariant::ShiftExponential] {
            out.push(run_check(format!("log identity {v:?} to depth {depth} [{name}]"), || {
                let r = stirling::verify_log_identity(fam, v, depth)?;
                Ok(Check::pass("").with_diffs(diff_lists("alpha^-k", &r.lhs, &r.rhs)))
            }));
        }
        out.push(run_check(format!("expansion against direct logarithm [{name}]"), || {
            let e = stirling::stirling_terms(fam, 4)?;
            let r = stirling::direct_log_check(fam, &e, depth)?;
            Ok(Check::from_bool("", r.mismatches.is_empty() && r.compared > 0)
                .with_detail(format!("{} coefficients compared", r.compared)))
        }));
        out.push(run_check(format!("g_2 = (1/2) ln omega'(alpha) [{name}]"), || {
            let e = stirling::stirling_terms(fam, 3)?;
            let half = fam.omega_prime().log()?.scale(&rat(1, 2));
            let g2 = e.g(2)?;
            let k = g2.prec().min(half.prec());
            ok(g2.truncate(k).coeffs() == half.truncate(k).coeffs())
        }));
    }
    let order = cfg.order.max(16);
    let exp1 = FamilySpec::new(FamilySource::Exp1, order).build()?;
    let id = FamilySpec::new(FamilySource::Id, order).build()?;
    out.push(run_check("identity family has only the leading term", || {
        let e = stirling::stirling_terms(&id, 4)?;
        ok(e.log_coeff == int(1) && e.g_terms.iter().all(|t| t.series.is_zero()))
    }));
    out.push(run_check("exp1: g_3 = -alpha^2/(12(1-alpha)), boxed bracket agrees", || {
        let e = stirling::stirling_terms(&exp1, 4)?;
        let g3 = e.g(3)?;
        let closed = (0..g3.prec()).all(|k| g3.coeffs()[k] == if k < 2 { int(0) } else { rat(-1, 12) });
        let boxed = stirling::boxed_third_term(&exp1)?;
        let k = g3.prec().min(boxed.prec());
        ok(closed && g3.truncate(k).coeffs() == boxed.truncate(k).coeffs())
    }));
    out.push(run_check("invariance under f e^{-Ax}, A = 1/3", || {
        let r = stirling::invariance_check(&exp1, &rat(1, 3), 4, 10)?;
        let tail = r.entries.iter().filter(|e| e.k >= 3).all(|e| e.invariant);
        let moves = r.invariant(1) == Some(false) && r.invariant(2) == Some(false) && !r.leading_invariant;
        Ok(Check::from_bool("", r.omega_matches && tail && r.first_group_invariant && r.second_term_shift_holds && moves)
            .with_detail("omega, g_k for k >= 3, the s^1 group and the shifted g_2 relation; leading term, g_1, g_2 move"))
    }));
    out.push(run_check("nu example", || {
        let r = stirling::nu_example_check(depth)?;
        Ok(Check::pass("")
            .with_diffs(diff_lists("s^1", &r.s1_expected, &r.s1_computed))
            .with_diffs(diff_lists("s^0", &r.s0_expected, &r.s0_computed)))
    }));
    out.push(run_check("two leading orders of the ratio", || {
        let r = stirling::ratio_two_orders(&exp1, depth + 2)?;
        ok(r.leading_holds && r.q1_closed_form_holds && r.second_holds)
    }));
    out.push(
        run_check("conclusion limit, exp1, alpha = 2, n <= 64", || {
            let fam = FamilySpec::new(FamilySource::Exp1, 72).build()?;
            let r = stirling::limit_check(&fam, LimitKind::Conclusion, &int(2), 64)?;
            let last = r.final_error().unwrap_or(f64::INFINITY);
            Ok(Check::from_bool("", r.monotone_from(8) && last < 0.02).with_detail(format!("final error {last:.3e}")))
        })
        .trend(),
    );
    out.push(
        run_check("truncation error ratio n = 20 -> 40, exp1, alpha = 1/2", || {
            let fam = FamilySpec::new(FamilySource::Exp1, 72).build()?;
            let e = stirling::stirling_terms(&fam, 3)?;
            let r = stirling::stirling_truncation_errors(&fam, &e, &rat(1, 2), 3, &[20, 40])?;
            let ratio = r.ratios[0];
            Ok(Check::from_bool("", (3.2..=4.8).contains(&ratio)).with_detail(format!("ratio {ratio:.4}")))
        })
        .trend(),
    );
    Ok(out)
}

fn sheffer_presets(order: usize) -> Result<Vec<(String, sheffer::ShefferFamily)>> {
    let exp1 = FamilySpec::new(FamilySource::Exp1, order + 8).build()?;
    let geom = FamilySpec::new(FamilySource::Geom, order + 8).build()?;
    let bern = sheffer::bernoulli_ell(order + 8)?;
    let one_plus = RatSeries::from_rationals(Var::X, {
        let mut c = vec![int(0); order + 8];
        c[0] = int(1);
        c[1] = int(1);
        c
    });
    Ok(vec![
        ("exp1, x/(e^x-1)".into(), sheffer::tau_seq(&exp1, &bern, order)?),
        ("geom, x/(e^x-1)".into(), sheffer::tau_seq(&geom, &bern, order)?),
        ("exp1, 1+x".into(), sheffer::tau_seq(&exp1, &one_plus, order)?),
    ])
}

fn sheffer_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let order = cfg.order.max(8);
    for (name, sf) in sheffer_presets(order)? {
        let sf = &sf;
        out.push(run_check(format!("generating function to order {order} [{name}]"), || {
            ok(sheffer::generating_function_check(sf, order)?)
        }));
        out.push(run_check(format!("symbolic continuation specializes [{name}]"), || {
            ok(sheffer::symbolic_specializes(sf)?)
        }));
        out.push(run_check(format!("theta eigenvalues, n <= 8 [{name}]"), || {
            ok(sheffer::theta_check(sf, 8)?.holds)
        }));
        out.push(run_check(format!("resolvent identity, s <= 3, depth 5 [{name}]"), || {
            let prec = sf.fam.order;
            let ts = [
                vec![TTerm::identity(prec)],
                vec![TTerm::d(prec)],
                vec![TTerm::new(1, RatSeries::one(Var::X, &int(1), prec))],
            ];
            let mut diffs = Vec::new();
            for s in 1..=3 {
                for (i, t) in ts.iter().enumerate() {
                    let r = sheffer::sheffer_resolvent_check(sf, t, s, 5)?;
                    diffs.extend(diff_lists(&format!("T#{i} s={s}"), &r.lhs, &r.rhs));
                }
            }
            Ok(Check::pass("").with_diffs(diffs))
        }));
        out.push(run_check(format!("T_n^l against d/dx ln tau_s [{name}]"), || {
            let r = sheffer::tn_ell_log_check(sf, 5)?;
            Ok(Check::from_bool("", r.mismatches.is_empty()).with_detail(format!("{} orders", r.compared)))
        }));
    }
    out.push(run_check("Bernoulli logarithm experiment report", || {
        let r = sheffer::bernoulli_log_experiment(cfg.depth)?;
        let complete = r.candidates.len() == 2
            && r.candidates.iter().all(|c| c.lhs.len() == cfg.depth + 1 && c.diff.len() == cfg.depth + 1);
        let summary = r
            .candidates
            .iter()
            .map(|c| format!("{}: {}/{} match", c.name, c.matches.iter().filter(|&&m| m).count(), c.matches.len()))
            .collect::<Vec<_>>()
            .join("; ");
        Ok(Check::from_bool("", complete).with_detail(summary))
    }));
    Ok(out)
}

/// A fixed non-trivial input column for the conjugation checks.
fn sample_column(len: usize) -> Vec<ParamPoly> {
    (0..len)
        .map(|k| ParamPoly::constant(rat((k as i64 * 5 + 3) % 7 - 3, 1 + k as i64 % 3)))
        .collect()
}

fn conjugation_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let s = ParamPoly::symbol(Symbol::S);
    let depth = cfg.depth;
    let fams = cfg.families(2 * depth + 14)?;
    for (name, fam) in &fams {
        out.push(run_check(format!("conjugated step, both pipelines, n <= 8 [{name}]"), || {
            let g = sample_column(10);
            let a = conjugation::conjugated_step(fam, &g, &s)?;
            let b = conjugation::conjugated_step_series(fam, &g, &s)?;
            Ok(Check::pass("").with_diffs(diff_lists("g^1", &strings(&a), &strings(&b))))
        }));
        out.push(run_check(format!("binomial recurrence, n, k <= 4 [{name}]"), || {
            let r = conjugation::binomial_recurrence_check(fam, &sample_column(9), 4, 4)?;
            Ok(Check::from_bool("", r.holds && r.pipelines_agree).with_detail(format!("failures {:?}", r.failures)))
        }));
        out.push(run_check(format!("l_s two ways to depth {depth} [{name}]"), || {
            let r = conjugation::ell_s(fam, &sample_column(depth + 1), depth)?;
            Ok(Check::from_bool("", r.product_identity).with_diffs(diff_lists("alpha^-k", &r.from_table, &r.from_p_s)))
        }));
        out.push(run_check(format!("closed-form resolvent, s in {{1/2, 3/2, -1/2}} [{name}]"), || {
            let g = RatSeries::one(Var::X, &int(1), fam.order);
            let mut bad = Vec::new();
            for sv in [rat(1, 2), rat(3, 2), rat(-1, 2)] {
                let r = conjugation::resolvent_closed_form(fam, &g, &sv, depth, depth)?;
                if !r.holds {
                    bad.push(format!("s={}: {:?}, {} leftovers", r.s, r.mismatches, r.positive_leftovers));
                }
            }
            Ok(Check::from_bool("", bad.is_empty()).with_detail(bad.join("; ")))
        }));
        out.push(run_check(format!("conjugation formula, T in {{1, D, alpha D^2}}, s in {{2, 3}} [{name}]"), || {
            let prec = fam.order;
            let mut d2 = vec![0i64; prec];
            d2[2] = 1;
            let ts = [
                vec![TTerm::identity(prec)],
                vec![TTerm::d(prec)],
                vec![TTerm::new(1, RatSeries::from_ints(Var::X, &d2))],
            ];
            let mut diffs = Vec::new();
            for sv in [2, 3] {
                for (i, t) in ts.iter().enumerate() {
                    let r = conjugation::conjugated_expectation(fam, t, sv, 5)?;
                    diffs.extend(diff_lists(&format!("x=0 T#{i} s={sv}"), &r.direct, &r.at_zero));
                    diffs.extend(diff_lists(&format!("x=s/alpha T#{i} s={sv}"), &r.direct, &r.shifted));
                }
            }
            Ok(Check::pass("").with_diffs(diffs))
        }));
    }
    if let Some((_, fam)) = fams.iter().find(|(n, _)| n == "exp1") {
        out.push(run_check("q_n(s) column is annihilated", || {
            let q = fam.q_at_zero(8)?;
            let next = conjugation::conjugated_table(fam, &q, &s, 1, Pipeline::Series)?;
            ok(next.g_table[1].iter().all(ParamPoly::is_zero))
        }));
    }
    Ok(out)
}

/// Text line for one suite: `suite: passed/total`.
pub fn summary_line(r: &SuiteReport) -> String {
    let passed = r.checks.iter().filter(|c| c.passed()).count();
    format!("{}: {passed}/{}", r.suite, r.checks.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in ALL_SUITES {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_series_suite_passes() {
        let cfg = VerifyConfig {
            order: 8,
            depth: 3,
            families: vec![FamilySource::Exp1],
        };
        let r = run_suite(Suite::Series, &cfg);
        assert!(r.exact_passed(), "{r:?}");
    }
}
