use proptest::prelude::*;

use umbral_core::conjugation;
use umbral_core::presets::FamilySource;
use umbral_core::rational::{int, rat};
use umbral_core::report::{Check, Report, SuiteReport};
use umbral_core::series::pow_param;
use umbral_core::stirling::{self, LogVariant};
use umbral_core::umbral::{self, build_family};
use umbral_core::{ParamPoly, RatSeries, Rational, Symbol, Var};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(n, d)| rat(n, d))
}

fn series(max_len: usize) -> impl Strategy<Value = RatSeries> {
    prop::collection::vec(small_rational(), 1..=max_len).prop_map(|c| RatSeries::from_rationals(Var::X, c))
}

fn same_len_triple(max_len: usize) -> impl Strategy<Value = (RatSeries, RatSeries, RatSeries)> {
    (1..=max_len).prop_flat_map(|n| {
        let one = || prop::collection::vec(small_rational(), n).prop_map(|c| RatSeries::from_rationals(Var::X, c));
        (one(), one(), one())
    })
}

/// `x + c_2 x^2 + ...` with `len` known coefficients.
fn admissible(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatSeries> {
    len.prop_flat_map(|n| prop::collection::vec(small_rational(), n - 2)).prop_map(|tail| {
        let mut c = vec![int(0), int(1)];
        c.extend(tail);
        RatSeries::from_rationals(Var::X, c)
    })
}

/// Lagrange inversion: `[x^n] f^{-1} = (1/n) [x^{n-1}] (x/f)^n`.
fn lagrange_revert(f: &RatSeries) -> RatSeries {
    let n_max = f.prec();
    let x_over_f = f.div_var_pow(1).unwrap().inverse().unwrap();
    let mut power = RatSeries::one(Var::X, &int(1), n_max);
    let mut out = vec![int(0); n_max];
    for n in 1..n_max {
        power = power.try_mul(&x_over_f).unwrap();
        out[n] = power.coeffs()[n - 1].clone() / int(n as i64);
    }
    RatSeries::from_rationals(Var::X, out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in same_len_triple(16)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn revert_is_two_sided(f in admissible(2..=12)) {
        let g = f.revert().unwrap();
        let x = RatSeries::variable(Var::X, &int(1), f.prec());
        prop_assert_eq!(&f.compose(&g).unwrap(), &x);
        prop_assert_eq!(&g.compose(&f).unwrap(), &x);
        prop_assert_eq!(g, lagrange_revert(&f));
    }

    #[test]
    fn pow_param_at_integers(f in admissible(3..=11), e in 0u32..=5) {
        let u = f.div_var_pow(1).unwrap();
        let sym = pow_param(&u, Symbol::S).unwrap();
        let at = sym.eval_symbol(Symbol::S, &int(e as i64)).to_rational().unwrap();
        let mut direct = RatSeries::one(Var::X, &int(1), u.prec());
        for _ in 0..e {
            direct = direct.try_mul(&u).unwrap();
        }
        prop_assert_eq!(at, direct);
    }

    #[test]
    fn derive_after_integrate(g in series(16)) {
        let n = g.prec();
        prop_assert_eq!(g.integrate().derive().truncate(n), g);
    }

    #[test]
    fn log_exp_inverse(g in series(12)) {
        let mut c = g.coeffs().to_vec();
        c[0] = int(0);
        let h = RatSeries::from_rationals(Var::X, c);
        prop_assert_eq!(h.exp().unwrap().log().unwrap(), h);
    }

    #[test]
    fn family_spec_display_parses(tail in prop::collection::vec(small_rational(), 0..6)) {
        let mut c = vec![int(1)];
        c.extend(tail);
        let src = FamilySource::Poly(c);
        prop_assert_eq!(src.to_string().parse::<FamilySource>().unwrap(), src);
    }

    #[test]
    fn report_json_round_trip(names in prop::collection::vec("[a-z ]{1,12}", 1..5), us in 0u64..1_000_000) {
        let checks = names.iter().enumerate().map(|(i, n)| Check::from_bool(n.clone(), i % 2 == 0)).collect();
        let r = Report { suites: vec![SuiteReport { suite: "p".into(), checks, elapsed_us: us }] };
        prop_assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn continuation_specializes_for_random_families(f in admissible(10..=10)) {
        let fam = build_family(&f).unwrap();
        let ps = umbral::p_seq(&fam, 6).unwrap();
        let sym = umbral::p_symbolic(&fam, 6).unwrap().param_coeffs().unwrap();
        for s in 0..=6usize {
            for k in 0..=s {
                let v = sym[k].eval_all(&[(Symbol::S, int(s as i64))]).unwrap();
                prop_assert_eq!(v, ps.polys[s].coeff(s - k));
            }
        }
    }

    #[test]
    fn log_identity_for_random_families(f in admissible(9..=9)) {
        let fam = build_family(&f).unwrap();
        for v in [LogVariant::OperatorLog, LogVariant::ShiftExponential] {
            prop_assert!(stirling::verify_log_identity(&fam, v, 4).unwrap().holds);
        }
    }

    #[test]
    fn conjugated_step_pipelines_agree(f in admissible(12..=12), col in prop::collection::vec(small_rational(), 2..8)) {
        let fam = build_family(&f).unwrap();
        let g: Vec<ParamPoly> = col.into_iter().map(ParamPoly::constant).collect();
        let s = ParamPoly::symbol(Symbol::S);
        prop_assert_eq!(
            conjugation::conjugated_step(&fam, &g, &s).unwrap(),
            conjugation::conjugated_step_series(&fam, &g, &s).unwrap()
        );
    }
}
