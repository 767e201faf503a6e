//! Objects derived directly from `f`: the inverse series, `Tf = f/f'`, omega,
//! binomial-type polynomials, the q-coefficients and the symbolic
//! continuation `p_s`.

use num_traits::Zero;

use crate::asymptotic::AsymptoticSeries;
use crate::error::{Error, Result};
use crate::param_poly::{ParamPoly, Symbol};
use crate::poly::Poly;
use crate::rational::{self, int, Rational};
use crate::series::{ParamSeries, PowerSeries, RatSeries, Var};

#[derive(Debug, Clone, PartialEq)]
pub struct BinomialFamily {
    pub f: RatSeries,
    pub phi: RatSeries,
    pub tau_f: RatSeries,
    pub omega: RatSeries,
    pub fprime: RatSeries,
    pub order: usize,
}

fn check_admissible(op: &'static str, g: &RatSeries) -> Result<()> {
    g.require_prec(op, 2)?;
    if !Zero::is_zero(&g.coeffs()[0]) || g.coeffs()[1] != int(1) {
        return Err(Error::precondition(op, "series must lie in x + x^2 Q[[x]]"));
    }
    Ok(())
}

/// Builds every derived series of `f` and cross-checks the compositions.
pub fn build_family(f: &RatSeries) -> Result<BinomialFamily> {
    let op = "build_family";
    check_admissible(op, f)?;
    let f = f.clone().with_var(Var::X);
    let prec = f.prec();
    let fprime = f.derive();
    // f/f' = x * (f/x) / f' keeps the full precision of f
    let tau_f = f.div_var_pow(1)?.try_div(&fprime)?.mul_var().truncate(prec);
    let omega = tau_f.revert()?;
    let phi = f.revert()?;
    let x = RatSeries::variable(Var::X, &int(1), prec);
    if f.compose(&phi)? != x || tau_f.compose(&omega)? != x {
        return Err(Error::precondition(op, "composition cross-check failed"));
    }
    Ok(BinomialFamily {
        f,
        phi,
        tau_f,
        omega,
        fprime,
        order: prec,
    })
}

/// Solves `f/f' = g` for `f`: `(ln(f/x))' = 1/g - 1/x`, integrate, exponentiate.
pub fn tau_inverse(g: &RatSeries) -> Result<RatSeries> {
    check_admissible("tau_inverse", g)?;
    let big_g = g.div_var_pow(1)?;
    let one = RatSeries::one(g.var(), &int(1), big_g.prec());
    let log_ratio = big_g.inverse()?.try_sub(&one)?.div_var_pow(1)?.integrate();
    Ok(log_ratio.exp()?.mul_var())
}

impl BinomialFamily {
    pub fn omega_prime(&self) -> RatSeries {
        self.omega.derive()
    }

    /// `f'(omega(x))`.
    pub fn fprime_of_omega(&self) -> Result<RatSeries> {
        self.fprime.compose(&self.omega)
    }

    /// `sigma = v / omega'(v)` as a series in the variable `var`.
    pub fn sigma(&self, var: Var) -> Result<RatSeries> {
        Ok(self.omega_prime().inverse()?.mul_var().with_var(var))
    }

    /// `q_n(s) = n! [x^n] (x/f(x))^s` for `n < count`.
    pub fn q_at_zero(&self, count: usize) -> Result<Vec<ParamPoly>> {
        let ratio = self.f.div_var_pow(1)?.inverse()?;
        ratio.require_prec("q_at_zero", count)?;
        let q = crate::series::pow_param(&ratio.truncate(count), Symbol::S)?;
        Ok(q
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::from_integer(rational::factorial(n))))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PSequence {
    pub polys: Vec<Poly>,
}

/// `p_n(alpha) = n! [y^n] exp(alpha phi(y)) = sum_k alpha^k n!/k! [y^n] phi^k`.
pub fn p_seq(fam: &BinomialFamily, n_max: usize) -> Result<PSequence> {
    fam.phi.require_prec("p_seq", n_max + 1)?;
    let phi = fam.phi.truncate(n_max + 1);
    let mut power = RatSeries::one(Var::X, &int(1), n_max + 1);
    // table[k][n] = [y^n] phi^k
    let mut table = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        table.push(power.clone());
        power = &power * &phi;
    }
    let polys = (0..=n_max)
        .map(|n| {
            let nf = Rational::from_integer(rational::factorial(n));
            Poly::new(
                (0..=n)
                    .map(|k| {
                        let kf = Rational::from_integer(rational::factorial(k));
                        &table[k].coeffs()[n] * &nf / kf
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(PSequence { polys })
}

/// `q_n^t(s)` for `n <= n_x`, each a series in `t` known to `t^{n_t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    pub rows: Vec<ParamSeries>,
}

impl QTable {
    pub fn row(&self, n: usize) -> Result<&ParamSeries> {
        self.rows
            .get(n)
            .ok_or_else(|| Error::truncation("q_coeffs", n + 1, self.rows.len()))
    }

    /// `q_n^{inner}(s)` for a series `inner` with zero constant term.
    pub fn at_series(&self, n: usize, inner: &ParamSeries) -> Result<ParamSeries> {
        self.row(n)?.clone().with_var(inner.var()).compose(inner)
    }

    pub fn substitute(&self, sym: Symbol, value: &ParamPoly) -> QTable {
        QTable {
            rows: self.rows.iter().map(|r| r.substitute(sym, value)).collect(),
        }
    }
}

/// Expands `(x f'(t) / (f(x+t) - f(t)))^s` with `u(x,t) = sum_k f^{(k+1)}(t)/((k+1)! f'(t)) x^k`.
pub fn q_coeffs(fam: &BinomialFamily, n_x: usize, n_t: usize) -> Result<QTable> {
    let op = "q_coeffs";
    fam.f.require_prec(op, n_x + n_t + 2)?;
    let t_prec = n_t + 1;
    let f_t = fam.f.clone().with_var(Var::T);
    let fp = f_t.derive().truncate(t_prec);
    let fp_inv = fp.inverse()?;
    let one_t = ParamSeries::one(Var::T, &ParamPoly::one(), t_prec);
    let mut u_coeffs = Vec::with_capacity(n_x + 1);
    let mut deriv = f_t.derive();
    for k in 0..=n_x {
        if k == 0 {
            u_coeffs.push(one_t.clone());
        } else {
            let scaled = deriv
                .truncate(t_prec)
                .try_mul(&fp_inv)?
                .scale(&Rational::from_integer(rational::factorial(k + 1)).recip());
            u_coeffs.push(scaled.to_param());
        }
        deriv = deriv.derive();
    }
    let u = PowerSeries::new(Var::X, u_coeffs, one_t.clone());
    let minus_s = one_t.scale_by(&ParamPoly::symbol(Symbol::S)).negate();
    let powered = u.pow(&minus_s)?;
    let rows = powered
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale(&Rational::from_integer(rational::factorial(n))))
        .collect();
    Ok(QTable { rows })
}

/// `p_H^t(alpha) = sum_n binom(H-1, n) alpha^{H-n} q_n^t(H)`; entry `n` is the
/// `alpha^{H-n}` coefficient as a series in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PHExpansion {
    pub coeffs: Vec<ParamSeries>,
}

pub fn p_h_t(fam: &BinomialFamily, n: usize, n_t: usize) -> Result<PHExpansion> {
    let table = q_coeffs(fam, n, n_t)?;
    let h = ParamPoly::symbol(Symbol::H);
    let h_minus_1 = &h - &ParamPoly::one();
    let coeffs = (0..=n)
        .map(|k| {
            let row = table.row(k)?.substitute(Symbol::S, &h);
            Ok(row.scale_by(&h_minus_1.binomial(k)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PHExpansion { coeffs })
}

/// `p_s(alpha) = alpha^s sum_k binom(s-1, k) q_k(s) alpha^{-k}` for `k <= n`.
pub fn p_symbolic(fam: &BinomialFamily, n: usize) -> Result<AsymptoticSeries> {
    let s = ParamPoly::symbol(Symbol::S);
    let s1 = &s - &ParamPoly::one();
    let q = fam.q_at_zero(n + 1)?;
    let coeffs = q.iter().enumerate().map(|(k, qk)| &s1.binomial(k) * qk).collect();
    Ok(AsymptoticSeries::new(s, coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioMode {
    Direct { s: i64, h: i64 },
    Symbolic,
}

/// `P_n^H(s)` of `p_{s+H}/p_s = sum_n alpha^{H-n} P_n^H(s)`, `n <= n_max`.
///
/// Direct mode divides the polynomials for integer `s`, `H`; symbolic mode
/// runs the graded resolvent with `s`, `H` kept as parameters.
pub fn ratio_p(fam: &BinomialFamily, mode: RatioMode, n_max: usize) -> Result<Vec<ParamPoly>> {
    match mode {
        RatioMode::Direct { s, h } => {
            if s < 0 || s + h < 0 {
                return Err(Error::precondition("ratio_p", "need s >= 0 and s + H >= 0"));
            }
            let top = (s + h) as usize;
            let ps = p_seq(fam, top.max(s as usize))?;
            let (shift, coeffs) = ps.polys[top].laurent_div(&ps.polys[s as usize], n_max)?;
            debug_assert_eq!(shift, h);
            Ok(coeffs.into_iter().map(ParamPoly::constant).collect())
        }
        RatioMode::Symbolic => crate::operator::graded::ratio_resolvent(fam, n_max),
    }
}

/// The same ratio through division of two symbolic continuations.
pub fn ratio_from_continuation(fam: &BinomialFamily, n_max: usize) -> Result<Vec<ParamPoly>> {
    let ps = p_symbolic(fam, n_max)?;
    let s_plus_h = &ParamPoly::symbol(Symbol::S) + &ParamPoly::symbol(Symbol::H);
    let shifted = ps.substitute(Symbol::S, &s_plus_h);
    let ratio = shifted.div(&ps)?;
    ratio.param_coeffs()
}

/// Checks `sum_k p_k(alpha) f(x)^k / k! = exp(alpha x)` through `x^n`.
pub fn generating_identity_holds(fam: &BinomialFamily, n: usize) -> Result<bool> {
    let ps = p_seq(fam, n)?;
    fam.f.require_prec("generating_identity", n + 1)?;
    let f = fam.f.truncate(n + 1);
    // coefficient of x^m alpha^j accumulates in acc[m][j]
    let mut acc = vec![vec![Rational::zero(); n + 1]; n + 1];
    let mut fk = RatSeries::one(Var::X, &int(1), n + 1);
    for (k, pk) in ps.polys.iter().enumerate() {
        let kf = Rational::from_integer(rational::factorial(k));
        for (m, c) in fk.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            for (j, a) in pk.coeffs().iter().enumerate() {
                acc[m][j] += a * c / &kf;
            }
        }
        fk = &fk * &f;
    }
    Ok((0..=n).all(|m| {
        (0..=n).all(|j| {
            let expect = if j == m {
                Rational::from_integer(rational::factorial(m)).recip()
            } else {
                Rational::zero()
            };
            acc[m][j] == expect
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::series::elementary::*;

    fn exp1(prec: usize) -> BinomialFamily {
        build_family(&expm1(Var::X, prec)).unwrap()
    }

    #[test]
    fn family_of_identity() {
        let x = RatSeries::variable(Var::X, &int(1), 8);
        let fam = build_family(&x).unwrap();
        assert_eq!(fam.phi, x);
        assert_eq!(fam.tau_f, x);
        assert_eq!(fam.omega, x);
    }

    #[test]
    fn exponential_family_omega() {
        assert_eq!(exp1(12).omega, neg_log1m(Var::X, 12));
        assert!(build_family(&RatSeries::from_ints(Var::X, &[0, 2, 1])).is_err());
    }

    #[test]
    fn quadratic_tau() {
        let f = RatSeries::from_ints(Var::X, &[0, 1, 1, 0, 0, 0, 0]);
        let fam = build_family(&f).unwrap();
        // (x + x^2) / (1 + 2x) by hand: x - x^2 + 2x^3 - 4x^4 + 8x^5 - 16x^6
        assert_eq!(fam.tau_f, RatSeries::from_ints(Var::X, &[0, 1, -1, 2, -4, 8, -16]));
    }

    #[test]
    fn tau_inverse_of_x_exp_minus_x() {
        let g = expm1(Var::X, 7).compose(&RatSeries::from_ints(Var::X, &[0, -1, 0, 0, 0, 0, 0])).unwrap();
        let g = (&RatSeries::one(Var::X, &int(1), 7) + &g).mul_var().truncate(7);
        let f = tau_inverse(&g).unwrap();
        assert_eq!(&f.coeffs()[..5], &[int(0), int(1), int(1), rat(3, 4), rat(17, 36)]);
        let fam = build_family(&f).unwrap();
        assert_eq!(fam.tau_f.truncate(6), g.truncate(6));
    }

    #[test]
    fn falling_factorials() {
        let ps = p_seq(&exp1(10), 6).unwrap();
        for (n, p) in ps.polys.iter().enumerate() {
            assert_eq!(p, &Poly::falling_factorial(n));
        }
    }

    #[test]
    fn q_table_low_rows() {
        let fam = exp1(14);
        let table = q_coeffs(&fam, 3, 5).unwrap();
        let s = ParamPoly::symbol(Symbol::S);
        assert_eq!(table.row(0).unwrap(), &ParamSeries::one(Var::T, &ParamPoly::one(), 6));
        // f''/f' = 1 for the exponential family
        let q1 = table.row(1).unwrap();
        assert_eq!(q1.coeff(0).unwrap(), &s.scale(&rat(-1, 2)));
        assert!(q1.coeffs()[1..].iter().all(ParamPoly::is_zero));
        let q2 = &table.row(2).unwrap().coeffs()[0];
        assert_eq!(q2, &(&s * &(&s.scale(&int(3)) - &ParamPoly::one())).scale(&rat(1, 12)));
        let at0 = fam.q_at_zero(4).unwrap();
        for (n, q) in at0.iter().enumerate() {
            assert_eq!(q, &table.row(n).unwrap().coeffs()[0]);
        }
    }

    #[test]
    fn continuation_specializes() {
        let fam = exp1(12);
        let ps = p_symbolic(&fam, 6).unwrap();
        let seq = p_seq(&fam, 6).unwrap();
        for n in 0..=6i64 {
            let coeffs = ps.substitute(Symbol::S, &ParamPoly::from_int(n)).param_coeffs().unwrap();
            for (k, c) in coeffs.iter().enumerate() {
                let expect = if (k as i64) <= n {
                    seq.polys[n as usize].coeff((n - k as i64) as usize)
                } else {
                    Rational::zero()
                };
                assert_eq!(c.as_constant().unwrap(), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn direct_ratio() {
        let fam = exp1(10);
        let r = ratio_p(&fam, RatioMode::Direct { s: 2, h: 1 }, 3).unwrap();
        assert_eq!(r[0], ParamPoly::one());
        assert_eq!(r[1], ParamPoly::from_int(-2));
        assert!(r[2].is_zero());
        let r0 = ratio_p(&fam, RatioMode::Direct { s: 3, h: 0 }, 3).unwrap();
        assert_eq!(r0, vec![ParamPoly::one(), ParamPoly::zero(), ParamPoly::zero(), ParamPoly::zero()]);
    }

    #[test]
    fn generating_function_identity() {
        assert!(generating_identity_holds(&exp1(14), 12).unwrap());
    }
}
