//! Operators on `Q[params][[x]]` graded by powers of `alpha^{-1}`, and the
//! geometric inversion `(1 - X)^{-1}` computed grade by grade.

use crate::error::{Error, Result};
use crate::param_poly::{ParamPoly, Symbol};
use crate::rational::int;
use crate::series::{ParamSeries, Var};
use crate::umbral::{self, BinomialFamily};

#[derive(Debug, Clone, PartialEq)]
pub enum ElemOp {
    Mul(ParamSeries),
    Dx,
    /// `(1/omega'(x)) d/dx`.
    DOmega,
    /// `Lg = (g - g(0))/x`.
    L,
    Scale(ParamPoly),
}

/// `alpha^{-grade}` times a composition of elementary operators, written
/// left to right as in operator notation.
#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub grade: usize,
    pub ops: Vec<ElemOp>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedOperator {
    parts: Vec<Part>,
    inv_omega_prime: ParamSeries,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalPoint {
    Zero,
    /// `x = c * alpha^{-1}`.
    ScaledInverse(ParamPoly),
}

impl GradedOperator {
    pub fn new(fam: &BinomialFamily) -> Result<Self> {
        Ok(GradedOperator {
            parts: Vec::new(),
            inv_omega_prime: fam.omega_prime().inverse()?.to_param(),
        })
    }

    pub fn with_part(mut self, grade: usize, ops: Vec<ElemOp>) -> Self {
        self.parts.push(Part { grade, ops });
        self
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    fn apply_elem(&self, op: &ElemOp, g: &ParamSeries) -> Result<ParamSeries> {
        match op {
            ElemOp::Mul(c) => g.try_mul(c),
            ElemOp::Dx => Ok(g.derive()),
            ElemOp::DOmega => g.derive().try_mul(&self.inv_omega_prime),
            ElemOp::L => Ok(g.zero_derivative()),
            ElemOp::Scale(p) => Ok(g.scale_by(p)),
        }
    }

    /// Every part applied to `g` and summed, grades ignored.
    pub fn apply_sum(&self, g: &ParamSeries) -> Result<ParamSeries> {
        let mut acc = ParamSeries::zero(g.var(), &ParamPoly::one(), g.prec());
        for part in &self.parts {
            acc = acc.try_add(&self.apply_part(part, g)?)?;
        }
        Ok(acc)
    }

    pub fn apply_part(&self, part: &Part, g: &ParamSeries) -> Result<ParamSeries> {
        part.ops.iter().rev().try_fold(g.clone(), |acc, op| self.apply_elem(op, &acc))
    }
}

/// `R_n = target_n + sum_i X_i R_{n - grade_i}`: the grade-`n` piece of
/// `(1 - X)^{-1} target` as a series in `x`.
pub fn resolvent_series(op: &GradedOperator, target: &[ParamSeries], depth: usize) -> Result<Vec<ParamSeries>> {
    if op.parts.iter().any(|p| p.grade == 0) {
        return Err(Error::GradeObstruction);
    }
    let prec = target.iter().map(ParamSeries::prec).max().unwrap_or(depth + 1);
    let zero = ParamSeries::zero(Var::X, &ParamPoly::one(), prec);
    let mut out: Vec<ParamSeries> = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let mut r = target.get(n).cloned().unwrap_or_else(|| zero.clone());
        for part in &op.parts {
            if part.grade <= n {
                r = r.try_add(&op.apply_part(part, &out[n - part.grade])?)?;
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// Graded inversion followed by evaluation; entry `m` is the `alpha^{-m}`
/// coefficient relative to the top power of the target.
pub fn graded_resolvent(
    op: &GradedOperator,
    target: &[ParamSeries],
    depth: usize,
    eval: &EvalPoint,
) -> Result<Vec<ParamPoly>> {
    let r = resolvent_series(op, target, depth)?;
    match eval {
        EvalPoint::Zero => r
            .iter()
            .map(|rn| rn.coeff(0).cloned().map_err(|_| Error::truncation("graded_resolvent", 1, 0)))
            .collect(),
        EvalPoint::ScaledInverse(c) => (0..=depth)
            .map(|m| {
                let mut acc = ParamPoly::zero();
                for j in 0..=m {
                    let rn = &r[m - j];
                    let cj = rn
                        .coeff(j)
                        .map_err(|_| Error::truncation("graded_resolvent", j + 1, rn.prec()))?;
                    acc = &acc + &(cj * &c.pow(j as u32));
                }
                Ok(acc)
            })
            .collect(),
    }
}

/// `X = s alpha^{-1} L - alpha^{-1} d/domega`.
pub fn resolvent_x(fam: &BinomialFamily, s: &ParamPoly) -> Result<GradedOperator> {
    Ok(GradedOperator::new(fam)?
        .with_part(1, vec![ElemOp::Scale(s.clone()), ElemOp::L])
        .with_part(1, vec![ElemOp::Scale(ParamPoly::from_int(-1)), ElemOp::DOmega]))
}

/// `s alpha^{-1} (1 + alpha^{-1} d/domega)^{-1} L`, the inner inverse expanded
/// into its own geometric series up to `depth`.
pub fn resolvent_y(fam: &BinomialFamily, s: &ParamPoly, depth: usize) -> Result<GradedOperator> {
    let mut op = GradedOperator::new(fam)?;
    for j in 0..depth.max(1) {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let mut ops = vec![ElemOp::Scale(s.scale(&int(sign)))];
        ops.extend(std::iter::repeat_n(ElemOp::DOmega, j));
        ops.push(ElemOp::L);
        op = op.with_part(j + 1, ops);
    }
    Ok(op)
}

/// `-sum_j alpha^{-1-j} s^j d/domega L^j`, used with evaluation at `x = s/alpha`.
pub fn shifted_x(fam: &BinomialFamily, s: &ParamPoly, depth: usize) -> Result<GradedOperator> {
    let mut op = GradedOperator::new(fam)?;
    for j in 0..depth.max(1) {
        let mut ops = vec![ElemOp::Scale(-&s.pow(j as u32)), ElemOp::DOmega];
        ops.extend(std::iter::repeat_n(ElemOp::L, j));
        op = op.with_part(j + 1, ops);
    }
    Ok(op)
}

/// `f'(omega(x))^{-H}` over parameters.
fn fprime_omega_power(fam: &BinomialFamily, e: &ParamPoly) -> Result<ParamSeries> {
    fam.fprime_of_omega()?.to_param().pow(e)
}

/// Targets `sum_n c_n(H) alpha^{H-n} q_n^{omega(x)}(shift) f'(omega(x))^{-H}`.
fn ratio_target(fam: &BinomialFamily, depth: usize, h_shift: i64, binom_base: &ParamPoly) -> Result<Vec<ParamSeries>> {
    let h = ParamPoly::symbol(Symbol::H);
    let table = umbral::q_coeffs(fam, depth, depth)?;
    let arg = &h + &ParamPoly::from_int(h_shift);
    let omega = fam.omega.truncate(depth + 1).to_param();
    let weight = fprime_omega_power(fam, &-&h)?.truncate(depth + 1);
    (0..=depth)
        .map(|n| {
            let qn = table.at_series(n, &omega)?.substitute(Symbol::S, &arg);
            Ok(qn.try_mul(&weight)?.scale_by(&binom_base.binomial(n)))
        })
        .collect()
}

/// `P_n^H(s)`, `n <= n_max`, from the resolvent form with `L` and
/// `d/domega` at grade one.
pub fn ratio_resolvent(fam: &BinomialFamily, n_max: usize) -> Result<Vec<ParamPoly>> {
    let h = ParamPoly::symbol(Symbol::H);
    let target = ratio_target(fam, n_max, 1, &h)?;
    let x = resolvent_x(fam, &ParamPoly::symbol(Symbol::S))?;
    graded_resolvent(&x, &target, n_max, &EvalPoint::Zero)
}

/// The same coefficients through the form with the nested inverse.
pub fn ratio_resolvent_nested(fam: &BinomialFamily, n_max: usize) -> Result<Vec<ParamPoly>> {
    let h = ParamPoly::symbol(Symbol::H);
    let target = ratio_target(fam, n_max, 0, &(&h - &ParamPoly::one()))?;
    let y = resolvent_y(fam, &ParamPoly::symbol(Symbol::S), n_max)?;
    graded_resolvent(&y, &target, n_max, &EvalPoint::Zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use crate::series::elementary::expm1;
    use crate::umbral::{build_family, ratio_p, RatioMode};

    fn specialize(p: &ParamPoly, s: i64, h: i64) -> Rational {
        p.eval_all(&[(Symbol::S, int(s)), (Symbol::H, int(h))]).unwrap()
    }

    #[test]
    fn zero_operator_returns_target() {
        let fam = build_family(&expm1(Var::X, 8)).unwrap();
        let op = GradedOperator::new(&fam).unwrap();
        let t = vec![ParamSeries::constant(Var::X, ParamPoly::from_int(3), 4)];
        let r = graded_resolvent(&op, &t, 2, &EvalPoint::Zero).unwrap();
        assert_eq!(r, vec![ParamPoly::from_int(3), ParamPoly::zero(), ParamPoly::zero()]);
        let bad = op.with_part(0, vec![ElemOp::L]);
        assert!(matches!(graded_resolvent(&bad, &t, 2, &EvalPoint::Zero), Err(Error::GradeObstruction)));
    }

    #[test]
    fn exp_family_matches_division() {
        let fam = build_family(&expm1(Var::X, 14)).unwrap();
        let sym = ratio_resolvent(&fam, 4).unwrap();
        let nested = ratio_resolvent_nested(&fam, 4).unwrap();
        let direct = ratio_p(&fam, RatioMode::Direct { s: 2, h: 1 }, 4).unwrap();
        for n in 0..=4 {
            let d = direct[n].as_constant().unwrap();
            assert_eq!(specialize(&sym[n], 2, 1), d, "n={n}");
            assert_eq!(specialize(&nested[n], 2, 1), d, "n={n}");
        }
    }
}
