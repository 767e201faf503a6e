//! Noncommutative polynomials over `{sigma, D, E, lambda, lambda^-1}` kept in
//! the shape `alpha_0 E + alpha_1 E D + ... + alpha_k E D^k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Sigma,
    D,
    E,
    Lambda,
    LambdaInv,
}

impl Letter {
    fn symbol(self) -> &'static str {
        match self {
            Letter::Sigma => "σ",
            Letter::D => "D",
            Letter::E => "E",
            Letter::Lambda => "λ",
            Letter::LambdaInv => "λ⁻¹",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct NCWord(pub Vec<Letter>);

impl NCWord {
    pub fn new(letters: &[Letter]) -> Self {
        NCWord(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, rhs: &NCWord) -> NCWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        NCWord(v)
    }

    /// Splits `prefix E D^i` into `(prefix, i)`.
    pub fn split_shape(&self) -> Result<(NCWord, usize)> {
        let e_count = self.0.iter().filter(|&&l| l == Letter::E).count();
        if e_count != 1 {
            return Err(Error::MalformedShape(format!("word {self} has {e_count} E letters")));
        }
        let pos = self.0.iter().position(|&l| l == Letter::E).unwrap_or(0);
        let tail = &self.0[pos + 1..];
        if tail.iter().any(|&l| l != Letter::D) {
            return Err(Error::MalformedShape(format!("word {self} has non-D letters after E")));
        }
        Ok((NCWord(self.0[..pos].to_vec()), tail.len()))
    }

    fn e_d_power(i: usize) -> NCWord {
        let mut v = vec![Letter::E];
        v.extend(std::iter::repeat_n(Letter::D, i));
        NCWord(v)
    }

    fn d_power(i: usize) -> NCWord {
        NCWord(vec![Letter::D; i])
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            f.write_str(l.symbol())?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<NCWord, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn e() -> Self {
        NCPoly::word(NCWord::new(&[Letter::E]), Rational::one())
    }

    pub fn word(w: NCWord, c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &NCWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: NCWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Word-level product (concatenation).
    pub fn mul(&self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * r);
        }
        out
    }

    /// Every word is `prefix E D^i` with no E in the prefix.
    pub fn check_shape(&self) -> Result<()> {
        for w in self.terms.keys() {
            w.split_shape()?;
        }
        Ok(())
    }

    /// `alpha_i`: the prefixes of words ending in `E D^i`.
    pub fn alpha(&self, i: usize) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let (prefix, k) = w.split_shape()?;
            if k == i {
                out.add_term(prefix, c.clone());
            }
        }
        Ok(out)
    }

    pub fn top_index(&self) -> Result<Option<usize>> {
        let mut top = None;
        for w in self.terms.keys() {
            let (_, k) = w.split_shape()?;
            top = Some(top.map_or(k, |t: usize| t.max(k)));
        }
        Ok(top)
    }

    /// Removes every lambda letter and recollects.
    pub fn erase_lambda(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let letters: Vec<Letter> = w
                .0
                .iter()
                .copied()
                .filter(|l| !matches!(l, Letter::Lambda | Letter::LambdaInv))
                .collect();
            out.add_term(NCWord(letters), c.clone());
        }
        out
    }

    /// Whether every coefficient word uses only `sigma` and `D`.
    pub fn prefixes_in_sigma_d(&self) -> Result<bool> {
        for w in self.terms.keys() {
            let (prefix, _) = w.split_shape()?;
            if prefix.0.iter().any(|l| !matches!(l, Letter::Sigma | Letter::D)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(w, c)| (w.to_string(), rational::to_string(c)))
            .collect()
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*{w}", rational::to_string(c))?;
        }
        Ok(())
    }
}

fn sigma() -> NCWord {
    NCWord::new(&[Letter::Sigma])
}

fn ed(i: usize) -> NCWord {
    NCWord::e_d_power(i)
}

/// One application of the transform
/// `E D^i -> sigma D^{i+2} E/((i+1)(i+2)) - sigma D E D^{i+1}/(i+1) + sigma E D^{i+2}/(i+2)`.
pub fn nu_step(p: &NCPoly) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let (prefix, i) = w.split_shape()?;
        let i1 = i as i64 + 1;
        let i2 = i as i64 + 2;
        let head = prefix.concat(&sigma());
        out.add_term(
            head.concat(&NCWord::d_power(i + 2)).concat(&ed(0)),
            c * rat(1, i1 * i2),
        );
        out.add_term(head.concat(&NCWord::d_power(1)).concat(&ed(i + 1)), c * rat(-1, i1));
        out.add_term(head.concat(&ed(i + 2)), c * rat(1, i2));
    }
    Ok(out)
}

/// The lambda-twisted transform used for Sheffer sequences.
pub fn nu_bar_step(p: &NCPoly) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    let twist = NCWord::new(&[Letter::Sigma, Letter::LambdaInv, Letter::D, Letter::Lambda]);
    for (w, c) in p.terms() {
        let (prefix, i) = w.split_shape()?;
        let i1 = i as i64 + 1;
        let i2 = i as i64 + 2;
        let twisted = prefix.concat(&twist);
        let plain = prefix.concat(&sigma());
        out.add_term(twisted.concat(&NCWord::d_power(i + 1)).concat(&ed(0)), c * rat(1, i1));
        out.add_term(plain.concat(&NCWord::d_power(i + 2)).concat(&ed(0)), c * rat(-1, i2));
        out.add_term(twisted.concat(&ed(i + 1)), c * rat(-1, i1));
        out.add_term(plain.concat(&ed(i + 2)), c * rat(1, i2));
    }
    Ok(out)
}

pub fn nu_power(n: usize) -> Result<NCPoly> {
    let mut p = NCPoly::e();
    for _ in 0..n {
        p = nu_step(&p)?;
    }
    Ok(p)
}

pub fn nu_bar_power(n: usize) -> Result<NCPoly> {
    let mut p = NCPoly::e();
    for _ in 0..n {
        p = nu_bar_step(&p)?;
    }
    Ok(p)
}

/// Row `[alpha_0, .., alpha_k]` times the transfer matrix: row `i` sends
/// `sigma D^{i+2}/((i+1)(i+2))` to column 0, `-sigma D/(i+1)` to column `i+1`
/// and `sigma/(i+2)` to column `i+2`.
pub fn matrix_step(row: &[NCPoly]) -> Vec<NCPoly> {
    let mut out = vec![NCPoly::zero(); row.len() + 2];
    for (i, a) in row.iter().enumerate() {
        let i1 = i as i64 + 1;
        let i2 = i as i64 + 2;
        let col0 = NCPoly::word(sigma().concat(&NCWord::d_power(i + 2)), rat(1, i1 * i2));
        let mid = NCPoly::word(NCWord::new(&[Letter::Sigma, Letter::D]), rat(-1, i1));
        let last = NCPoly::word(sigma(), rat(1, i2));
        out[0] = out[0].add(&a.mul(&col0));
        out[i + 1] = out[i + 1].add(&a.mul(&mid));
        out[i + 2] = out[i + 2].add(&a.mul(&last));
    }
    out
}

/// The matrix scheme started from the row `[1]`, reassembled as a polynomial.
pub fn matrix_power(n: usize) -> NCPoly {
    let mut row = vec![NCPoly::word(NCWord::default(), Rational::one())];
    for _ in 0..n {
        row = matrix_step(&row);
    }
    let mut out = NCPoly::zero();
    for (i, a) in row.iter().enumerate() {
        out = out.add(&a.mul(&NCPoly::word(ed(i), Rational::one())));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    Nu,
    Matrix,
}

/// The `alpha_0` coefficient of `nu^n E`: the word form of `T_n`.
pub fn tn_words(n: usize, route: Route) -> Result<NCPoly> {
    let p = match route {
        Route::Nu => nu_power(n)?,
        Route::Matrix => matrix_power(n),
    };
    p.alpha(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn w(l: &[Letter]) -> NCWord {
        NCWord::new(l)
    }

    #[test]
    fn first_step() {
        let p1 = nu_step(&NCPoly::e()).unwrap();
        let mut expect = NCPoly::zero();
        expect.add_term(w(&[Sigma, D, D, E]), rat(1, 2));
        expect.add_term(w(&[Sigma, D, E, D]), rat(-1, 1));
        expect.add_term(w(&[Sigma, E, D, D]), rat(1, 2));
        assert_eq!(p1, expect);
        assert_eq!(nu_step(&NCPoly::zero()).unwrap(), NCPoly::zero());
    }

    #[test]
    fn second_alpha_zero() {
        let t2 = tn_words(2, Route::Nu).unwrap();
        let mut expect = NCPoly::zero();
        expect.add_term(w(&[Sigma, D, D, Sigma, D, D]), rat(1, 4));
        expect.add_term(w(&[Sigma, D, Sigma, D, D, D]), rat(-1, 6));
        expect.add_term(w(&[Sigma, Sigma, D, D, D, D]), rat(1, 24));
        assert_eq!(t2, expect);
    }

    #[test]
    fn matrix_agrees_with_nu() {
        for n in 0..=5 {
            assert_eq!(matrix_power(n), nu_power(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn bar_transform() {
        let b1 = nu_bar_step(&NCPoly::e()).unwrap();
        let mut expect = NCPoly::zero();
        expect.add_term(w(&[Sigma, LambdaInv, D, Lambda, D, E]), rat(1, 1));
        expect.add_term(w(&[Sigma, D, D, E]), rat(-1, 2));
        expect.add_term(w(&[Sigma, LambdaInv, D, Lambda, E, D]), rat(-1, 1));
        expect.add_term(w(&[Sigma, E, D, D]), rat(1, 2));
        assert_eq!(b1, expect);
        for n in 0..=4 {
            assert_eq!(nu_bar_power(n).unwrap().erase_lambda(), nu_power(n).unwrap());
        }
    }

    #[test]
    fn malformed_shapes_rejected() {
        let bad = NCPoly::word(w(&[Sigma, D]), rat(1, 1));
        assert!(matches!(nu_step(&bad), Err(Error::MalformedShape(_))));
        let bad2 = NCPoly::word(w(&[E, Sigma]), rat(1, 1));
        assert!(nu_step(&bad2).is_err());
    }
}
