//! Polynomial representations: dense univariate integer polynomials and sparse
//! multivariate polynomials over a prime field, plus a small shared parser.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// Trailing zero coefficients are never stored, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Parses a polynomial in the variable `x`, e.g. `x^3 - x - 1`.
    pub fn parse(s: &str) -> Result<IntPoly> {
        let terms = parse_terms(s, &["x"])?;
        let mut coeffs = Vec::new();
        for (exps, c) in terms {
            let e = exps[0] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, &monomial_text(&[i as u32], &["x"]), first)?;
            first = false;
        }
        Ok(())
    }
}

/// Exponent vector of a monomial. The derived ordering is lexicographic on
/// exponents, so `x^2 > x*y > y^2` in two variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// All monomials of total degree `d` in `vars` variables, in descending
/// lexicographic order (`x^d` first).
pub fn monomials_of_degree(vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(vars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == vars {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(vars, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(vars, d, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Number of monomials of degree `d` in `vars` variables.
pub fn monomial_count(vars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if vars == 0 {
        return usize::from(d == 0);
    }
    crate::subsets::binomial(d as usize + vars - 1, vars - 1)
}

/// Sparse polynomial over a prime field. Terms are sorted by descending
/// monomial and carry nonzero coefficients in `[1, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u64)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u64, vars: usize) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(Monomial::one(vars), c)] }
        }
    }

    pub fn monomial(m: Monomial, c: u64) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a canonical polynomial from arbitrary terms, reducing modulo `p`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, u64)>, p: u64) -> Self {
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = (*e + c % p) % p;
        }
        Poly {
            terms: acc.into_iter().rev().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` if every term has total degree `d`; `None` for mixed
    /// degrees and for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map_or(0, |(_, c)| *c)
    }

    pub(crate) fn add(&self, other: &Poly, p: u64) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = (a.1 + b.1) % p;
                    if c != 0 {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub(crate) fn neg(&self, p: u64) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), p - c)).collect(),
        }
    }

    /// The coefficient of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.degree() == 0 => Some(*c),
            _ => None,
        }
    }

    pub(crate) fn scale(&self, s: u64, p: u64) -> Poly {
        let s = s % p;
        if s == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * s % p))
                .collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Poly, p: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (m, a) = &self.terms[0];
            let (n, b) = &other.terms[0];
            return Poly::monomial(m.mul(n), a * b % p);
        }
        Poly::from_terms(
            self.terms.iter().flat_map(|(m, a)| {
                other.terms.iter().map(move |(n, b)| (m.mul(n), a * b % p))
            }),
            p,
        )
    }

    /// Parses a polynomial in the given variable names with coefficients
    /// reduced modulo `p`.
    pub fn parse(s: &str, var_names: &[&str], p: u64) -> Result<Poly> {
        let terms = parse_terms(s, var_names)?;
        let pb = BigInt::from(p);
        Ok(Poly::from_terms(
            terms.into_iter().map(|(e, c)| {
                let r = ((c % &pb) + &pb) % &pb;
                (Monomial(e), r.to_u64().expect("reduced coefficient fits"))
            }),
            p,
        ))
    }

    pub fn display(&self, var_names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let _ = write_term_to(&mut s, &BigInt::from(*c), &monomial_text(&m.0, var_names), i == 0);
        }
        s
    }
}

/// Default variable names for `vars` variables: `x, y` for two, otherwise
/// `x1..xv`. A single variable is named `x`.
pub fn default_var_names(vars: usize) -> Vec<String> {
    match vars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=vars).map(|i| format!("x{i}")).collect(),
    }
}

fn monomial_text(exps: &[u32], names: &[&str]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    parts.join("*")
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &BigInt, mono: &str, first: bool) -> fmt::Result {
    let mut buf = String::new();
    write_term_to(&mut buf, c, mono, first)?;
    f.write_str(&buf)
}

fn write_term_to(buf: &mut String, c: &BigInt, mono: &str, first: bool) -> fmt::Result {
    use std::fmt::Write;
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            buf.push('-');
        }
    } else {
        buf.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        write!(buf, "{a}")
    } else if a.is_one() {
        write!(buf, "{mono}")
    } else {
        write!(buf, "{a}*{mono}")
    }
}

/// Parses `sum of [coef] [*] var[^e] [*] var[^e] ...` into exponent vectors
/// with integer coefficients. Juxtaposition (`2x`, `xy`) is accepted where
/// unambiguous.
pub(crate) fn parse_terms(s: &str, var_names: &[&str]) -> Result<Vec<(Vec<u32>, BigInt)>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse(format!("empty polynomial in {s:?}")));
    }
    let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < chars.len() {
        let mut sign = BigInt::one();
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        }
        if pos >= chars.len() {
            return Err(err("dangling sign"));
        }
        let mut coef = BigInt::one();
        let mut exps = vec![0u32; var_names.len()];
        loop {
            if pos < chars.len() && chars[pos].is_ascii_digit() {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: String = chars[start..pos].iter().collect();
                coef *= n.parse::<BigInt>().map_err(|_| err("bad integer"))?;
            } else if pos < chars.len() && chars[pos].is_ascii_alphabetic() {
                // Longest variable name match.
                let rest: String = chars[pos..].iter().collect();
                let (vi, name) = var_names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(**n))
                    .max_by_key(|(_, n)| n.len())
                    .ok_or_else(|| err("unknown variable"))?;
                pos += name.chars().count();
                let mut e = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(err("missing exponent"));
                    }
                    let n: String = chars[start..pos].iter().collect();
                    e = n.parse().map_err(|_| err("bad exponent"))?;
                }
                exps[vi] += e;
            } else {
                return Err(err("unexpected character"));
            }
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            if pos < chars.len() && (chars[pos].is_ascii_alphabetic()) {
                continue;
            }
            break;
        }
        out.push((exps, sign * coef));
        if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            return Err(err("unexpected character"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_univariate() {
        let f = IntPoly::parse("x^2 - x - 1").unwrap();
        assert_eq!(f, IntPoly::from_i64s(&[-1, -1, 1]));
        assert_eq!(f.to_string(), "x^2 - x - 1");
        assert_eq!(IntPoly::parse("2x+3").unwrap(), IntPoly::from_i64s(&[3, 2]));
        assert_eq!(IntPoly::parse("x^3-x-1").unwrap().derivative(), IntPoly::from_i64s(&[-1, 0, 3]));
        assert!(IntPoly::parse("x^").is_err());
        assert!(IntPoly::parse("q").is_err());
    }

    #[test]
    fn parse_bivariate_mod_p() {
        let f = Poly::parse("x^2 + x*y - 3y^2", &["x", "y"], 5).unwrap();
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.coeff(&Monomial(vec![0, 2])), 2);
        assert_eq!(f.homogeneous_degree(), Some(2));
        assert_eq!(f.display(&["x", "y"]), "x^2 + x*y + 2*y^2");
        let g = Poly::parse("x + 1", &["x", "y"], 5).unwrap();
        assert_eq!(g.homogeneous_degree(), None);
    }

    #[test]
    fn monomials_are_lex_descending() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(m, vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])]);
        assert_eq!(monomials_of_degree(3, 2).len(), monomial_count(3, 2));
        assert_eq!(monomial_count(2, -1), 0);
    }
}
