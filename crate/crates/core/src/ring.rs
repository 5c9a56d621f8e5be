//! Exact coefficient rings: the integers, prime fields, monogenic orders
//! `Z[x]/(f)` and standard-graded polynomial rings over a prime field.
//!
//! A [`Ring`] is a cheap-to-clone handle that performs all arithmetic on
//! [`Elem`] values. Elements carry no reference to their ring; mixing
//! elements of different rings is a logic error and panics in debug builds.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{default_var_names, IntPoly, Monomial, Poly};

/// The four supported ring kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    PrimeField { p: u64 },
    /// `Z[x]/(f)` for a monic `f` of degree at least one.
    MonogenicOrder { f: IntPoly },
    /// `F_p[x_1..x_vars]` with every variable in degree one.
    GradedPoly { p: u64, vars: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingDescriptor>);

/// Canonical element representation; equal values have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Fp(u64),
    /// Power-basis coordinates, exactly `deg f` of them.
    Order(Vec<BigInt>),
    Poly(Poly),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        match &desc {
            RingDescriptor::Integers => {}
            RingDescriptor::PrimeField { p } => {
                if !is_prime(*p) {
                    return Err(Error::NonPrimeModulus(*p));
                }
            }
            RingDescriptor::MonogenicOrder { f } => {
                if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
                    return Err(Error::NonMonicPolynomial(f.to_string()));
                }
            }
            RingDescriptor::GradedPoly { p, vars } => {
                if !is_prime(*p) {
                    return Err(Error::NonPrimeModulus(*p));
                }
                if *vars == 0 {
                    return Err(Error::NoVariables);
                }
            }
        }
        Ok(Ring(Arc::new(desc)))
    }

    pub fn integers() -> Ring {
        Ring(Arc::new(RingDescriptor::Integers))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        Ring::new(RingDescriptor::PrimeField { p })
    }

    pub fn order(f: IntPoly) -> Result<Ring> {
        Ring::new(RingDescriptor::MonogenicOrder { f })
    }

    pub fn graded(p: u64, vars: usize) -> Result<Ring> {
        Ring::new(RingDescriptor::GradedPoly { p, vars })
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0
    }

    pub fn kind_name(&self) -> &'static str {
        match *self.0 {
            RingDescriptor::Integers => "Integers",
            RingDescriptor::PrimeField { .. } => "PrimeField",
            RingDescriptor::MonogenicOrder { .. } => "MonogenicOrder",
            RingDescriptor::GradedPoly { .. } => "GradedPoly",
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(*self.0, RingDescriptor::Integers)
    }

    pub fn is_graded(&self) -> bool {
        matches!(*self.0, RingDescriptor::GradedPoly { .. })
    }

    /// The prime `p` for prime fields and graded rings.
    pub fn char_p(&self) -> Option<u64> {
        match *self.0 {
            RingDescriptor::PrimeField { p } | RingDescriptor::GradedPoly { p, .. } => Some(p),
            _ => None,
        }
    }

    /// Number of variables of a graded ring, zero otherwise.
    pub fn vars(&self) -> usize {
        match *self.0 {
            RingDescriptor::GradedPoly { vars, .. } => vars,
            _ => 0,
        }
    }

    /// Defining polynomial of a monogenic order.
    pub fn modulus_poly(&self) -> Option<&IntPoly> {
        match &*self.0 {
            RingDescriptor::MonogenicOrder { f } => Some(f),
            _ => None,
        }
    }

    /// Rank of the ring as a Z-module for orders, 1 otherwise.
    pub fn order_degree(&self) -> usize {
        self.modulus_poly().and_then(IntPoly::degree).unwrap_or(1)
    }

    pub fn var_names(&self) -> Vec<String> {
        match *self.0 {
            RingDescriptor::GradedPoly { vars, .. } => default_var_names(vars),
            RingDescriptor::MonogenicOrder { .. } => vec!["x".into()],
            _ => Vec::new(),
        }
    }

    pub(crate) fn expect_kind(&self, expected: &'static str) -> Result<()> {
        if self.kind_name() == expected {
            Ok(())
        } else {
            Err(Error::WrongRingKind { expected, actual: self.kind_name().into() })
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            RingDescriptor::Integers => Elem::Int(BigInt::zero()),
            RingDescriptor::PrimeField { .. } => Elem::Fp(0),
            RingDescriptor::MonogenicOrder { f } => {
                Elem::Order(vec![BigInt::zero(); f.degree().unwrap_or(1)])
            }
            RingDescriptor::GradedPoly { .. } => Elem::Poly(Poly::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            RingDescriptor::Integers => Elem::Int(n.clone()),
            RingDescriptor::PrimeField { p } => Elem::Fp(reduce(n, *p)),
            RingDescriptor::MonogenicOrder { f } => {
                let mut v = vec![BigInt::zero(); f.degree().unwrap_or(1)];
                v[0] = n.clone();
                Elem::Order(v)
            }
            RingDescriptor::GradedPoly { p, vars } => Elem::Poly(Poly::constant(reduce(n, *p), *vars)),
        }
    }

    /// The class of `x` in an order, or the `i`-th variable of a graded ring.
    pub fn generator(&self, i: usize) -> Elem {
        match &*self.0 {
            RingDescriptor::MonogenicOrder { .. } => self.order_from_poly(&IntPoly::from_i64s(&[0, 1])),
            RingDescriptor::GradedPoly { vars, .. } => Elem::Poly(Poly::monomial(Monomial::var(*vars, i), 1)),
            _ => panic!("ring {} has no generators", self.kind_name()),
        }
    }

    /// Reduces an integer polynomial modulo `f` into an order element.
    pub fn order_from_poly(&self, g: &IntPoly) -> Elem {
        let f = self.modulus_poly().expect("order ring");
        Elem::Order(reduce_mod_monic(g.coeffs(), f))
    }

    /// The representative polynomial (degree < deg f) of an order element.
    pub fn order_to_poly(&self, a: &Elem) -> IntPoly {
        match a {
            Elem::Order(v) => IntPoly::new(v.clone()),
            _ => panic!("not an order element"),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(n) => n.is_zero(),
            Elem::Fp(n) => *n == 0,
            Elem::Order(v) => v.iter().all(Zero::is_zero),
            Elem::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % self.char_p().unwrap()),
            (Elem::Order(x), Elem::Order(y)) => Elem::Order(x.iter().zip(y).map(|(s, t)| s + t).collect()),
            (Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(y, self.char_p().unwrap())),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => Elem::Int(-x),
            Elem::Fp(x) => Elem::Fp((self.char_p().unwrap() - x) % self.char_p().unwrap()),
            Elem::Order(x) => Elem::Order(x.iter().map(|s| -s).collect()),
            Elem::Poly(x) => Elem::Poly(x.neg(self.char_p().unwrap())),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(x * y % self.char_p().unwrap()),
            (Elem::Order(x), Elem::Order(y)) => {
                let f = self.modulus_poly().unwrap();
                let mut prod = vec![BigInt::zero(); x.len() + y.len() - 1];
                for (i, s) in x.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    for (j, t) in y.iter().enumerate() {
                        prod[i + j] += s * t;
                    }
                }
                Elem::Order(reduce_mod_monic(&prod, f))
            }
            (Elem::Poly(x), Elem::Poly(y)) => {
                let p = self.char_p().unwrap();
                match (x.constant_value(), y.constant_value()) {
                    (Some(c), _) => Elem::Poly(y.scale(c, p)),
                    (_, Some(c)) => Elem::Poly(x.scale(c, p)),
                    _ => Elem::Poly(x.mul(y, p)),
                }
            }
            _ => panic!("mixed element kinds"),
        }
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, a: &Elem, n: &BigInt) -> Elem {
        self.mul(a, &self.from_bigint(n))
    }

    pub fn pow(&self, a: &Elem, mut e: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.abs().is_one(),
            Elem::Fp(x) => *x != 0,
            Elem::Order(_) => order_norm(self, a).abs().is_one(),
            Elem::Poly(p) => p.terms().len() == 1 && p.terms()[0].0.degree() == 0,
        }
    }

    /// Exact division `a / b` for integers and prime fields: `Some(q)` with
    /// `q * b = a` when `b` is a unit or divides `a` exactly.
    pub fn div_exact(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => {
                if y.is_zero() {
                    return x.is_zero().then(|| Elem::Int(BigInt::zero()));
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Elem::Int(q))
            }
            (Elem::Fp(x), Elem::Fp(y)) => {
                if *y == 0 {
                    return (*x == 0).then_some(Elem::Fp(0));
                }
                let p = self.char_p().unwrap();
                Some(Elem::Fp(x * inv_mod(*y, p) % p))
            }
            _ => None,
        }
    }

    /// Degree of a homogeneous graded element; `None` for zero or
    /// inhomogeneous elements.
    pub fn homogeneous_degree(&self, a: &Elem) -> Option<u32> {
        match a {
            Elem::Poly(p) => p.homogeneous_degree(),
            _ => None,
        }
    }

    /// Parses an element: an integer for Z and F_p, a polynomial in `x` for
    /// orders (reduced modulo `f`), a polynomial in the ring variables for
    /// graded rings.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        match &*self.0 {
            RingDescriptor::Integers | RingDescriptor::PrimeField { .. } => {
                let n: BigInt = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("expected integer, got {s:?}")))?;
                Ok(self.from_bigint(&n))
            }
            RingDescriptor::MonogenicOrder { .. } => Ok(self.order_from_poly(&IntPoly::parse(s)?)),
            RingDescriptor::GradedPoly { p, .. } => {
                let names = self.var_names();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                Ok(Elem::Poly(Poly::parse(s, &refs, *p)?))
            }
        }
    }

    pub fn display(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Fp(x) => x.to_string(),
            Elem::Order(v) => IntPoly::new(v.clone()).to_string(),
            Elem::Poly(p) => {
                let names = self.var_names();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                p.display(&refs)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::PrimeField { p } => write!(f, "GF({p})"),
            RingDescriptor::MonogenicOrder { f: g } => write!(f, "Z[x]/({g})"),
            RingDescriptor::GradedPoly { p, vars } => {
                write!(f, "GF({p})[{}]", default_var_names(*vars).join(","))
            }
        }
    }
}

fn reduce(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `g` modulo the monic `f`, padded to `deg f` coefficients.
fn reduce_mod_monic(g: &[BigInt], f: &IntPoly) -> Vec<BigInt> {
    let n = f.degree().unwrap();
    let fc = f.coeffs();
    let mut r: Vec<BigInt> = g.to_vec();
    if r.len() > n {
        for d in (n..r.len()).rev() {
            let c = std::mem::take(&mut r[d]);
            if c.is_zero() {
                continue;
            }
            for (i, fi) in fc.iter().enumerate().take(n) {
                r[d - n + i] -= &c * fi;
            }
        }
    }
    r.resize(n, BigInt::zero());
    r
}

/// Resultant `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(n), Some(m)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let size = n + m;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    // m shifted copies of f, then n shifted copies of g, highest degree first.
    for i in 0..m {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            rows[m + i][i + j] = c.clone();
        }
    }
    crate::linalg::bareiss_det(rows)
}

/// Norm of an order element `a = g(x)`: the resultant `Res(f, g)`.
pub fn order_norm(ring: &Ring, a: &Elem) -> BigInt {
    let f = ring.modulus_poly().expect("order ring");
    resultant(f, &ring.order_to_poly(a))
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f')`.
pub fn poly_discriminant(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    let r = resultant(f, &f.derivative());
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let r = Ring::prime_field(5).unwrap();
        assert_eq!(r.mul(&r.from_i64(2), &r.from_i64(3)), r.one());
        assert_eq!(r.neg(&r.from_i64(0)), r.zero());
        assert_eq!(r.div_exact(&r.one(), &r.from_i64(2)), Some(r.from_i64(3)));
        assert_eq!(Ring::prime_field(4), Err(Error::NonPrimeModulus(4)));
        assert_eq!(Ring::graded(6, 2), Err(Error::NonPrimeModulus(6)));
    }

    #[test]
    fn gaussian_order() {
        let r = Ring::order(IntPoly::parse("x^2+1").unwrap()).unwrap();
        let x = r.generator(0);
        assert_eq!(r.mul(&x, &x), r.from_i64(-1));
        assert!(matches!(
            Ring::order(IntPoly::parse("2x^2+1").unwrap()),
            Err(Error::NonMonicPolynomial(_))
        ));
        assert!(Ring::order(IntPoly::from_i64s(&[1])).is_err());
    }

    #[test]
    fn integer_division() {
        let z = Ring::integers();
        assert_eq!(z.div_exact(&z.from_i64(6), &z.from_i64(3)), Some(z.from_i64(2)));
        assert_eq!(z.div_exact(&z.from_i64(7), &z.from_i64(3)), None);
    }

    fn sylvester_2x2_oracle(f: [i64; 3], g: [i64; 2]) -> i64 {
        // f = f2 x^2 + f1 x + f0, g = g1 x + g0: the 3x3 Sylvester determinant
        let m = [[f[2], f[1], f[0]], [g[1], g[0], 0], [0, g[1], g[0]]];
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    #[test]
    fn norms_match_hand_sylvester() {
        let f = IntPoly::parse("x^2+1").unwrap();
        let r = Ring::order(f).unwrap();
        // a = x: g = x, Res = 1
        assert_eq!(sylvester_2x2_oracle([1, 0, 1], [1, 0]), 1);
        assert_eq!(order_norm(&r, &r.generator(0)), BigInt::from(1));
        // a = 2x: Res = 4
        assert_eq!(sylvester_2x2_oracle([1, 0, 1], [2, 0]), 4);
        let two_x = r.mul(&r.from_i64(2), &r.generator(0));
        assert_eq!(order_norm(&r, &two_x), BigInt::from(4));
        assert_eq!(order_norm(&r, &r.one()), BigInt::from(1));
    }

    #[test]
    fn discriminants() {
        // x^2+1: Sylvester(f, 2x) = 4, sign (-1)^1
        assert_eq!(sylvester_2x2_oracle([1, 0, 1], [2, 0]), 4);
        assert_eq!(poly_discriminant(&IntPoly::parse("x^2+1").unwrap()), BigInt::from(-4));
        // x^2-x-1: Sylvester(f, 2x-1) = -5
        assert_eq!(sylvester_2x2_oracle([1, -1, -1], [2, -1]), -5);
        assert_eq!(poly_discriminant(&IntPoly::parse("x^2-x-1").unwrap()), BigInt::from(5));
        assert_eq!(poly_discriminant(&IntPoly::parse("x").unwrap()), BigInt::from(1));
        assert_eq!(poly_discriminant(&IntPoly::parse("x^3-x-1").unwrap()), BigInt::from(-23));
    }
}
