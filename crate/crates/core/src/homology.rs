//! Homology of chain complexes and the multiplicative Euler characteristic.
//!
//! Over the integers and monogenic orders homology is described by invariant
//! factors; over prime fields by dimensions; over graded rings by Hilbert
//! functions computed degree by degree up to a cutoff.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, CokernelInvariants, FpMatrix};
use crate::poly::monomial_count;
use crate::rational::PositiveRational;
use crate::ring::Elem;

/// Cutoff and stabilization window for graded homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    /// Highest internal degree examined; `None` selects the default.
    pub cutoff: Option<i64>,
    /// Number of trailing zero degrees required to certify finite length.
    pub window: Option<usize>,
    /// Fail with `GradedCutoffExceeded` when a group is not certified finite.
    pub require_finite: bool,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { cutoff: None, window: None, require_finite: true }
    }
}

impl HomologyOptions {
    pub fn with_cutoff(cutoff: Option<i64>) -> Self {
        HomologyOptions { cutoff, ..Default::default() }
    }

    /// Records groups without a finite-length certificate instead of failing.
    pub fn lenient(mut self) -> Self {
        self.require_finite = false;
        self
    }
}

/// Hilbert function of a graded homology group, trimmed to its support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedHomology {
    /// Internal degree of `hilbert[0]`.
    pub start: i64,
    pub hilbert: Vec<usize>,
    /// Whether the function vanished on the whole trailing window.
    pub finite: bool,
}

impl GradedHomology {
    pub fn zero() -> Self {
        GradedHomology { start: 0, hilbert: Vec::new(), finite: true }
    }

    /// Total length, if certified finite.
    pub fn length(&self) -> Option<usize> {
        self.finite.then(|| self.hilbert.iter().sum())
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn at(&self, d: i64) -> usize {
        let i = d - self.start;
        if i < 0 {
            0
        } else {
            self.hilbert.get(i as usize).copied().unwrap_or(0)
        }
    }
}

/// Isomorphism invariants of one homology group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupInvariants {
    /// Finitely generated abelian group (integers, monogenic orders).
    Abelian(CokernelInvariants),
    /// Vector space over `F_p`.
    Vector { p: u64, dim: usize },
    /// Graded module over `F_p[x_1..x_ν]`.
    Graded { p: u64, data: GradedHomology },
}

impl GroupInvariants {
    pub fn is_zero(&self) -> bool {
        match self {
            GroupInvariants::Abelian(c) => c.is_zero(),
            GroupInvariants::Vector { dim, .. } => *dim == 0,
            GroupInvariants::Graded { data, .. } => data.hilbert.is_empty(),
        }
    }

    /// Group order, `None` when infinite or not certified finite.
    pub fn order(&self) -> Option<BigInt> {
        match self {
            GroupInvariants::Abelian(c) => c.order(),
            GroupInvariants::Vector { p, dim } => Some(BigInt::from(*p).pow(*dim as u32)),
            GroupInvariants::Graded { p, data } => data.length().map(|l| BigInt::from(*p).pow(l as u32)),
        }
    }
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupInvariants::Abelian(c) => {
                let mut parts: Vec<String> = c.torsion.iter().map(|t| format!("Z/{t}")).collect();
                if c.free_rank > 0 {
                    parts.push(if c.free_rank == 1 { "Z".into() } else { format!("Z^{}", c.free_rank) });
                }
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
            GroupInvariants::Vector { p, dim } => write!(f, "GF({p})^{dim}"),
            GroupInvariants::Graded { data, .. } => {
                if data.hilbert.is_empty() {
                    return write!(f, "0");
                }
                let h: Vec<String> = data.hilbert.iter().map(usize::to_string).collect();
                write!(f, "hilbert from degree {}: [{}]", data.start, h.join(" "))?;
                if !data.finite {
                    write!(f, " (not certified finite)")?;
                }
                Ok(())
            }
        }
    }
}

/// Homology invariants by homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyData {
    groups: Vec<GroupInvariants>,
    zero: GroupInvariants,
}

impl HomologyData {
    /// Invariants of `H_n`; zero beyond the computed range.
    pub fn degree(&self, n: usize) -> &GroupInvariants {
        self.groups.get(n).unwrap_or(&self.zero)
    }

    pub fn groups(&self) -> &[GroupInvariants] {
        &self.groups
    }

    /// Number of homological degrees stored.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(GroupInvariants::is_zero)
    }

    /// Highest degree with nonzero homology.
    pub fn top_nonzero(&self) -> Option<usize> {
        self.groups.iter().rposition(|g| !g.is_zero())
    }

    /// Equality degree by degree, treating missing degrees as zero.
    pub fn same_as(&self, other: &HomologyData) -> bool {
        let n = self.len().max(other.len());
        (0..n).all(|i| self.degree(i) == other.degree(i))
    }
}

/// Default graded cutoff: maximal generator degree plus
/// `2 (ν + number of nonzero terms) + 4`.
pub fn default_cutoff(c: &ChainComplex) -> i64 {
    let nonzero = c.terms().iter().filter(|t| !t.is_zero()).count() as i64;
    c.max_generator_degree().unwrap_or(0) + 2 * (c.ring().vars() as i64 + nonzero) + 4
}

pub fn homology(c: &ChainComplex, opts: &HomologyOptions) -> Result<HomologyData> {
    let ring = c.ring();
    match ring.kind_name() {
        "Integers" => Ok(integer_homology(&c.reduce())),
        "MonogenicOrder" => Ok(integer_homology(&c.restrict_scalars()?.reduce())),
        "PrimeField" => Ok(field_homology(&c.reduce())),
        _ => graded_homology(c, opts),
    }
}

fn finish(mut groups: Vec<GroupInvariants>, zero: GroupInvariants) -> HomologyData {
    while groups.last().is_some_and(GroupInvariants::is_zero) {
        groups.pop();
    }
    HomologyData { groups, zero }
}

fn integer_homology(c: &ChainComplex) -> HomologyData {
    let len = c.len();
    // factors[n] = invariant factors of ∂_n
    let factors: Vec<Vec<BigInt>> = (0..=len)
        .map(|n| {
            if n == 0 || n >= len {
                return Vec::new();
            }
            let m = c.diff(n);
            invariant_factors(m.matrix().rows(), m.matrix().cols(), m.matrix().to_bigint_rows())
        })
        .collect();
    let groups = (0..len)
        .map(|n| {
            let rank_out = factors[n].len();
            let rank_in = factors[n + 1].len();
            GroupInvariants::Abelian(CokernelInvariants {
                torsion: factors[n + 1].iter().filter(|f| !f.is_one()).cloned().collect(),
                free_rank: c.rank(n) - rank_out - rank_in,
            })
        })
        .collect();
    finish(groups, GroupInvariants::Abelian(CokernelInvariants { torsion: Vec::new(), free_rank: 0 }))
}

fn fp_of_matrix(p: u64, m: &crate::linalg::Matrix) -> FpMatrix {
    let mut out = FpMatrix::zeros(p, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Elem::Fp(x) = m.get(i, j) {
                out.set(i, j, *x);
            }
        }
    }
    out
}

fn field_homology(c: &ChainComplex) -> HomologyData {
    let p = c.ring().char_p().unwrap();
    let len = c.len();
    let ranks: Vec<usize> = (0..=len)
        .map(|n| if n == 0 || n >= len { 0 } else { fp_of_matrix(p, c.diff(n).matrix()).rank() })
        .collect();
    let groups = (0..len)
        .map(|n| GroupInvariants::Vector { p, dim: c.rank(n) - ranks[n] - ranks[n + 1] })
        .collect();
    finish(groups, GroupInvariants::Vector { p, dim: 0 })
}

fn graded_homology(c: &ChainComplex, opts: &HomologyOptions) -> Result<HomologyData> {
    let ring = c.ring();
    let p = ring.char_p().unwrap();
    let vars = ring.vars();
    let cutoff = opts.cutoff.unwrap_or_else(|| default_cutoff(c));
    let window = opts.window.unwrap_or(vars + 1) as i64;
    if let Some(max) = c.max_generator_degree() {
        if cutoff < max {
            return Err(Error::GradedCutoffExceeded {
                cutoff,
                reason: format!("a generator sits in degree {max}"),
            });
        }
    }
    let r = c.reduce();
    let len = r.len();
    let start = r.min_generator_degree().unwrap_or(0);
    let mut values: Vec<Vec<usize>> = vec![Vec::new(); len];
    for d in start..=cutoff {
        let ranks: Vec<usize> = (0..=len)
            .map(|n| if n == 0 || n >= len { 0 } else { r.diff(n).graded_piece(d).rank() })
            .collect();
        for n in 0..len {
            let dim: usize = r.term(n).degree_vec().iter().map(|&g| monomial_count(vars, d - g)).sum();
            values[n].push(dim - ranks[n] - ranks[n + 1]);
        }
    }
    let mut groups = Vec::with_capacity(len);
    for (n, h) in values.into_iter().enumerate() {
        let tail_start = (cutoff - window + 1).max(start);
        let finite = (tail_start..=cutoff).all(|d| h[(d - start) as usize] == 0);
        if !finite && opts.require_finite {
            return Err(Error::GradedCutoffExceeded {
                cutoff,
                reason: format!("H_{n} is nonzero in the last {window} degrees"),
            });
        }
        groups.push(GroupInvariants::Graded { p, data: trim(start, h, finite) });
    }
    Ok(finish(groups, GroupInvariants::Graded { p, data: GradedHomology::zero() }))
}

fn trim(start: i64, h: Vec<usize>, finite: bool) -> GradedHomology {
    let Some(first) = h.iter().position(|&x| x != 0) else {
        return GradedHomology { start: 0, hilbert: Vec::new(), finite };
    };
    let last = h.iter().rposition(|&x| x != 0).unwrap();
    GradedHomology { start: start + first as i64, hilbert: h[first..=last].to_vec(), finite }
}

/// `∏ |H_n|^{(-1)^n}`.
pub fn euler_char(c: &ChainComplex, opts: &HomologyOptions) -> Result<PositiveRational> {
    let lenient = opts.clone().lenient();
    chi_of_homology(&homology(c, &lenient)?)
}

pub fn chi_of_homology(h: &HomologyData) -> Result<PositiveRational> {
    let mut acc = PositiveRational::one();
    for (n, g) in h.groups().iter().enumerate() {
        let order = g.order().ok_or(Error::InfiniteHomology(n))?;
        let q = PositiveRational::integer(order)?;
        acc = if n % 2 == 0 { acc.mul(&q) } else { acc.div(&q) };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul_complex;
    use crate::linalg::Matrix;
    use crate::ring::Ring;

    fn mult(n: i64) -> ChainComplex {
        let z = Ring::integers();
        ChainComplex::from_matrices(&z, &[1, 1], vec![Matrix::from_i64_rows(&z, &[&[n]])]).unwrap()
    }

    #[test]
    fn multiplication_by_six() {
        let h = homology(&mult(6), &HomologyOptions::default()).unwrap();
        assert_eq!(h.degree(0).to_string(), "Z/6");
        assert!(h.degree(1).is_zero());
        assert_eq!(euler_char(&mult(6), &Default::default()).unwrap().to_string(), "6");
        assert!(homology(&mult(1), &Default::default()).unwrap().is_acyclic());
    }

    #[test]
    fn free_homology_is_infinite() {
        let z = Ring::integers();
        let c = ChainComplex::concentrated(&crate::module::FreeModule::new(&z, 1));
        assert_eq!(euler_char(&c, &Default::default()), Err(Error::InfiniteHomology(0)));
    }

    #[test]
    fn koszul_resolves_residue_field() {
        let b = Ring::graded(3, 2).unwrap();
        let k = koszul_complex(&b, &[b.generator(0), b.generator(1)]).unwrap();
        let h = homology(&k, &Default::default()).unwrap();
        assert_eq!(h.len(), 1);
        let GroupInvariants::Graded { data, .. } = h.degree(0) else { panic!() };
        assert_eq!((data.start, data.hilbert.clone()), (0, vec![1]));
        assert_eq!(euler_char(&k, &Default::default()).unwrap().to_string(), "3");
    }

    #[test]
    fn non_regular_sequence_is_not_finite() {
        let b = Ring::graded(2, 2).unwrap();
        let x = b.generator(0);
        let k = koszul_complex(&b, &[x.clone(), x]).unwrap();
        assert!(matches!(homology(&k, &Default::default()), Err(Error::GradedCutoffExceeded { .. })));
        let h = homology(&k, &HomologyOptions::default().lenient()).unwrap();
        assert!(!h.degree(1).is_zero());
    }

    #[test]
    fn cutoff_below_generators_is_rejected() {
        let b = Ring::graded(2, 2).unwrap();
        let k = koszul_complex(&b, &[b.generator(0), b.generator(1)]).unwrap();
        let opts = HomologyOptions::with_cutoff(Some(1));
        assert!(matches!(homology(&k, &opts), Err(Error::GradedCutoffExceeded { .. })));
    }
}
