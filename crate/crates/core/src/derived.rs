//! Derived exterior and tensor powers, and homology-level comparisons.
//!
//! `λ̃^k(P) = N Λ^k K P`, computed through level `k · len(P) + 1` and
//! truncated to `[0, k · len(P)]`, where it is guaranteed to live.

use crate::complex::{tot_tensor, ChainComplex};
use crate::error::{Error, Result};
use crate::homology::{default_cutoff, euler_char, homology, HomologyData, HomologyOptions};
use crate::linalg::Matrix;
use crate::module::{FPModule, FreeMap, FreeModule};
use crate::rational::PositiveRational;
use crate::resolution::resolve;
use crate::simplicial::{normalize, ExteriorPower, KConstruction, Tensor};
use crate::subsets::{binomial, subsets};

fn length_of(p: &ChainComplex) -> usize {
    p.top().unwrap_or(0)
}

/// `N Λ^k K P` for a complex of free modules, truncated to `[0, k · len(P)]`.
/// Negative `k` gives the zero complex and `k = 0` the ring in degree 0.
pub fn derived_exterior(k: i64, p: &ChainComplex) -> Result<ChainComplex> {
    let ring = p.ring();
    if k < 0 {
        return Ok(ChainComplex::zero(ring));
    }
    if k == 0 {
        return Ok(ChainComplex::concentrated(&FreeModule::new(ring, 1)));
    }
    let k = k as usize;
    let amplitude = k * length_of(p);
    let levels = amplitude + 1;
    let n = normalize(&ExteriorPower::new(k, KConstruction::new(p, levels)))?;
    debug_assert!(n.term(levels).is_zero(), "normalized complex must vanish above the amplitude");
    Ok(n.truncate(amplitude).trimmed())
}

/// `λ̃^k(M)` using the resolution from [`resolve`].
pub fn derived_exterior_module(k: i64, m: &FPModule) -> Result<ChainComplex> {
    let p = resolve(m)?;
    derived_exterior(k, p.complex())
}

/// `P ⊗ Q` for resolutions `P`, `Q`; its homology is `Tor`.
pub fn derived_tensor(p: &ChainComplex, q: &ChainComplex) -> Result<ChainComplex> {
    tot_tensor(p, q)
}

pub fn derived_tensor_modules(m: &FPModule, n: &FPModule) -> Result<ChainComplex> {
    derived_tensor(resolve(m)?.complex(), resolve(n)?.complex())
}

/// `χ(λ̃^k P)`.
pub fn chi_derived_exterior(k: i64, p: &ChainComplex, opts: &HomologyOptions) -> Result<PositiveRational> {
    euler_char(&derived_exterior(k, p)?, opts)
}

/// Homology of two complexes with a shared graded cutoff, so that Hilbert
/// functions are comparable.
pub fn homology_pair(a: &ChainComplex, b: &ChainComplex, opts: &HomologyOptions) -> Result<(HomologyData, HomologyData)> {
    let mut opts = opts.clone();
    if a.ring().is_graded() && opts.cutoff.is_none() {
        opts.cutoff = Some(default_cutoff(a).max(default_cutoff(b)));
    }
    let opts = opts.lenient();
    Ok((homology(a, &opts)?, homology(b, &opts)?))
}

/// One homological degree of a comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

/// Degree-by-degree comparison of two homology computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub degrees: Vec<DegreeComparison>,
    pub equal: bool,
}

impl ComparisonReport {
    fn from_homology(a: &HomologyData, b: &HomologyData, through: Option<usize>) -> ComparisonReport {
        let n = through.map_or(a.len().max(b.len()), |t| t + 1);
        let degrees: Vec<DegreeComparison> = (0..n)
            .map(|d| DegreeComparison {
                degree: d,
                left: a.degree(d).to_string(),
                right: b.degree(d).to_string(),
                equal: a.degree(d) == b.degree(d),
            })
            .collect();
        let equal = degrees.iter().all(|d| d.equal);
        ComparisonReport { degrees, equal }
    }
}

/// Compares the homology of `λ̃^k` computed from two resolutions.
pub fn independence_report(k: i64, p: &ChainComplex, q: &ChainComplex, opts: &HomologyOptions) -> Result<ComparisonReport> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch("resolutions over different rings".into()));
    }
    let (a, b) = homology_pair(&derived_exterior(k, p)?, &derived_exterior(k, q)?, opts)?;
    Ok(ComparisonReport::from_homology(&a, &b, None))
}

/// Compares `N(K P ⊗_s K Q)` with `P ⊗ Q` through homological degree `lmax`.
pub fn ez_homology_compare(p: &ChainComplex, q: &ChainComplex, lmax: usize, opts: &HomologyOptions) -> Result<ComparisonReport> {
    let through = lmax.min(length_of(p) + length_of(q));
    // H_n of the normalization needs levels n and n + 1
    let levels = through + 1;
    let t = Tensor::new(KConstruction::new(p, levels), KConstruction::new(q, levels))?;
    let (a, b) = homology_pair(&normalize(&t)?, &tot_tensor(p, q)?, opts)?;
    Ok(ComparisonReport::from_homology(&a, &b, Some(through)))
}

/// Result of checking that `λ̃^k` of an acyclic complex is acyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub k: i64,
    pub acyclic: bool,
    /// Homological degrees with nonzero homology.
    pub nonzero_degrees: Vec<usize>,
}

/// For an acyclic complex of free modules `R`, checks that `N Λ^k K R` has
/// no homology in any degree.
pub fn acyclic_exterior_check(k: i64, r: &ChainComplex, opts: &HomologyOptions) -> Result<AcyclicityReport> {
    let lenient = opts.clone().lenient();
    if !homology(r, &lenient)?.is_acyclic() {
        return Err(Error::InvalidParameter("input complex is not acyclic".into()));
    }
    let h = homology(&derived_exterior(k, r)?, &lenient)?;
    let nonzero_degrees: Vec<usize> = (0..h.len()).filter(|&n| !h.degree(n).is_zero()).collect();
    Ok(AcyclicityReport { k, acyclic: nonzero_degrees.is_empty(), nonzero_degrees })
}

/// The filtration `G_0 ⊆ … ⊆ G_r = Λ^r(E_1 ⊕ E_3)` where `G_i` is spanned
/// by wedges with at least `r - i` factors from `E_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub r: usize,
    pub e2_rank: usize,
    pub g_ranks: Vec<usize>,
    /// Rank of `G_i / G_{i-1}`.
    pub quotient_ranks: Vec<usize>,
    /// Rank of `Λ^{r-i} E_1 ⊗ Λ^i E_3`.
    pub expected_ranks: Vec<usize>,
    /// Quotient bases match tensor bases, generator degrees included.
    pub basis_match: bool,
    /// A unipotent automorphism fixing `E_1` preserves each `G_i` and acts as
    /// the identity on every quotient.
    pub functorial: bool,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        let total: usize = self.quotient_ranks.iter().sum();
        self.basis_match
            && self.functorial
            && self.quotient_ranks == self.expected_ranks
            && self.g_ranks.last() == Some(&total)
            && total == binomial(self.e2_rank, self.r)
    }
}

pub fn ses_exterior_filtration(r: usize, e1: &FreeModule, e3: &FreeModule) -> Result<FiltrationReport> {
    let ring = e1.ring();
    if ring != e3.ring() {
        return Err(Error::RingMismatch("filtration data over different rings".into()));
    }
    let (a, b) = (e1.rank(), e3.rank());
    let e2 = e1.direct_sum(e3);
    let wedges = subsets(a + b, r);
    let e1_factors = |s: &[usize]| s.iter().filter(|&&x| x < a).count();
    // layer i: wedges with exactly r - i factors from E_1
    let layer = |i: usize| -> Vec<usize> {
        (0..wedges.len()).filter(|&w| r >= i && e1_factors(&wedges[w]) == r - i).collect()
    };
    let quotient_ranks: Vec<usize> = (0..=r).map(|i| layer(i).len()).collect();
    let expected_ranks: Vec<usize> = (0..=r).map(|i| binomial(a, r - i) * binomial(b, i)).collect();
    let g_ranks: Vec<usize> = (0..=r).map(|i| quotient_ranks[..=i].iter().sum()).collect();

    let lambda2 = e2.exterior_power(r);
    let mut basis_match = true;
    for i in 0..=r {
        let left = e1.exterior_power(r - i);
        let right = e3.exterior_power(i);
        let tensor = left.tensor(&right);
        let expected: Vec<(Vec<usize>, Vec<usize>)> = subsets(a, r - i)
            .into_iter()
            .flat_map(|s| subsets(b, i).into_iter().map(move |t| (s.clone(), t)))
            .collect();
        let ours: Vec<(Vec<usize>, Vec<usize>)> = layer(i)
            .into_iter()
            .map(|w| {
                let s = &wedges[w];
                (s.iter().copied().filter(|&x| x < a).collect(), s.iter().filter(|&&x| x >= a).map(|x| x - a).collect())
            })
            .collect();
        if ours != expected {
            basis_match = false;
            continue;
        }
        for (pos, w) in layer(i).into_iter().enumerate() {
            if lambda2.degree(w) != tensor.degree(pos) {
                basis_match = false;
            }
        }
    }

    // unipotent automorphism [[I, B], [0, I]] with B as nonzero as degrees allow
    let mut m = Matrix::identity(ring, a + b);
    for i in 0..a {
        for j in 0..b {
            if let Some(c) = connecting_entry(ring, e3.degree(j) - e1.degree(i)) {
                m.set(i, a + j, c);
            }
        }
    }
    let phi = FreeMap::new(e2.clone(), e2, m)?.exterior_power(r);
    let rank_of: Vec<usize> = (0..wedges.len()).map(|w| r - e1_factors(&wedges[w])).collect();
    let mut functorial = true;
    for col in 0..wedges.len() {
        for row in 0..wedges.len() {
            let c = phi.matrix().get(row, col);
            if ring.is_zero(c) {
                continue;
            }
            // must stay in G_{rank_of(col)} and be the identity on the quotient
            if rank_of[row] > rank_of[col] || (rank_of[row] == rank_of[col] && (row != col || !ring.is_one(c))) {
                functorial = false;
            }
        }
        if !ring.is_one(phi.matrix().get(col, col)) {
            functorial = false;
        }
    }
    Ok(FiltrationReport { r, e2_rank: a + b, g_ranks, quotient_ranks, expected_ranks, basis_match, functorial })
}

/// A nonzero homogeneous element of degree `d`, when one exists.
fn connecting_entry(ring: &crate::ring::Ring, d: i64) -> Option<crate::ring::Elem> {
    if !ring.is_graded() {
        return Some(ring.one());
    }
    match d {
        0 => Some(ring.one()),
        d if d > 0 && ring.vars() > 0 => Some(ring.pow(&ring.generator(0), d as u32)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul_complex;
    use crate::resolution::free_resolution_z;
    use crate::ring::Ring;

    fn q(a: i64, b: i64) -> PositiveRational {
        PositiveRational::new(a, b).unwrap()
    }

    fn torsion(orders: &[i64]) -> ChainComplex {
        free_resolution_z(&FPModule::integer_torsion(orders)).unwrap().complex().clone()
    }

    #[test]
    fn free_and_degenerate_cases() {
        let z = Ring::integers();
        let p = ChainComplex::concentrated(&FreeModule::new(&z, 2));
        let l2 = derived_exterior(2, &p).unwrap();
        assert_eq!(l2.len(), 1);
        assert_eq!(l2.rank(0), 1);
        assert!(derived_exterior(-1, &p).unwrap().terms().iter().all(FreeModule::is_zero));
        assert_eq!(derived_exterior(0, &p).unwrap().rank(0), 1);
        assert_eq!(derived_exterior(3, &p).unwrap().top(), None);
    }

    #[test]
    fn cyclic_groups() {
        let opts = HomologyOptions::default();
        for n in [2, 3, 4, 6] {
            let p = torsion(&[n]);
            assert_eq!(chi_derived_exterior(2, &p, &opts).unwrap(), q(1, n));
            assert_eq!(chi_derived_exterior(3, &p, &opts).unwrap(), q(n, 1));
            assert_eq!(chi_derived_exterior(1, &p, &opts).unwrap(), q(n, 1));
        }
    }

    #[test]
    fn residue_field_and_maximal_ideal() {
        let b = Ring::graded(3, 2).unwrap();
        let (x, y) = (b.generator(0), b.generator(1));
        let k = koszul_complex(&b, &[x.clone(), y.clone()]).unwrap();
        // m has resolution 0 -> B(-2) --(y, -x)--> B(-1)^2
        let m = ChainComplex::from_terms_and_matrices(
            &b,
            vec![FreeModule::graded(&b, vec![1, 1]).unwrap(), FreeModule::graded(&b, vec![2]).unwrap()],
            vec![Matrix::from_rows(&b, vec![vec![y.clone()], vec![b.neg(&x)]]).unwrap()],
        )
        .unwrap();
        let opts = HomologyOptions::default();
        let l2m = derived_exterior(2, &m).unwrap();
        let h = homology(&l2m, &opts).unwrap();
        assert_eq!(h.top_nonzero(), Some(0));
        assert_eq!(h.degree(0).order(), Some(3.into()));
        assert_eq!(euler_char(&l2m, &opts).unwrap(), q(3, 1));
        assert_eq!(chi_derived_exterior(2, &k, &opts).unwrap(), q(1, 9));
        assert_eq!(chi_derived_exterior(3, &m, &opts).unwrap(), q(1, 3));
    }

    #[test]
    fn tensor_examples() {
        let opts = HomologyOptions::default();
        let t = derived_tensor(&torsion(&[2]), &torsion(&[3])).unwrap();
        assert!(homology(&t, &opts).unwrap().is_acyclic());
        let b = Ring::graded(2, 2).unwrap();
        let k = koszul_complex(&b, &[b.generator(0), b.generator(1)]).unwrap();
        let kk = derived_tensor(&k, &k).unwrap();
        let h = homology(&kk, &opts).unwrap();
        let lengths: Vec<_> = (0..3).map(|n| h.degree(n).order()).collect();
        assert_eq!(lengths, vec![Some(2.into()), Some(4.into()), Some(2.into())]);
        assert_eq!(euler_char(&kk, &opts).unwrap(), q(1, 1));
    }

    #[test]
    fn independence_and_acyclicity() {
        let z = Ring::integers();
        let p = torsion(&[6]);
        let padded = p.direct_sum(&ChainComplex::identity_pair(&FreeModule::new(&z, 1), 1));
        let opts = HomologyOptions::default();
        assert!(independence_report(2, &p, &padded, &opts).unwrap().equal);
        let r = ChainComplex::identity_pair(&FreeModule::new(&z, 1), 1);
        assert!(acyclic_exterior_check(2, &r, &opts).unwrap().acyclic);
        assert!(acyclic_exterior_check(2, &p, &opts).is_err());
    }

    #[test]
    fn eilenberg_zilber_examples() {
        let opts = HomologyOptions::default();
        let two = torsion(&[2]);
        let rep = ez_homology_compare(&two, &two, 3, &opts).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.degrees[1].left, "Z/2");
        assert!(ez_homology_compare(&two, &torsion(&[3]), 3, &opts).unwrap().equal);
    }

    #[test]
    fn filtration_examples() {
        let z = Ring::integers();
        let rep = ses_exterior_filtration(2, &FreeModule::new(&z, 1), &FreeModule::new(&z, 2)).unwrap();
        assert_eq!(rep.quotient_ranks, vec![0, 2, 1]);
        assert!(rep.passed());
        let b = Ring::graded(2, 2).unwrap();
        let e1 = FreeModule::graded(&b, vec![1, 1]).unwrap();
        let e3 = FreeModule::graded(&b, vec![1]).unwrap();
        let rep = ses_exterior_filtration(2, &e1, &e3).unwrap();
        assert_eq!(rep.quotient_ranks, vec![1, 2, 0]);
        assert!(rep.passed());
    }
}
