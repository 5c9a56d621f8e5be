//! Free modules, maps between them, and finitely presented modules.

use crate::error::{Error, Result};
use crate::linalg::{degree_piece, FpMatrix, Matrix};
use crate::ring::{Elem, Ring};
use crate::subsets::{subset_rank, subsets, wedge_expand};

/// A free module of finite rank. Over a graded ring every generator carries
/// an internal degree; `B(-1)` is a generator of degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    ring: Ring,
    rank: usize,
    degrees: Option<Vec<i64>>,
}

impl FreeModule {
    /// Free module of the given rank; over a graded ring all generators sit
    /// in degree zero.
    pub fn new(ring: &Ring, rank: usize) -> FreeModule {
        let degrees = ring.is_graded().then(|| vec![0; rank]);
        FreeModule { ring: ring.clone(), rank, degrees }
    }

    pub fn graded(ring: &Ring, degrees: Vec<i64>) -> Result<FreeModule> {
        ring.expect_kind("GradedPoly")?;
        Ok(FreeModule { ring: ring.clone(), rank: degrees.len(), degrees: Some(degrees) })
    }

    pub fn zero(ring: &Ring) -> FreeModule {
        FreeModule::new(ring, 0)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// Generator degrees (graded rings only).
    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    /// Degree of generator `i`; zero over ungraded rings.
    pub fn degree(&self, i: usize) -> i64 {
        self.degrees.as_ref().map_or(0, |d| d[i])
    }

    pub(crate) fn degree_vec(&self) -> Vec<i64> {
        self.degrees.clone().unwrap_or_else(|| vec![0; self.rank])
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.as_ref().and_then(|d| d.iter().copied().max())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.as_ref().and_then(|d| d.iter().copied().min())
    }

    fn from_degrees(ring: &Ring, degrees: Vec<i64>) -> FreeModule {
        let rank = degrees.len();
        FreeModule { ring: ring.clone(), rank, degrees: ring.is_graded().then_some(degrees) }
    }

    /// Generators of `self` followed by those of `other`.
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut d = self.degree_vec();
        d.extend(other.degree_vec());
        FreeModule::from_degrees(&self.ring, d)
    }

    /// Basis `e_i ⊗ f_k` at index `i * other.rank + k`.
    pub fn tensor(&self, other: &FreeModule) -> FreeModule {
        let d = (0..self.rank)
            .flat_map(|i| (0..other.rank).map(move |k| (i, k)))
            .map(|(i, k)| self.degree(i) + other.degree(k))
            .collect();
        FreeModule::from_degrees(&self.ring, d)
    }

    /// Basis: `k`-subsets of the generators in lexicographic order.
    pub fn exterior_power(&self, k: usize) -> FreeModule {
        let d = subsets(self.rank, k)
            .into_iter()
            .map(|s| s.iter().map(|&i| self.degree(i)).sum())
            .collect();
        FreeModule::from_degrees(&self.ring, d)
    }

    /// Same generators with every degree raised by `s`.
    pub fn twist(&self, s: i64) -> FreeModule {
        FreeModule::from_degrees(&self.ring, self.degree_vec().into_iter().map(|d| d + s).collect())
    }
}

/// Homomorphism of free modules given by its matrix on the standard bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    source: FreeModule,
    target: FreeModule,
    matrix: Matrix,
}

impl FreeMap {
    /// Checks shapes, rings and, over graded rings, that entry `(i, j)` is
    /// zero or homogeneous of degree `deg source(j) - deg target(i)`.
    pub fn new(source: FreeModule, target: FreeModule, matrix: Matrix) -> Result<FreeMap> {
        if source.ring != target.ring || *matrix.ring() != source.ring {
            return Err(Error::RingMismatch("map between modules over different rings".into()));
        }
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map of rank {} to rank {}",
                matrix.rows(),
                matrix.cols(),
                source.rank,
                target.rank
            )));
        }
        if source.ring.is_graded() {
            let ring = &source.ring;
            for i in 0..matrix.rows() {
                for j in 0..matrix.cols() {
                    let e = matrix.get(i, j);
                    if ring.is_zero(e) {
                        continue;
                    }
                    let expected = source.degree(j) - target.degree(i);
                    if ring.homogeneous_degree(e).map(i64::from) != Some(expected) {
                        return Err(Error::InhomogeneousEntry { row: i, col: j, expected });
                    }
                }
            }
        }
        Ok(FreeMap { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: FreeModule, target: FreeModule, matrix: Matrix) -> FreeMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.rank, source.rank));
        FreeMap { source, target, matrix }
    }

    pub fn zero(source: &FreeModule, target: &FreeModule) -> FreeMap {
        let matrix = Matrix::zeros(&source.ring, target.rank, source.rank);
        FreeMap::new_unchecked(source.clone(), target.clone(), matrix)
    }

    pub fn identity(m: &FreeModule) -> FreeMap {
        FreeMap::new_unchecked(m.clone(), m.clone(), Matrix::identity(&m.ring, m.rank))
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Ring {
        &self.source.ring
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeMap) -> Result<FreeMap> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("composition of maps with mismatched modules".into()));
        }
        Ok(FreeMap::new_unchecked(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix)?))
    }

    pub fn add(&self, other: &FreeMap) -> Result<FreeMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("sum of maps between different modules".into()));
        }
        Ok(FreeMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)?))
    }

    pub fn neg(&self) -> FreeMap {
        FreeMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn direct_sum(&self, other: &FreeMap) -> FreeMap {
        FreeMap::new_unchecked(
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            self.matrix.direct_sum(&other.matrix),
        )
    }

    pub fn tensor(&self, other: &FreeMap) -> FreeMap {
        FreeMap::new_unchecked(
            self.source.tensor(&other.source),
            self.target.tensor(&other.target),
            self.matrix.kronecker(&other.matrix),
        )
    }

    /// `Λ^k` of the map: entry `(I, J)` is the minor `det M[I, J]`.
    pub fn exterior_power(&self, k: usize) -> FreeMap {
        let ring = self.ring();
        let src = self.source.exterior_power(k);
        let tgt = self.target.exterior_power(k);
        let cols = self.matrix.columns();
        let mut m = Matrix::zeros(ring, tgt.rank, src.rank);
        for (jdx, js) in subsets(self.source.rank, k).into_iter().enumerate() {
            let vs: Vec<_> = js.iter().map(|&j| cols[j].clone()).collect();
            for (is, c) in wedge_expand(ring, &vs) {
                m.set(subset_rank(self.target.rank, &is), jdx, c);
            }
        }
        FreeMap::new_unchecked(src, tgt, m)
    }

    /// Degree-`d` component over `F_p` (graded rings only).
    pub fn graded_piece(&self, d: i64) -> FpMatrix {
        degree_piece(&self.matrix, &self.source.degree_vec(), &self.target.degree_vec(), d)
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        self.matrix.apply(v)
    }
}

/// Exterior power of a free module; see [`FreeModule::exterior_power`].
pub fn exterior_power_free(k: usize, f: &FreeModule) -> FreeModule {
    f.exterior_power(k)
}

/// Exterior power of a map; see [`FreeMap::exterior_power`].
pub fn exterior_power_map(k: usize, m: &FreeMap) -> FreeMap {
    m.exterior_power(k)
}

/// Degree-`d` component of a graded map.
pub fn graded_piece(g: &FreeMap, d: i64) -> FpMatrix {
    g.graded_piece(d)
}

/// A finitely presented module: the cokernel of `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPModule {
    relations: FreeMap,
}

impl FPModule {
    pub fn new(relations: FreeMap) -> FPModule {
        FPModule { relations }
    }

    /// Presentation `relations: F_1 -> generators` given by a matrix.
    pub fn from_matrix(generators: FreeModule, relation_module: FreeModule, matrix: Matrix) -> Result<FPModule> {
        Ok(FPModule { relations: FreeMap::new(relation_module, generators, matrix)? })
    }

    /// The free module itself, with no relations.
    pub fn free(generators: FreeModule) -> FPModule {
        let zero = FreeModule::zero(generators.ring());
        FPModule { relations: FreeMap::zero(&zero, &generators) }
    }

    /// `Z/n_1 ⊕ ... ⊕ Z/n_r` presented by a diagonal matrix.
    pub fn integer_torsion(orders: &[i64]) -> FPModule {
        let z = Ring::integers();
        let n = orders.len();
        let mut m = Matrix::zeros(&z, n, n);
        for (i, &o) in orders.iter().enumerate() {
            m.set(i, i, z.from_i64(o));
        }
        let f = FreeModule::new(&z, n);
        FPModule { relations: FreeMap::new_unchecked(f.clone(), f, m) }
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn generators(&self) -> &FreeModule {
        self.relations.target()
    }

    pub fn relations(&self) -> &FreeMap {
        &self.relations
    }

    /// Whether the presentation has no relations.
    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_power_examples() {
        let z = Ring::integers();
        assert_eq!(FreeModule::new(&z, 3).exterior_power(2).rank(), 3);
        let id = FreeMap::identity(&FreeModule::new(&z, 4));
        assert_eq!(id.exterior_power(2), FreeMap::identity(&FreeModule::new(&z, 6)));
        let f = FreeModule::new(&z, 2);
        let m = FreeMap::new(f.clone(), f, Matrix::from_i64_rows(&z, &[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(m.exterior_power(2).matrix(), &Matrix::from_i64_rows(&z, &[&[1]]));
    }

    #[test]
    fn graded_pieces_of_maximal_ideal_map() {
        let b = Ring::graded(2, 2).unwrap();
        let src = FreeModule::graded(&b, vec![1, 1]).unwrap();
        let tgt = FreeModule::graded(&b, vec![0]).unwrap();
        let m = Matrix::from_rows(&b, vec![vec![b.generator(0), b.generator(1)]]).unwrap();
        let g = FreeMap::new(src, tgt, m).unwrap();
        // degree 1: source basis (e1, e2), target basis (x, y)
        let p1 = g.graded_piece(1);
        assert_eq!(p1, FpMatrix::from_rows(2, &[vec![1, 0], vec![0, 1]]));
        assert_eq!(p1.rank(), 2);
        let p0 = g.graded_piece(0);
        assert_eq!((p0.rows(), p0.cols()), (1, 0));
        assert_eq!(FreeMap::zero(g.source(), g.target()).graded_piece(3).rank(), 0);
    }

    #[test]
    fn inhomogeneous_entries_are_rejected() {
        let b = Ring::graded(3, 2).unwrap();
        let src = FreeModule::graded(&b, vec![2]).unwrap();
        let tgt = FreeModule::graded(&b, vec![0]).unwrap();
        let m = Matrix::from_rows(&b, vec![vec![b.generator(0)]]).unwrap();
        assert_eq!(
            FreeMap::new(src, tgt, m),
            Err(Error::InhomogeneousEntry { row: 0, col: 0, expected: 2 })
        );
    }
}
