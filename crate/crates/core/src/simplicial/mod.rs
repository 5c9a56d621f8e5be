//! Simplicial modules and the Dold-Kan functors.
//!
//! Simplicial modules are evaluated lazily: a [`Simplicial`] value reports
//! the free module at each level and the images of basis vectors under face
//! and degeneracy operators as sparse vectors.

mod kan;
mod levelwise;
mod normalize;

pub use kan::{KConstruction, SurjectionIndex};
pub use levelwise::{ExteriorPower, Tensor};
pub use normalize::normalize;

use std::collections::BTreeMap;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::module::FreeModule;
use crate::ring::Ring;
use crate::subsets::{accumulate, SparseVec};

/// A levelwise free simplicial module, truncated at `max_level`.
pub trait Simplicial {
    fn ring(&self) -> &Ring;
    fn max_level(&self) -> usize;
    fn level(&self, n: usize) -> &FreeModule;
    /// `d_i` applied to basis vector `col` of level `n >= 1`.
    fn face(&self, n: usize, i: usize, col: usize) -> SparseVec;
    /// `s_i` applied to basis vector `col` of level `n < max_level`.
    fn degeneracy(&self, n: usize, i: usize, col: usize) -> SparseVec;
}

/// Applies a basis-level operator to a sparse vector.
pub(crate) fn apply_op(ring: &Ring, v: &SparseVec, op: impl Fn(usize) -> SparseVec) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (col, c) in v {
        for (row, e) in op(*col) {
            accumulate(ring, &mut acc, row, ring.mul(c, &e));
        }
    }
    acc.into_iter().collect()
}

pub fn apply_face<S: Simplicial + ?Sized>(a: &S, n: usize, i: usize, v: &SparseVec) -> SparseVec {
    apply_op(a.ring(), v, |c| a.face(n, i, c))
}

pub fn apply_degeneracy<S: Simplicial + ?Sized>(a: &S, n: usize, i: usize, v: &SparseVec) -> SparseVec {
    apply_op(a.ring(), v, |c| a.degeneracy(n, i, c))
}

/// Simplicial module with explicitly stored operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialModule {
    ring: Ring,
    levels: Vec<FreeModule>,
    /// `faces[n][i][col]` for `n >= 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<SparseVec>>>,
    /// `degeneracies[n][i][col]` for `n < max_level`.
    degeneracies: Vec<Vec<Vec<SparseVec>>>,
}

impl SimplicialModule {
    /// Stores every operator of `a`.
    pub fn materialize<S: Simplicial + ?Sized>(a: &S) -> SimplicialModule {
        let top = a.max_level();
        let levels: Vec<FreeModule> = (0..=top).map(|n| a.level(n).clone()).collect();
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n).map(|i| (0..levels[n].rank()).map(|c| a.face(n, i, c)).collect()).collect()
            })
            .collect();
        let degeneracies = (0..top)
            .map(|n| (0..=n).map(|i| (0..levels[n].rank()).map(|c| a.degeneracy(n, i, c)).collect()).collect())
            .collect();
        SimplicialModule { ring: a.ring().clone(), levels, faces, degeneracies }
    }

    /// Constant simplicial module: `m` at every level, all operators identities.
    pub fn constant(m: &FreeModule, max_level: usize) -> SimplicialModule {
        let ring = m.ring().clone();
        let unit: Vec<SparseVec> = (0..m.rank()).map(|c| vec![(c, ring.one())]).collect();
        let faces = (0..=max_level).map(|n| if n == 0 { Vec::new() } else { vec![unit.clone(); n + 1] }).collect();
        let degeneracies = (0..max_level).map(|n| vec![unit.clone(); n + 1]).collect();
        SimplicialModule { ring, levels: vec![m.clone(); max_level + 1], faces, degeneracies }
    }
}

impl Simplicial for SimplicialModule {
    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, n: usize) -> &FreeModule {
        &self.levels[n]
    }

    fn face(&self, n: usize, i: usize, col: usize) -> SparseVec {
        self.faces[n][i][col].clone()
    }

    fn degeneracy(&self, n: usize, i: usize, col: usize) -> SparseVec {
        self.degeneracies[n][i][col].clone()
    }
}

fn unit(a: &(impl Simplicial + ?Sized), col: usize) -> SparseVec {
    vec![(col, a.ring().one())]
}

/// Checks every simplicial identity on every basis vector through `top`
/// (capped at the truncation level).
pub fn verify_simplicial_identities<S: Simplicial + ?Sized>(a: &S, top: usize) -> Result<()> {
    let top = top.min(a.max_level());
    let fail = |identity: &str, level: usize| Err(Error::SimplicialIdentity { identity: identity.into(), level });
    for n in 0..=top {
        for col in 0..a.level(n).rank() {
            let e = unit(a, col);
            // d_i d_j = d_{j-1} d_i for i < j
            if n >= 2 {
                for j in 1..=n {
                    let dj = apply_face(a, n, j, &e);
                    for i in 0..j {
                        if apply_face(a, n - 1, i, &dj) != apply_face(a, n - 1, j - 1, &apply_face(a, n, i, &e)) {
                            return fail("d_i d_j = d_(j-1) d_i", n);
                        }
                    }
                }
            }
            if n < top {
                for j in 0..=n {
                    let sj = apply_degeneracy(a, n, j, &e);
                    // s_i s_j = s_(j+1) s_i for i <= j
                    if n + 1 < top {
                        for i in 0..=j {
                            let lhs = apply_degeneracy(a, n + 1, i, &sj);
                            let rhs = apply_degeneracy(a, n + 1, j + 1, &apply_degeneracy(a, n, i, &e));
                            if lhs != rhs {
                                return fail("s_i s_j = s_(j+1) s_i", n);
                            }
                        }
                    }
                    for i in 0..=n + 1 {
                        let lhs = apply_face(a, n + 1, i, &sj);
                        let rhs = if i < j {
                            apply_degeneracy(a, n - 1, j - 1, &apply_face(a, n, i, &e))
                        } else if i == j || i == j + 1 {
                            e.clone()
                        } else {
                            apply_degeneracy(a, n - 1, j, &apply_face(a, n, i - 1, &e))
                        };
                        if lhs != rhs {
                            return fail("d_i s_j", n);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `K(C)` truncated at level `max_level`.
pub fn dold_kan_inverse(c: &ChainComplex, max_level: usize) -> KConstruction {
    KConstruction::new(c, max_level)
}

/// `Λ^k` applied levelwise.
pub fn simplicial_exterior<S: Simplicial>(k: usize, a: S) -> ExteriorPower<S> {
    ExteriorPower::new(k, a)
}

/// Levelwise tensor product `(A ⊗ B)_n = A_n ⊗ B_n`.
pub fn simplicial_tensor<A: Simplicial, B: Simplicial>(a: A, b: B) -> Result<Tensor<A, B>> {
    Tensor::new(a, b)
}
