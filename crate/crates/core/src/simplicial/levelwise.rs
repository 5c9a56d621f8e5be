//! Levelwise exterior powers and tensor products of simplicial modules.

use super::Simplicial;
use crate::error::{Error, Result};
use crate::module::FreeModule;
use crate::ring::Ring;
use crate::subsets::{subset_rank, subset_unrank, wedge_expand, SparseVec};

/// `Λ^k A`, with basis at each level the `k`-subsets of `A_n`'s basis.
#[derive(Clone, Debug)]
pub struct ExteriorPower<S> {
    base: S,
    k: usize,
    modules: Vec<FreeModule>,
}

impl<S: Simplicial> ExteriorPower<S> {
    pub fn new(k: usize, base: S) -> Self {
        let modules = (0..=base.max_level()).map(|n| base.level(n).exterior_power(k)).collect();
        ExteriorPower { base, k, modules }
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    fn wedge_of(&self, n_src: usize, n_tgt: usize, col: usize, op: impl Fn(usize) -> SparseVec) -> SparseVec {
        let set = subset_unrank(self.base.level(n_src).rank(), self.k, col);
        let images: Vec<SparseVec> = set.into_iter().map(op).collect();
        let rank = self.base.level(n_tgt).rank();
        let mut out: SparseVec = wedge_expand(self.base.ring(), &images)
            .into_iter()
            .map(|(s, c)| (subset_rank(rank, &s), c))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

impl<S: Simplicial> Simplicial for ExteriorPower<S> {
    fn ring(&self) -> &Ring {
        self.base.ring()
    }

    fn max_level(&self) -> usize {
        self.base.max_level()
    }

    fn level(&self, n: usize) -> &FreeModule {
        &self.modules[n]
    }

    fn face(&self, n: usize, i: usize, col: usize) -> SparseVec {
        self.wedge_of(n, n - 1, col, |c| self.base.face(n, i, c))
    }

    fn degeneracy(&self, n: usize, i: usize, col: usize) -> SparseVec {
        self.wedge_of(n, n + 1, col, |c| self.base.degeneracy(n, i, c))
    }
}

/// `A ⊗ B` levelwise, basis `a ⊗ b` at index `a * rank B_n + b`.
#[derive(Clone, Debug)]
pub struct Tensor<A, B> {
    a: A,
    b: B,
    modules: Vec<FreeModule>,
}

impl<A: Simplicial, B: Simplicial> Tensor<A, B> {
    pub fn new(a: A, b: B) -> Result<Self> {
        if a.ring() != b.ring() {
            return Err(Error::RingMismatch("levelwise tensor of simplicial modules over different rings".into()));
        }
        let top = a.max_level().min(b.max_level());
        let modules = (0..=top).map(|n| a.level(n).tensor(b.level(n))).collect();
        Ok(Tensor { a, b, modules })
    }

    fn combine(&self, n_src: usize, n_tgt: usize, col: usize, fa: impl Fn(usize) -> SparseVec, fb: impl Fn(usize) -> SparseVec) -> SparseVec {
        let rb_src = self.b.level(n_src).rank();
        let rb_tgt = self.b.level(n_tgt).rank();
        let ring = self.a.ring();
        let (va, vb) = (fa(col / rb_src), fb(col % rb_src));
        let mut out = Vec::with_capacity(va.len() * vb.len());
        for (i, x) in &va {
            for (j, y) in &vb {
                let c = ring.mul(x, y);
                if !ring.is_zero(&c) {
                    out.push((i * rb_tgt + j, c));
                }
            }
        }
        out
    }
}

impl<A: Simplicial, B: Simplicial> Simplicial for Tensor<A, B> {
    fn ring(&self) -> &Ring {
        self.a.ring()
    }

    fn max_level(&self) -> usize {
        self.modules.len() - 1
    }

    fn level(&self, n: usize) -> &FreeModule {
        &self.modules[n]
    }

    fn face(&self, n: usize, i: usize, col: usize) -> SparseVec {
        self.combine(n, n - 1, col, |c| self.a.face(n, i, c), |c| self.b.face(n, i, c))
    }

    fn degeneracy(&self, n: usize, i: usize, col: usize) -> SparseVec {
        self.combine(n, n + 1, col, |c| self.a.degeneracy(n, i, c), |c| self.b.degeneracy(n, i, c))
    }
}
