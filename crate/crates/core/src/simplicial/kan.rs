//! The inverse Dold-Kan functor `K`.
//!
//! `K(C)_n = ⊕_{η : [n] ↠ [k]} C_k`. A simplicial operator `θ` sends the
//! `η`-summand along the epi-mono factorization `η ∘ θ = μ ∘ ε`: to the
//! `ε`-summand by the identity if `μ = id`, by `∂_k` if `μ` is the coface
//! skipping 0, and to zero otherwise.

use std::collections::HashMap;

use super::Simplicial;
use crate::complex::ChainComplex;
use crate::module::FreeModule;
use crate::ring::Ring;
use crate::subsets::{subsets, SparseVec};

/// A monotone surjection `[n] ↠ [k]`, encoded by its stall positions: the
/// `n - k` indices `j` in `1..=n` with `η(j) = η(j - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurjectionIndex {
    n: usize,
    stalls: Vec<usize>,
}

impl SurjectionIndex {
    pub fn new(n: usize, stalls: Vec<usize>) -> SurjectionIndex {
        assert!(stalls.windows(2).all(|w| w[0] < w[1]), "stalls must be increasing");
        assert!(stalls.iter().all(|&j| (1..=n).contains(&j)), "stalls lie in 1..=n");
        SurjectionIndex { n, stalls }
    }

    pub fn from_values(values: &[u8]) -> SurjectionIndex {
        let stalls = (1..values.len()).filter(|&j| values[j] == values[j - 1]).collect();
        SurjectionIndex { n: values.len() - 1, stalls }
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.n - self.stalls.len()
    }

    /// `η(0), ..., η(n)`.
    pub fn values(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.n + 1);
        let mut cur = 0u8;
        v.push(0);
        for j in 1..=self.n {
            if self.stalls.binary_search(&j).is_err() {
                cur += 1;
            }
            v.push(cur);
        }
        v
    }
}

/// Summand bookkeeping for one level of `K(C)`.
#[derive(Clone, Debug)]
struct Level {
    /// Surjections by increasing target, then lexicographically by values.
    surjections: Vec<Vec<u8>>,
    targets: Vec<usize>,
    offsets: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
}

/// `K(C)` truncated at a level bound.
#[derive(Clone, Debug)]
pub struct KConstruction {
    ring: Ring,
    /// `diff_columns[k][b]`: column `b` of `∂_k`.
    diff_columns: Vec<Vec<SparseVec>>,
    levels: Vec<Level>,
    modules: Vec<FreeModule>,
}

impl KConstruction {
    pub fn new(c: &ChainComplex, max_level: usize) -> KConstruction {
        let ring = c.ring().clone();
        let terms: Vec<FreeModule> = c.terms().to_vec();
        let diff_columns = (0..terms.len()).map(|k| if k == 0 { Vec::new() } else { c.diff(k).matrix().columns() }).collect();
        let mut levels = Vec::with_capacity(max_level + 1);
        let mut modules = Vec::with_capacity(max_level + 1);
        for n in 0..=max_level {
            let mut surjections = Vec::new();
            let mut targets = Vec::new();
            for k in 0..=n.min(terms.len().saturating_sub(1)) {
                let mut block: Vec<Vec<u8>> = subsets(n, n - k)
                    .into_iter()
                    .map(|s| SurjectionIndex::new(n, s.into_iter().map(|j| j + 1).collect()).values())
                    .collect();
                block.sort();
                targets.extend(std::iter::repeat(k).take(block.len()));
                surjections.extend(block);
            }
            let mut offsets = Vec::with_capacity(surjections.len() + 1);
            let mut module = FreeModule::zero(&ring);
            for &k in &targets {
                offsets.push(module.rank());
                module = module.direct_sum(&terms[k]);
            }
            offsets.push(module.rank());
            let index = surjections.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            levels.push(Level { surjections, targets, offsets, index });
            modules.push(module);
        }
        KConstruction { ring, diff_columns, levels, modules }
    }

    fn locate(&self, n: usize, col: usize) -> (usize, usize) {
        let lvl = &self.levels[n];
        let s = lvl.offsets.partition_point(|&o| o <= col) - 1;
        (s, col - lvl.offsets[s])
    }

    /// Summands of level `n` as surjections, in basis order.
    pub fn summands(&self, n: usize) -> Vec<SurjectionIndex> {
        self.levels[n].surjections.iter().map(|v| SurjectionIndex::from_values(v)).collect()
    }

    fn position(&self, n: usize, eta: &[u8], b: usize) -> usize {
        let lvl = &self.levels[n];
        lvl.offsets[lvl.index[eta]] + b
    }
}

impl Simplicial for KConstruction {
    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    fn level(&self, n: usize) -> &FreeModule {
        &self.modules[n]
    }

    fn face(&self, n: usize, i: usize, col: usize) -> SparseVec {
        let (s, b) = self.locate(n, col);
        let eta = &self.levels[n].surjections[s];
        let k = self.levels[n].targets[s];
        let v = eta[i];
        let mut rest: Vec<u8> = eta.clone();
        rest.remove(i);
        if rest.contains(&v) {
            return vec![(self.position(n - 1, &rest, b), self.ring.one())];
        }
        if v != 0 {
            return Vec::new();
        }
        // η ∘ δ_i misses 0: factor through the coface skipping 0 and apply ∂_k
        for x in &mut rest {
            *x -= 1;
        }
        let base = self.levels[n - 1].offsets[self.levels[n - 1].index[&rest]];
        self.diff_columns[k][b].iter().map(|(r, e)| (base + r, e.clone())).collect()
    }

    fn degeneracy(&self, n: usize, i: usize, col: usize) -> SparseVec {
        let (s, b) = self.locate(n, col);
        let eta = &self.levels[n].surjections[s];
        let mut longer = eta.clone();
        longer.insert(i, eta[i]);
        vec![(self.position(n + 1, &longer, b), self.ring.one())]
    }
}
