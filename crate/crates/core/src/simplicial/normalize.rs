//! The normalization functor `N`.
//!
//! `N(A)_n = ∩_{i >= 1} ker d_i` with differential `d_0`. When every
//! degeneracy sends basis vectors to signed basis vectors, the degenerate
//! subspace `D_n` is spanned by basis vectors and `A_n = N(A)_n ⊕ D_n`. The
//! projection onto `N(A)_n` along `D_n` is
//! `(1 - s_0 d_1)(1 - s_1 d_2) ... (1 - s_{n-1} d_n)`, so the images of the
//! nondegenerate basis vectors form a basis of `N(A)_n`, and a vector of
//! `N(A)_n` is determined by its nondegenerate coordinates.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use super::Simplicial;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{FreeMap, FreeModule};
use crate::ring::Ring;
use crate::subsets::{accumulate, SparseVec};

struct Memo<'a, S: ?Sized> {
    a: &'a S,
    faces: RefCell<HashMap<(usize, usize, usize), SparseVec>>,
    degens: RefCell<HashMap<(usize, usize, usize), SparseVec>>,
}

impl<'a, S: Simplicial + ?Sized> Memo<'a, S> {
    fn face(&self, n: usize, i: usize, col: usize) -> SparseVec {
        if let Some(v) = self.faces.borrow().get(&(n, i, col)) {
            return v.clone();
        }
        let v = self.a.face(n, i, col);
        self.faces.borrow_mut().insert((n, i, col), v.clone());
        v
    }

    fn degeneracy(&self, n: usize, i: usize, col: usize) -> SparseVec {
        if let Some(v) = self.degens.borrow().get(&(n, i, col)) {
            return v.clone();
        }
        let v = self.a.degeneracy(n, i, col);
        self.degens.borrow_mut().insert((n, i, col), v.clone());
        v
    }
}

fn apply(ring: &Ring, v: &BTreeMap<usize, crate::ring::Elem>, op: impl Fn(usize) -> SparseVec) -> BTreeMap<usize, crate::ring::Elem> {
    let mut acc = BTreeMap::new();
    for (col, c) in v {
        for (row, e) in op(*col) {
            accumulate(ring, &mut acc, row, ring.mul(c, &e));
        }
    }
    acc
}

/// `N(A)` through the truncation level of `A`.
pub fn normalize<S: Simplicial + ?Sized>(a: &S) -> Result<ChainComplex> {
    let ring = a.ring().clone();
    let memo = Memo { a, faces: RefCell::new(HashMap::new()), degens: RefCell::new(HashMap::new()) };
    let top = a.max_level();
    let mut terms: Vec<FreeModule> = Vec::with_capacity(top + 1);
    let mut diffs: Vec<FreeMap> = Vec::with_capacity(top);
    // position of each nondegenerate basis vector of the previous level
    let mut prev_position: HashMap<usize, usize> = HashMap::new();
    for n in 0..=top {
        let rank = a.level(n).rank();
        let mut degenerate = vec![false; rank];
        if n >= 1 {
            for i in 0..n {
                for col in 0..a.level(n - 1).rank() {
                    match memo.degeneracy(n - 1, i, col).as_slice() {
                        [(row, c)] if ring.is_one(c) || ring.is_one(&ring.neg(c)) => degenerate[*row] = true,
                        _ => return Err(Error::NonMonomialDegeneracy { level: n - 1, index: i }),
                    }
                }
            }
        }
        let nondegenerate: Vec<usize> = (0..rank).filter(|&c| !degenerate[c]).collect();
        let degrees: Vec<i64> = nondegenerate.iter().map(|&c| a.level(n).degree(c)).collect();
        let term = if ring.is_graded() {
            FreeModule::graded(&ring, degrees)?
        } else {
            FreeModule::new(&ring, nondegenerate.len())
        };
        if n >= 1 {
            let mut m = Matrix::zeros(&ring, terms[n - 1].rank(), term.rank());
            for (j, &e) in nondegenerate.iter().enumerate() {
                let mut x = BTreeMap::new();
                x.insert(e, ring.one());
                for k in (0..n).rev() {
                    let down = apply(&ring, &x, |c| memo.face(n, k + 1, c));
                    let back = apply(&ring, &down, |c| memo.degeneracy(n - 1, k, c));
                    for (row, c) in back {
                        accumulate(&ring, &mut x, row, ring.neg(&c));
                    }
                }
                debug_assert!((1..=n).all(|i| apply(&ring, &x, |c| memo.face(n, i, c)).is_empty()));
                for (row, c) in apply(&ring, &x, |c| memo.face(n, 0, c)) {
                    if let Some(&r) = prev_position.get(&row) {
                        m.set(r, j, c);
                    }
                }
            }
            diffs.push(FreeMap::new_unchecked(term.clone(), terms[n - 1].clone(), m));
        }
        prev_position = nondegenerate.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        terms.push(term);
        // operators of level n are no longer needed once level n + 1 is done
        memo.faces.borrow_mut().retain(|k, _| k.0 > n);
        memo.degens.borrow_mut().retain(|k, _| k.0 >= n);
    }
    ChainComplex::new(&ring, terms, diffs)
}
