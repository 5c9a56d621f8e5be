//! Internal-degree components of maps between graded free modules.
//!
//! A generator of internal degree `e` contributes the monomials of degree
//! `d - e` to the degree-`d` component. Components are indexed
//! generator-major, monomials in descending lexicographic order.

use std::collections::HashMap;

use super::{FpMatrix, Matrix};
use crate::poly::{monomials_of_degree, Monomial};
use crate::ring::Elem;

/// Monomial basis of the degree-`d` component of a graded free module.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    degree: i64,
    offsets: Vec<usize>,
    monomials: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl GradedBasis {
    pub fn new(vars: usize, generator_degrees: &[i64], d: i64) -> GradedBasis {
        let mut offsets = Vec::with_capacity(generator_degrees.len() + 1);
        let mut monomials = Vec::with_capacity(generator_degrees.len());
        let mut index = Vec::with_capacity(generator_degrees.len());
        let mut cache: HashMap<i64, (Vec<Monomial>, HashMap<Monomial, usize>)> = HashMap::new();
        let mut total = 0;
        for &g in generator_degrees {
            offsets.push(total);
            let e = d - g;
            let (mons, idx) = cache
                .entry(e)
                .or_insert_with(|| {
                    let mons = if e < 0 { Vec::new() } else { monomials_of_degree(vars, e as u32) };
                    let idx = mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
                    (mons, idx)
                })
                .clone();
            total += mons.len();
            monomials.push(mons);
            index.push(idx);
        }
        offsets.push(total);
        GradedBasis { degree: d, offsets, monomials, index }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Monomials attached to generator `g`.
    pub fn monomials(&self, g: usize) -> &[Monomial] {
        &self.monomials[g]
    }

    pub fn position(&self, g: usize, m: &Monomial) -> Option<usize> {
        self.index[g].get(m).map(|i| self.offsets[g] + i)
    }

    /// Inverse of [`GradedBasis::position`].
    pub fn element(&self, pos: usize) -> (usize, &Monomial) {
        let g = self.offsets.partition_point(|&o| o <= pos) - 1;
        (g, &self.monomials[g][pos - self.offsets[g]])
    }
}

/// Degree-`d` component of the map with the given matrix between graded free
/// modules with generator degrees `source` and `target`.
pub fn degree_piece(m: &Matrix, source: &[i64], target: &[i64], d: i64) -> FpMatrix {
    let p = m.ring().char_p().expect("graded ring");
    let vars = m.ring().vars();
    let src = GradedBasis::new(vars, source, d);
    let tgt = GradedBasis::new(vars, target, d);
    piece_in_bases(m, &src, &tgt, p)
}

fn piece_in_bases(m: &Matrix, src: &GradedBasis, tgt: &GradedBasis, p: u64) -> FpMatrix {
    let mut out = FpMatrix::zeros(p, tgt.dim(), src.dim());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let Elem::Poly(entry) = m.get(i, j) else { panic!("graded entry expected") };
            if entry.is_zero() {
                continue;
            }
            for (k, mon) in src.monomials(j).iter().enumerate() {
                let col = src.offsets[j] + k;
                for (t, c) in entry.terms() {
                    if let Some(row) = tgt.position(i, &t.mul(mon)) {
                        out.add_to(row, col, *c);
                    }
                }
            }
        }
    }
    out
}

