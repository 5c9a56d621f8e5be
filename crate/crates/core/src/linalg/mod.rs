//! Exact matrix algebra over the supported rings.

mod fp;
mod graded;
mod snf;
mod solve;

pub use fp::FpMatrix;
pub use graded::{degree_piece, GradedBasis};
pub use snf::{cokernel_invariants, invariant_factors, smith_normal_form, CokernelInvariants, SnfResult};
pub use solve::{restrict_scalars, restrict_vector, solve};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::subsets::SparseVec;

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_entries(ring: &Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { ring: ring.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Integer matrix from small literals; panics on ragged input.
    pub fn from_i64_rows(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let converted = rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
        Matrix::from_rows(ring, converted).expect("rectangular literal")
    }

    pub fn from_columns(ring: &Ring, rows: usize, columns: &[SparseVec]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, e) in col {
                m.set(*i, j, e.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn column(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|i| {
                let e = self.get(i, j);
                (!self.ring.is_zero(e)).then(|| (i, e.clone()))
            })
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = ring.add(&out.entries[idx], &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("matrix sum".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.ring.add(a, b)).collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.ring.zero(), |acc, j| {
                    self.ring.add(&acc, &self.ring.mul(self.get(i, j), &v[j]))
                })
            })
            .collect()
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row count".into()));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Kronecker product with index `(i, k) -> i * other.rows + k`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let ring = &self.ring;
        let mut out = Matrix::zeros(ring, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if ring.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !ring.is_zero(b) {
                            out.set(i * other.rows + k, j * other.cols + l, ring.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Elem) -> Matrix {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, s)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries }
    }

    /// Integer entries; panics if the ring is not the integers.
    pub fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| match self.get(i, j) {
                        Elem::Int(n) => n.clone(),
                        _ => panic!("integer matrix expected"),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_bigint_rows(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Matrix {
        let z = Ring::integers();
        let entries = data.iter().flat_map(|r| r.iter().map(|x| Elem::Int(x.clone()))).collect();
        Matrix { ring: z, rows, cols, entries }
    }

    /// Determinant over the integers via fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        self.ring.expect_kind("Integers")?;
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        Ok(bareiss_det(self.to_bigint_rows()))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.ring.display(self.get(i, j))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor() {
        let rows = vec![
            vec![2, -1, 3].into_iter().map(BigInt::from).collect(),
            vec![0, 4, 1].into_iter().map(BigInt::from).collect(),
            vec![5, 2, -2].into_iter().map(BigInt::from).collect::<Vec<_>>(),
        ];
        // cofactor expansion along the first row
        let expected = 2 * (4 * -2 - 1 * 2) - (-1) * (0 * -2 - 1 * 5) + 3 * (0 * 2 - 4 * 5);
        assert_eq!(bareiss_det(rows), BigInt::from(expected));
        assert_eq!(bareiss_det(vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]]), BigInt::from(-1));
    }

    #[test]
    fn kronecker_indexing() {
        let z = Ring::integers();
        let a = Matrix::from_i64_rows(&z, &[&[1, 2]]);
        let b = Matrix::from_i64_rows(&z, &[&[3], &[4]]);
        let k = a.kronecker(&b);
        assert_eq!(k, Matrix::from_i64_rows(&z, &[&[3, 6], &[4, 8]]));
    }
}
