//! Smith normal form over the integers.
//!
//! Pivot rule: smallest nonzero absolute value in the remaining block, moved
//! to the diagonal by row and column swaps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{restrict_scalars, Matrix};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    /// Nonzero diagonal entries of `d`, units included.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Isomorphism type of a cokernel as an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CokernelInvariants {
    /// Torsion invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl CokernelInvariants {
    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        let rj = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&rj) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        if let Some(u) = &mut self.u {
            let uj = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(&uj) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    /// col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn reduce(work: &mut Work, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &work.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < work.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        break;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        work.swap_rows(t, pi);
        work.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if work.a[i][t].is_zero() {
                    continue;
                }
                let q = work.a[i][t].div_floor(&work.a[t][t]);
                work.row_axpy(i, t, &q);
                if !work.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if work.a[t][j].is_zero() {
                    continue;
                }
                let q = work.a[t][j].div_floor(&work.a[t][t]);
                work.col_axpy(j, t, &q);
                if !work.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = &work.a[i][t];
                    if !x.is_zero() && x.abs() < work.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = &work.a[t][j];
                    if !x.is_zero() && x.abs() < work.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                work.swap_rows(t, best.0);
                work.swap_cols(t, best.1);
                continue;
            }
            // divisibility: fold a non-divisible row into the pivot row
            let p = work.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&work.a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    work.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if work.a[t][t].is_negative() {
            work.negate_row(t);
        }
        factors.push(work.a[t][t].clone());
        t += 1;
    }
    factors
}

/// Smith normal form `U M V = D` of an integer matrix.
pub fn smith_normal_form(m: &Matrix) -> Result<SnfResult> {
    m.ring().expect_kind("Integers")?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut work = Work { a: m.to_bigint_rows(), u: Some(identity(rows)), v: Some(identity(cols)) };
    let factors = reduce(&mut work, rows, cols);
    Ok(SnfResult {
        u: Matrix::from_bigint_rows(rows, rows, &work.u.unwrap()),
        d: Matrix::from_bigint_rows(rows, cols, &work.a),
        v: Matrix::from_bigint_rows(cols, cols, &work.v.unwrap()),
        invariant_factors: factors,
    })
}

/// Nonzero invariant factors (units included) without transformation matrices.
pub fn invariant_factors(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut work = Work { a: data, u: None, v: None };
    reduce(&mut work, rows, cols)
}

/// Cokernel of `M` as an abelian group. Matrices over a monogenic order are
/// first restricted to the integers.
pub fn cokernel_invariants(m: &Matrix) -> Result<CokernelInvariants> {
    let z;
    let m = match m.ring().kind_name() {
        "Integers" => m,
        "MonogenicOrder" => {
            z = restrict_scalars(m)?;
            &z
        }
        _ => {
            return Err(crate::error::Error::WrongRingKind {
                expected: "Integers or MonogenicOrder",
                actual: m.ring().kind_name().into(),
            })
        }
    };
    let factors = invariant_factors(m.rows(), m.cols(), m.to_bigint_rows());
    Ok(CokernelInvariants {
        free_rank: m.rows() - factors.len(),
        torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(&Ring::integers(), rows)
    }

    #[test]
    fn small_examples() {
        let id = smith_normal_form(&int_matrix(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(id.invariant_factors, vec![BigInt::from(1), BigInt::from(1)]);
        let m = smith_normal_form(&int_matrix(&[&[2, 4], &[0, 6]])).unwrap();
        assert_eq!(m.invariant_factors, vec![BigInt::from(2), BigInt::from(6)]);
        let six = smith_normal_form(&int_matrix(&[&[6]])).unwrap();
        assert_eq!(six.invariant_factors, vec![BigInt::from(6)]);
    }

    /// Brute-force oracle: d_1 d_2 ... d_k equals the gcd of all k x k minors.
    fn minor_gcd(m: &[Vec<i64>], k: usize) -> i64 {
        use crate::subsets::subsets;
        let (r, c) = (m.len(), m[0].len());
        let mut g = BigInt::zero();
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                g = g.gcd(&super::super::bareiss_det(sub));
            }
        }
        i64::try_from(g).unwrap()
    }

    #[test]
    fn matches_determinantal_divisors() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        let snf = smith_normal_form(&int_matrix(&rows)).unwrap();
        let mut prod = 1i64;
        for k in 1..=3 {
            let dk = minor_gcd(&m, k);
            if dk == 0 {
                assert!(snf.invariant_factors.len() < k);
                break;
            }
            let factor = i64::try_from(&snf.invariant_factors[k - 1]).unwrap();
            prod *= factor;
            assert_eq!(prod, dk);
        }
        assert_eq!(snf.invariant_factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn cokernels() {
        let c = cokernel_invariants(&int_matrix(&[&[6]])).unwrap();
        assert_eq!(c, CokernelInvariants { torsion: vec![6.into()], free_rank: 0 });
        let c = cokernel_invariants(&int_matrix(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(c, CokernelInvariants { torsion: vec![6.into()], free_rank: 0 });
        let empty = Matrix::zeros(&Ring::integers(), 1, 0);
        assert_eq!(cokernel_invariants(&empty).unwrap(), CokernelInvariants { torsion: vec![], free_rank: 1 });
        let fp = Matrix::zeros(&Ring::prime_field(3).unwrap(), 1, 1);
        assert!(cokernel_invariants(&fp).is_err());
    }
}
