//! Linear systems `M x = b` and restriction of scalars for monogenic orders.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{degree_piece, smith_normal_form, FpMatrix, GradedBasis, Matrix};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Elem, Ring};

/// Integer matrix of a matrix over `Z[x]/(f)` acting on power-basis
/// coordinates: each entry becomes its `n x n` multiplication matrix.
pub fn restrict_scalars(m: &Matrix) -> Result<Matrix> {
    let ring = m.ring();
    ring.expect_kind("MonogenicOrder")?;
    let n = ring.order_degree();
    let z = Ring::integers();
    let mut out = Matrix::zeros(&z, m.rows() * n, m.cols() * n);
    let powers: Vec<Elem> = (0..n).map(|k| ring.pow(&ring.generator(0), k as u32)).collect();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let a = m.get(i, j);
            if ring.is_zero(a) {
                continue;
            }
            for (k, xk) in powers.iter().enumerate() {
                let Elem::Order(coords) = ring.mul(a, xk) else { unreachable!() };
                for (r, c) in coords.into_iter().enumerate() {
                    out.set(i * n + r, j * n + k, Elem::Int(c));
                }
            }
        }
    }
    Ok(out)
}

/// Power-basis coordinates of a vector over an order, concatenated.
pub fn restrict_vector(ring: &Ring, v: &[Elem]) -> Result<Vec<BigInt>> {
    ring.expect_kind("MonogenicOrder")?;
    Ok(v.iter()
        .flat_map(|e| match e {
            Elem::Order(c) => c.clone(),
            _ => panic!("order element expected"),
        })
        .collect())
}

fn unrestrict_vector(ring: &Ring, coords: &[BigInt]) -> Vec<Elem> {
    coords.chunks(ring.order_degree()).map(|c| Elem::Order(c.to_vec())).collect()
}

/// Some `x` with `M x = b`, or `None` when the system has no solution.
///
/// Over a graded ring `b` must be homogeneous: row and column degrees are
/// inferred from the nonzero entries of `M` and `b`, and the system is solved
/// in the single internal degree where `b` lives.
pub fn solve(m: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    if b.len() != m.rows() {
        return Err(Error::ShapeMismatch(format!("{} rows but right-hand side of length {}", m.rows(), b.len())));
    }
    let ring = m.ring();
    match ring.kind_name() {
        "Integers" => {
            let b: Vec<BigInt> = b.iter().map(|e| int_of(e).clone()).collect();
            Ok(solve_integer(m, &b)?.map(|x| x.into_iter().map(Elem::Int).collect()))
        }
        "PrimeField" => {
            let p = ring.char_p().unwrap();
            let rows: Vec<Vec<u64>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| fp_of(m.get(i, j))).collect())
                .collect();
            let fm = fp_matrix(p, m.rows(), m.cols(), rows);
            let rhs: Vec<u64> = b.iter().map(fp_of).collect();
            Ok(fm.solve(&rhs).map(|x| x.into_iter().map(Elem::Fp).collect()))
        }
        "MonogenicOrder" => {
            let z = restrict_scalars(m)?;
            let rhs = restrict_vector(ring, b)?;
            Ok(solve_integer(&z, &rhs)?.map(|x| unrestrict_vector(ring, &x)))
        }
        _ => solve_graded(m, b),
    }
}

fn int_of(e: &Elem) -> &BigInt {
    match e {
        Elem::Int(n) => n,
        _ => panic!("integer element expected"),
    }
}

fn fp_of(e: &Elem) -> u64 {
    match e {
        Elem::Fp(n) => *n,
        _ => panic!("prime field element expected"),
    }
}

fn fp_matrix(p: u64, rows: usize, cols: usize, data: Vec<Vec<u64>>) -> FpMatrix {
    let mut out = FpMatrix::zeros(p, rows, cols);
    for (i, row) in data.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

fn solve_integer(m: &Matrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let snf = smith_normal_form(m)?;
    let ub: Vec<BigInt> = (0..m.rows())
        .map(|i| (0..m.rows()).fold(BigInt::zero(), |acc, k| acc + int_of(snf.u.get(i, k)) * &b[k]))
        .collect();
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); m.cols()];
    for i in 0..m.rows() {
        if i < r {
            let (q, rem) = ub[i].div_rem(&snf.invariant_factors[i]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(
        (0..m.cols())
            .map(|i| (0..m.cols()).fold(BigInt::zero(), |acc, k| acc + int_of(snf.v.get(i, k)) * &y[k]))
            .collect(),
    ))
}

fn solve_graded(m: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let ring = m.ring();
    let p = ring.char_p().unwrap();
    let vars = ring.vars();
    let (rows, cols) = (m.rows(), m.cols());
    let poly = |e: &Elem| -> Poly {
        match e {
            Elem::Poly(q) => q.clone(),
            _ => panic!("graded element expected"),
        }
    };
    let inhomogeneous = |e: &Elem| Error::InhomogeneousElement(ring.display(e));
    // Row degree t_i and column degree s_j with deg M_ij = s_j - t_i and
    // deg b_i = -t_i, found by propagation from the rows where b is nonzero.
    let mut t: Vec<Option<i64>> = vec![None; rows];
    let mut s: Vec<Option<i64>> = vec![None; cols];
    let mut queue = VecDeque::new();
    for (i, bi) in b.iter().enumerate() {
        if ring.is_zero(bi) {
            continue;
        }
        let d = ring.homogeneous_degree(bi).ok_or_else(|| inhomogeneous(bi))?;
        t[i] = Some(-(d as i64));
        queue.push_back((true, i));
    }
    let entry_degree = |i: usize, j: usize| -> Result<Option<i64>> {
        let e = m.get(i, j);
        if ring.is_zero(e) {
            return Ok(None);
        }
        Ok(Some(ring.homogeneous_degree(e).ok_or_else(|| inhomogeneous(e))? as i64))
    };
    while let Some((is_row, k)) = queue.pop_front() {
        if is_row {
            let ti = t[k].unwrap();
            for j in 0..cols {
                if let Some(d) = entry_degree(k, j)? {
                    match s[j] {
                        None => {
                            s[j] = Some(d + ti);
                            queue.push_back((false, j));
                        }
                        Some(sj) if sj != d + ti => {
                            return Err(Error::InhomogeneousElement(format!("column {j} has no consistent degree")))
                        }
                        _ => {}
                    }
                }
            }
        } else {
            let sj = s[k].unwrap();
            for i in 0..rows {
                if let Some(d) = entry_degree(i, k)? {
                    match t[i] {
                        None => {
                            t[i] = Some(sj - d);
                            queue.push_back((true, i));
                        }
                        Some(ti) if ti != sj - d => {
                            return Err(Error::InhomogeneousElement(format!("row {i} has no consistent degree")))
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let row_idx: Vec<usize> = (0..rows).filter(|&i| t[i].is_some()).collect();
    let col_idx: Vec<usize> = (0..cols).filter(|&j| s[j].is_some()).collect();
    let sub = m.submatrix(&row_idx, &col_idx);
    let src_deg: Vec<i64> = col_idx.iter().map(|&j| s[j].unwrap()).collect();
    let tgt_deg: Vec<i64> = row_idx.iter().map(|&i| t[i].unwrap()).collect();
    let piece = degree_piece(&sub, &src_deg, &tgt_deg, 0);
    let tgt_basis = GradedBasis::new(vars, &tgt_deg, 0);
    let mut rhs = vec![0u64; tgt_basis.dim()];
    for (a, &i) in row_idx.iter().enumerate() {
        for (mon, c) in poly(&b[i]).terms() {
            let pos = tgt_basis.position(a, mon).expect("degree bookkeeping");
            rhs[pos] = *c;
        }
    }
    let Some(x) = piece.solve(&rhs) else { return Ok(None) };
    let src_basis = GradedBasis::new(vars, &src_deg, 0);
    let mut out = vec![ring.zero(); cols];
    for (a, &j) in col_idx.iter().enumerate() {
        let terms = src_basis
            .monomials(a)
            .iter()
            .map(|mon| (mon.clone(), x[src_basis.position(a, mon).unwrap()]));
        out[j] = Elem::Poly(Poly::from_terms(terms, p));
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    #[test]
    fn integer_solve() {
        let z = Ring::integers();
        let m = Matrix::from_i64_rows(&z, &[&[2]]);
        assert_eq!(solve(&m, &[z.from_i64(4)]).unwrap(), Some(vec![z.from_i64(2)]));
        assert_eq!(solve(&m, &[z.from_i64(3)]).unwrap(), None);
    }

    #[test]
    fn graded_solve_reproduces_rhs() {
        let r = Ring::graded(2, 2).unwrap();
        let m = Matrix::from_rows(&r, vec![vec![r.parse_elem("x").unwrap(), r.parse_elem("y").unwrap()]]).unwrap();
        let b = r.parse_elem("x^2+x*y").unwrap();
        let x = solve(&m, &[b.clone()]).unwrap().unwrap();
        assert_eq!(m.apply(&x), vec![b]);
        // not in the ideal (x, y) in degree 0
        assert_eq!(solve(&m, &[r.one()]).unwrap(), None);
        let inhom = r.parse_elem("x^2+y").unwrap();
        assert!(solve(&m, &[inhom]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let r = Ring::order(IntPoly::parse("x^2+1").unwrap()).unwrap();
        let z = Ring::integers();
        let m = Matrix::from_rows(&r, vec![vec![r.generator(0)]]).unwrap();
        assert_eq!(restrict_scalars(&m).unwrap(), Matrix::from_i64_rows(&z, &[&[0, -1], &[1, 0]]));
        let two = Matrix::from_rows(&r, vec![vec![r.from_i64(2)]]).unwrap();
        assert_eq!(restrict_scalars(&two).unwrap(), Matrix::from_i64_rows(&z, &[&[2, 0], &[0, 2]]));
        let two_x = Matrix::from_rows(&r, vec![vec![r.mul(&r.from_i64(2), &r.generator(0))]]).unwrap();
        let det = restrict_scalars(&two_x).unwrap().det().unwrap();
        assert_eq!(det, crate::ring::order_norm(&r, &r.mul(&r.from_i64(2), &r.generator(0))));
        assert_eq!(det, BigInt::from(4));
        let x = solve(&two_x, &[r.from_i64(2)]).unwrap().unwrap();
        assert_eq!(two_x.apply(&x), vec![r.from_i64(2)]);
        assert_eq!(solve(&two_x, &[r.one()]).unwrap(), None);
    }
}
