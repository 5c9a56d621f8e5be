use dle_core::linalg::{bareiss_det, cokernel_invariants, restrict_scalars, smith_normal_form, solve, Matrix};
use dle_core::module::{FreeMap, FreeModule};
use dle_core::poly::IntPoly;
use dle_core::ring::{order_norm, poly_discriminant};
use dle_core::{Elem, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rings() -> Vec<Ring> {
    vec![
        Ring::integers(),
        Ring::prime_field(7).unwrap(),
        Ring::order(IntPoly::parse("x^3-x-1").unwrap()).unwrap(),
        Ring::graded(3, 2).unwrap(),
    ]
}

/// An element built from small coefficients through ring operations only.
fn element(ring: &Ring, coeffs: &[i64]) -> Elem {
    match ring.vars() {
        0 if ring.modulus_poly().is_some() => ring.order_from_poly(&IntPoly::from_i64s(coeffs)),
        0 => ring.from_i64(coeffs[0]),
        _ => {
            let (x, y) = (ring.generator(0), ring.generator(1));
            let mut acc = ring.zero();
            for (i, c) in coeffs.iter().enumerate() {
                let mono = ring.mul(&ring.pow(&x, (i % 3) as u32), &ring.pow(&y, (i / 3) as u32));
                acc = ring.add(&acc, &ring.mul(&ring.from_i64(*c), &mono));
            }
            acc
        }
    }
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 3..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs()) {
        for r in rings() {
            let (a, b, c) = (element(&r, &a), element(&r, &b), element(&r, &c));
            prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
            prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        }
    }

    #[test]
    fn norm_is_multiplicative(a in coeffs(), b in coeffs()) {
        let r = Ring::order(IntPoly::parse("x^3-x-1").unwrap()).unwrap();
        let (a, b) = (element(&r, &a), element(&r, &b));
        prop_assert_eq!(order_norm(&r, &r.mul(&a, &b)), order_norm(&r, &a) * order_norm(&r, &b));
    }

    #[test]
    fn discriminant_matches_closed_forms(b in -9i64..=9, c in -9i64..=9) {
        let quad = IntPoly::from_i64s(&[c, b, 1]);
        prop_assert_eq!(poly_discriminant(&quad), BigInt::from(b * b - 4 * c));
        // x^3 + b x + c
        let cubic = IntPoly::from_i64s(&[c, b, 0, 1]);
        prop_assert_eq!(poly_discriminant(&cubic), BigInt::from(-4 * b * b * b - 27 * c * c));
    }

    #[test]
    fn restriction_is_multiplicative(a in prop::collection::vec(coeffs(), 4), b in prop::collection::vec(coeffs(), 4)) {
        let r = Ring::order(IntPoly::parse("x^2+1").unwrap()).unwrap();
        let ma = Matrix::from_entries(&r, 2, 2, a.iter().map(|v| element(&r, v)).collect()).unwrap();
        let mb = Matrix::from_entries(&r, 2, 2, b.iter().map(|v| element(&r, v)).collect()).unwrap();
        let lhs = restrict_scalars(&ma.mul(&mb).unwrap()).unwrap();
        let rhs = restrict_scalars(&ma).unwrap().mul(&restrict_scalars(&mb).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solve_recovers_consistent_systems(entries in prop::collection::vec(coeffs(), 6), x in prop::collection::vec(coeffs(), 3)) {
        for r in rings().into_iter().take(3) {
            let m = Matrix::from_entries(&r, 2, 3, entries.iter().map(|v| element(&r, v)).collect()).unwrap();
            let x: Vec<Elem> = x.iter().map(|v| element(&r, v)).collect();
            let b = m.apply(&x);
            let y = solve(&m, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.apply(&y), b);
        }
    }
}

fn minors_gcd(a: &[Vec<BigInt>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
            s.push(last);
            s
        })).collect()
    }
    let mut g = BigInt::zero();
    for rows in subsets(a.len(), k) {
        for cols in subsets(a[0].len(), k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
            g = g.gcd(&bareiss_det(sub));
        }
    }
    g
}

#[test]
fn smith_form_on_random_matrices() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let (rows, cols) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let data: Vec<Vec<BigInt>> = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        let m = Matrix::from_bigint_rows(rows, cols, &data);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.det().unwrap().abs().is_one() && s.v.det().unwrap().abs().is_one());
        // d_1 ... d_k is the gcd of the k x k minors
        let mut prefix = BigInt::one();
        for k in 1..=rows.min(cols) {
            let expected = minors_gcd(&data, k);
            if let Some(f) = s.invariant_factors.get(k - 1) {
                assert!(f.is_positive());
                prefix *= f;
                assert_eq!(prefix, expected);
            } else {
                assert!(expected.is_zero());
            }
        }
        for w in s.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        let inv = cokernel_invariants(&m).unwrap();
        assert_eq!(inv.free_rank, rows - s.rank());
    }
}

#[test]
fn graded_pieces_compose() {
    let b = Ring::graded(2, 2).unwrap();
    let e = |s: &str| b.parse_elem(s).unwrap();
    let f0 = FreeModule::graded(&b, vec![3, 4]).unwrap();
    let f1 = FreeModule::graded(&b, vec![1, 2]).unwrap();
    let f2 = FreeModule::graded(&b, vec![0]).unwrap();
    let f = FreeMap::new(f0, f1.clone(), Matrix::from_rows(&b, vec![vec![e("x^2+y^2"), e("x^3")], vec![e("y"), e("x*y+y^2")]]).unwrap()).unwrap();
    let g = FreeMap::new(f1, f2, Matrix::from_rows(&b, vec![vec![e("x"), e("y^2+x*y")]]).unwrap()).unwrap();
    let gf = g.compose(&f).unwrap();
    for d in 0..8 {
        assert_eq!(gf.graded_piece(d), g.graded_piece(d).mul(&f.graded_piece(d)), "degree {d}");
    }
}
