use dle_core::complex::{cone, ChainComplex, ComplexMap};
use dle_core::derived::{derived_exterior_module, derived_tensor_modules};
use dle_core::homology::{euler_char, homology, GroupInvariants, HomologyOptions};
use dle_core::module::{FPModule, FreeMap};
use dle_core::samples::Sampler;
use dle_core::simplicial::{dold_kan_inverse, normalize, simplicial_exterior, verify_simplicial_identities};
use num_bigint::BigInt;
use num_integer::Integer;

fn opts() -> HomologyOptions {
    HomologyOptions::default()
}

fn finite_homology(c: &ChainComplex) -> bool {
    homology(c, &opts().lenient()).unwrap().groups().iter().all(|g| g.order().is_some())
}

#[test]
fn normalization_inverts_k_on_random_complexes() {
    let mut s = Sampler::new(101);
    for _ in 0..100 {
        let c = s.z_complex();
        let k = dold_kan_inverse(&c, c.len().max(1));
        assert_eq!(normalize(&k).unwrap().trimmed(), c.trimmed());
    }
}

#[test]
fn simplicial_identities_on_random_complexes() {
    let mut s = Sampler::new(102);
    for _ in 0..30 {
        let c = s.z_complex();
        let k = dold_kan_inverse(&c, 3);
        verify_simplicial_identities(&k, 3).unwrap();
        verify_simplicial_identities(&simplicial_exterior(2, k.clone()), 3).unwrap();
        verify_simplicial_identities(&simplicial_exterior(3, k), 2).unwrap();
    }
}

#[test]
fn euler_characteristic_of_cones_and_sums() {
    let mut s = Sampler::new(103);
    let mut seen = 0;
    while seen < 40 {
        let (a, b) = (s.z_complex(), s.z_complex());
        if !finite_homology(&a) || !finite_homology(&b) {
            continue;
        }
        seen += 1;
        let sum = a.direct_sum(&b);
        let (xa, xb) = (euler_char(&a, &opts()).unwrap(), euler_char(&b, &opts()).unwrap());
        assert_eq!(euler_char(&sum, &opts()).unwrap(), xa.mul(&xb));
        // cone of the inclusion a -> a + b is quasi-isomorphic to b
        let maps = (0..a.len())
            .map(|n| {
                let inc = dle_core::linalg::Matrix::identity(a.ring(), a.rank(n)).direct_sum(&dle_core::linalg::Matrix::zeros(a.ring(), b.rank(n), 0));
                FreeMap::new(a.term(n), sum.term(n), inc).unwrap()
            })
            .collect();
        let phi = ComplexMap::new(&a, &sum, maps).unwrap();
        assert_eq!(euler_char(&cone(&phi), &opts()).unwrap(), xb);
    }
}

fn group(s: &mut Sampler) -> Vec<i64> {
    s.finite_group(12)
}

fn torsion_order(g: &GroupInvariants) -> BigInt {
    g.order().expect("finite group")
}

#[test]
fn derived_tensor_of_finite_groups() {
    let mut s = Sampler::new(104);
    for _ in 0..30 {
        let (m, n) = (group(&mut s), group(&mut s));
        let t = derived_tensor_modules(&FPModule::integer_torsion(&m), &FPModule::integer_torsion(&n)).unwrap();
        assert!(euler_char(&t, &opts()).unwrap().is_one());
        // H_0 = M (x) N has order prod gcd(m_i, n_j)
        let expected: BigInt = m.iter().flat_map(|a| n.iter().map(move |b| BigInt::from(a.gcd(b)))).product();
        assert_eq!(torsion_order(homology(&t, &opts()).unwrap().degree(0)), expected);
    }
}

/// `Λ^k(⊕ Z/n_i) = ⊕_{i_1 < … < i_k} Z/gcd(n_{i_1}, …, n_{i_k})`.
fn exterior_order(orders: &[i64], k: usize) -> BigInt {
    fn go(orders: &[i64], k: usize, g: i64) -> BigInt {
        if k == 0 {
            return BigInt::from(g);
        }
        (0..orders.len()).map(|i| go(&orders[i + 1..], k - 1, if g == 0 { orders[i] } else { g.gcd(&orders[i]) })).product()
    }
    go(orders, k, 0)
}

#[test]
fn degree_zero_homology_is_the_exterior_power() {
    let mut s = Sampler::new(105);
    for _ in 0..15 {
        let m = group(&mut s);
        for k in 2..=3usize {
            if k == 3 && m.len() < 3 {
                continue;
            }
            let l = derived_exterior_module(k as i64, &FPModule::integer_torsion(&m)).unwrap();
            let h0 = homology(&l, &opts()).unwrap();
            assert_eq!(torsion_order(h0.degree(0)), exterior_order(&m, k), "k = {k}, M = {m:?}");
        }
    }
}
