use dle_core::complex::ChainComplex;
use dle_core::derived::{
    acyclic_exterior_check, chi_derived_exterior, ez_homology_compare, independence_report, ses_exterior_filtration,
};
use dle_core::homology::HomologyOptions;
use dle_core::module::{FPModule, FreeModule};
use dle_core::resolution::{dominate, free_resolution_z, verify_resolution};
use dle_core::samples::Sampler;
use dle_core::{PositiveRational, Ring};

fn opts() -> HomologyOptions {
    HomologyOptions::default()
}

fn order(m: &[i64]) -> PositiveRational {
    PositiveRational::integer(m.iter().product::<i64>()).unwrap()
}

#[test]
fn chi_of_derived_exterior_powers_of_finite_groups() {
    let mut s = Sampler::new(201);
    for _ in 0..12 {
        let m = s.finite_group(9);
        let p = free_resolution_z(&FPModule::integer_torsion(&m)).unwrap();
        assert_eq!(chi_derived_exterior(1, p.complex(), &opts()).unwrap(), order(&m));
        assert_eq!(chi_derived_exterior(2, p.complex(), &opts()).unwrap(), order(&m).inv(), "M = {m:?}");
        assert_eq!(chi_derived_exterior(3, p.complex(), &opts()).unwrap(), order(&m), "M = {m:?}");
    }
}

#[test]
fn padded_resolutions_resolve_and_are_dominated() {
    let mut s = Sampler::new(202);
    for _ in 0..20 {
        let m = s.finite_group(12);
        let module = FPModule::integer_torsion(&m);
        let plain = free_resolution_z(&module).unwrap();
        let padded = s.padded_resolution(&m);
        assert!(verify_resolution(padded.complex(), &module, &opts()).unwrap().passed);
        let w = dominate(&plain, &padded).unwrap();
        assert!(w.verify(&plain, &padded).unwrap());
        let w = dominate(&padded, &plain).unwrap();
        assert!(w.verify(&padded, &plain).unwrap());
    }
}

#[test]
fn exterior_square_independent_of_resolution() {
    let mut s = Sampler::new(203);
    for _ in 0..10 {
        let m = s.finite_group(12);
        let plain = free_resolution_z(&FPModule::integer_torsion(&m)).unwrap();
        let padded = s.padded_resolution(&m);
        let rep = independence_report(2, plain.complex(), padded.complex(), &opts()).unwrap();
        assert!(rep.equal, "{rep:?}");
    }
}

#[test]
fn shuffle_map_preserves_homology_on_random_pairs() {
    let mut s = Sampler::new(204);
    for _ in 0..15 {
        let (p, q) = (s.z_complex(), s.z_complex());
        let rep = ez_homology_compare(&p, &q, 2, &opts()).unwrap();
        assert!(rep.equal, "{rep:?}");
    }
}

#[test]
fn exterior_powers_of_acyclic_complexes() {
    let mut s = Sampler::new(205);
    let z = Ring::integers();
    for _ in 0..5 {
        let r = s.range(1, 2) as usize;
        let n = s.range(1, 2) as usize;
        let c = s.change_bases(&ChainComplex::identity_pair(&FreeModule::new(&z, r), n));
        for k in 1..=3 {
            assert!(acyclic_exterior_check(k, &c, &opts()).unwrap().acyclic);
        }
    }
    let b = Ring::graded(2, 2).unwrap();
    let c = ChainComplex::identity_pair(&FreeModule::graded(&b, vec![0, 2]).unwrap(), 1);
    for k in 1..=3 {
        assert!(acyclic_exterior_check(k, &c, &opts()).unwrap().acyclic);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn filtration_quotients_follow_vandermonde() {
    let z = Ring::integers();
    for a in 0..=3 {
        for b in 0..=3 {
            for r in 0..=a + b {
                let rep = ses_exterior_filtration(r, &FreeModule::new(&z, a), &FreeModule::new(&z, b)).unwrap();
                assert!(rep.passed(), "{rep:?}");
                let expected: Vec<usize> = (0..=r).map(|i| binomial(a, r - i) * binomial(b, i)).collect();
                assert_eq!(rep.quotient_ranks, expected);
                assert_eq!(expected.iter().sum::<usize>(), binomial(a + b, r));
            }
        }
    }
}
