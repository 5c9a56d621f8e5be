use dle_core::derived::chi_derived_exterior;
use dle_core::homology::HomologyOptions;
use dle_core::kgroup::{
    chi_eval, closed_form_check, lambda_series, solve_profile, Atom, AtomTable, ChiValue, ClosedForm, KClass, LambdaSeries,
    Relation, SesTerm,
};
use dle_core::module::FPModule;
use dle_core::resolution::free_resolution_z;
use dle_core::samples::Sampler;
use dle_core::PositiveRational;
use proptest::prelude::*;

const RMAX: usize = 6;

fn table() -> AtomTable {
    let mut t = AtomTable::new();
    for (i, name) in ["a", "b", "c"].iter().enumerate() {
        let mut atom = Atom::finite(name, ChiValue::symbol(name));
        for j in 2..=RMAX {
            atom = atom.seed(j, ChiValue::symbol(name).pow((i + j) as i64 * if j % 2 == 0 { -1 } else { 1 }));
        }
        t.insert(atom).unwrap();
    }
    t
}

fn class() -> impl Strategy<Value = KClass> {
    (-2i64..=2, prop::collection::vec(-2i64..=2, 3)).prop_map(|(free, coeffs)| {
        ["a", "b", "c"].iter().zip(coeffs).fold(KClass::free(free), |acc, (name, c)| acc.add(&KClass::atom(name).scale(c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lambda_series_is_multiplicative(x in class(), y in class()) {
        let t = table();
        let sum = lambda_series(&x.add(&y), RMAX, &t).unwrap();
        let prod = lambda_series(&x, RMAX, &t).unwrap().mul(&lambda_series(&y, RMAX, &t).unwrap());
        prop_assert!(sum.eq_mod_junk(&prod), "{:?} vs {:?}", sum, prod);
    }

    #[test]
    fn lambda_series_of_negative_is_inverse(x in class()) {
        let t = table();
        let s = lambda_series(&x, RMAX, &t).unwrap().mul(&lambda_series(&x.neg(), RMAX, &t).unwrap());
        prop_assert!(s.eq_mod_junk(&LambdaSeries::one(RMAX)));
    }

    #[test]
    fn free_classes_give_binomials(n in 0i64..=6) {
        let s = lambda_series(&KClass::free(n), RMAX, &AtomTable::new()).unwrap();
        for r in 0..=RMAX {
            let binom = (0..r as i64).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
            prop_assert_eq!(s.coefficient(r), &KClass::free(binom));
        }
    }
}

#[test]
fn chi_eval_ignores_junk() {
    let t = table();
    let junk = KClass::atom("a").mul(&KClass::atom("b"));
    assert!(junk.junk);
    assert!(chi_eval(&junk, &t).unwrap().is_one());
    assert!(chi_eval(&KClass::atom("a").sub(&KClass::atom("a")), &t).unwrap().is_one());
    assert!(chi_eval(&KClass::unit(), &t).is_err());
}

#[test]
fn closed_form_matches_recursion_for_symbolic_values() {
    for chi in ["q", "q*s^2", "5/3*q"] {
        let factors: Vec<ChiValue> = chi.split(',').map(|c| c.parse().unwrap()).collect();
        let rep = closed_form_check(ClosedForm::FiniteSupport, &factors, 12).unwrap();
        assert!(rep.passed, "{chi}: {rep:?}");
        assert_eq!(rep.rows.len(), 12);
    }
    let two_factors: Vec<ChiValue> = vec!["q".parse().unwrap(), "s".parse().unwrap()];
    assert!(closed_form_check(ClosedForm::FiniteSupport, &two_factors, 12).unwrap().passed);
}

/// Symbolic `χ(λ^r [M])` for `M = ⊕ Z/n_i`: each cyclic summand is an atom
/// resolved by `0 -> Z -> Z -> Z/n -> 0` and seeded only with `c_1 = n`.
fn symbolic_chi(orders: &[i64], r: usize) -> ChiValue {
    let mut t = AtomTable::new();
    let mut x = KClass::zero();
    for (i, n) in orders.iter().enumerate() {
        let name = format!("z{i}");
        t.insert(Atom::finite(&name, PositiveRational::integer(*n).unwrap().into())).unwrap();
        let rel = Relation::new(SesTerm::Free(1), SesTerm::Free(1), SesTerm::atom(&name));
        t = solve_profile(&name, &[rel], &t, r).unwrap().table;
        x = x.add(&KClass::atom(&name));
    }
    chi_eval(lambda_series(&x, r, &t).unwrap().coefficient(r), &t).unwrap()
}

#[test]
fn symbolic_lambda_agrees_with_direct_computation() {
    let mut s = Sampler::new(301);
    for _ in 0..10 {
        let m = s.finite_group(10);
        let p = free_resolution_z(&FPModule::integer_torsion(&m)).unwrap();
        for r in 2..=3 {
            let direct = chi_derived_exterior(r as i64, p.complex(), &HomologyOptions::default()).unwrap();
            assert_eq!(symbolic_chi(&m, r), ChiValue::from(direct), "M = {m:?}, r = {r}");
        }
    }
}
