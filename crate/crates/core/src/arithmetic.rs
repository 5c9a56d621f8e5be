//! Concrete arithmetic cases: monogenic orders `Z[x]/(f)` with their module
//! of differentials, and the residue field and maximal ideal of
//! `F_p[x, y]` at the origin.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::complex::{koszul_complex, tot_tensor, ChainComplex};
use crate::derived::derived_exterior;
use crate::error::{Error, Result};
use crate::homology::{euler_char, homology, GroupInvariants, HomologyOptions};
use crate::kgroup::{point_model, solve_profile, Atom, AtomTable, ChiValue, Relation, SesTerm};
use crate::linalg::{cokernel_invariants, Matrix};
use crate::module::{FPModule, FreeModule};
use crate::poly::IntPoly;
use crate::rational::PositiveRational;
use crate::resolution::{resolve, verify_resolution, Resolution};
use crate::ring::{poly_discriminant, Elem, Ring};

/// One asserted comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckLine {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        CheckLine { name: name.into(), pass: expected == actual, expected, actual }
    }

    /// A line whose outcome is decided by the caller.
    pub fn with_outcome(name: impl Into<String>, expected: impl ToString, actual: impl ToString, pass: bool) -> Self {
        CheckLine { name: name.into(), expected: expected.to_string(), actual: actual.to_string(), pass }
    }
}

/// Lines produced by one suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    fn push(&mut self, line: CheckLine) {
        self.lines.push(line);
    }
}

fn rational(n: &BigInt) -> PositiveRational {
    PositiveRational::new(n.clone(), 1).expect("positive order")
}

/// `O = Z[x]/(f)` with `Ω = O / (f'(x))`.
#[derive(Clone, Debug)]
pub struct MonogenicCase {
    pub f: IntPoly,
    pub order: Ring,
    pub omega: FPModule,
    pub disc: BigInt,
}

impl MonogenicCase {
    pub fn new(f: IntPoly) -> Result<MonogenicCase> {
        let order = Ring::order(f.clone())?;
        let derivative = order.order_from_poly(&f.derivative());
        let one = FreeModule::new(&order, 1);
        let omega = FPModule::from_matrix(one.clone(), one, Matrix::from_rows(&order, vec![vec![derivative]])?)?;
        let disc = poly_discriminant(&f);
        Ok(MonogenicCase { f, order, omega, disc })
    }

    pub fn derivative(&self) -> Elem {
        self.order.order_from_poly(&self.f.derivative())
    }

    /// `|Ω|` from the invariant factors of the restricted presentation;
    /// `ZeroDerivative` when `Ω` is infinite.
    pub fn omega_order(&self) -> Result<BigInt> {
        let inv = cokernel_invariants(self.omega.relations().matrix())?;
        inv.order().ok_or_else(|| Error::ZeroDerivative(self.f.to_string()))
    }

    /// `O --f'--> O` with the source in cohomological degree 0, stored as a
    /// chain complex with the source in degree 1; cohomological `χ` is the
    /// inverse of the chain `χ`.
    pub fn inverse_different_complex(&self) -> ChainComplex {
        Resolution::from_presentation(&self.omega).complex().clone()
    }
}

/// `|Ω| = |disc f|`, `H^0 = 0` and `H^1 ≅ Ω` for `O → D^{-1}`,
/// `χ(O → D^{-1}) = 1/|disc|` and `χ(Ω → 0) = |disc|`.
pub fn d1_chi_check(f: &IntPoly, opts: &HomologyOptions) -> Result<SuiteReport> {
    let case = MonogenicCase::new(f.clone())?;
    let order = case.omega_order()?;
    let mut rep = SuiteReport::default();
    rep.push(CheckLine::new("|Omega| = |disc f|", case.disc.abs(), &order));
    let c = case.inverse_different_complex();
    let h = homology(&c, opts)?;
    let omega_h = GroupInvariants::Abelian(cokernel_invariants(case.omega.relations().matrix())?);
    rep.push(CheckLine::new(
        "cohomology of O -> D^-1",
        format!("H^0 = 0, H^1 = {omega_h}"),
        format!("H^0 = {}, H^1 = {}", h.degree(1), h.degree(0)),
    ));
    let chi0 = euler_char(&c, opts)?.inv();
    rep.push(CheckLine::new("chi(C_0)", rational(&case.disc.abs()).inv(), &chi0));
    // Ω -> 0 has the single group Ω in degree 0
    rep.push(CheckLine::new("chi(C_1)", rational(&case.disc.abs()), rational(&order)));
    Ok(rep)
}

/// `χ(λ̃^r Ω) χ(λ̃^{r-1} Ω) = 1`: computed directly for `r <= min(rmax, 3)`
/// and through the symbolic recursion for all `2 <= r <= rmax`.
pub fn d1_lambda_relation(f: &IntPoly, rmax: usize, opts: &HomologyOptions) -> Result<SuiteReport> {
    if rmax < 2 {
        return Err(Error::InvalidParameter("rmax must be at least 2".into()));
    }
    let case = MonogenicCase::new(f.clone())?;
    let order = case.omega_order()?;
    let p = resolve(&case.omega)?;
    let mut rep = SuiteReport::default();
    let mut chis = vec![PositiveRational::one()];
    for r in 1..=rmax.min(3) {
        chis.push(euler_char(&derived_exterior(r as i64, p.complex())?, opts)?);
    }
    rep.push(CheckLine::new("chi(l1 Omega) = |disc|", rational(&case.disc.abs()), &chis[1]));
    for r in 2..chis.len() {
        rep.push(CheckLine::new(format!("direct chi(l{r} Omega) chi(l{} Omega)", r - 1), "1", chis[r].mul(&chis[r - 1])));
    }
    let table = AtomTable::new().with(Atom::finite("Omega", rational(&order).into()))?;
    let rel = Relation::new(SesTerm::Free(1), SesTerm::Free(1), SesTerm::atom("Omega"));
    let d = solve_profile("Omega", &[rel], &table, rmax)?;
    let atom = d.table.get("Omega")?;
    for r in 2..=rmax {
        let prod = atom.c(r).unwrap().mul(atom.c(r - 1).unwrap());
        rep.push(CheckLine::new(format!("symbolic c_{r} c_{}", r - 1), "1", prod));
        if r < chis.len() {
            rep.push(CheckLine::new(format!("symbolic c_{r} matches direct"), &chis[r], atom.c(r).unwrap()));
        }
    }
    Ok(rep)
}

/// Result of the sweep over small monic polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantSweep {
    pub cases: usize,
    pub zero_discriminant: usize,
    /// Polynomials where `|Ω| ≠ |disc f|`.
    pub mismatches: Vec<IntPoly>,
}

/// Compares `|Ω|` with `|disc f|` for every monic `f` of degree
/// `1..=max_degree` with lower coefficients in `[-bound, bound]`; a zero
/// discriminant must coincide with infinite `Ω`.
pub fn discriminant_sweep(max_degree: usize, bound: i64) -> Result<DiscriminantSweep> {
    let mut out = DiscriminantSweep { cases: 0, zero_discriminant: 0, mismatches: Vec::new() };
    let width = (2 * bound + 1) as usize;
    for deg in 1..=max_degree {
        for idx in 0..width.pow(deg as u32) {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut rest = idx;
            for _ in 0..deg {
                coeffs.push((rest % width) as i64 - bound);
                rest /= width;
            }
            coeffs.push(1);
            let f = IntPoly::from_i64s(&coeffs);
            let case = MonogenicCase::new(f.clone())?;
            out.cases += 1;
            let ok = match case.omega_order() {
                Ok(n) => n == case.disc.abs(),
                Err(Error::ZeroDerivative(_)) => {
                    out.zero_discriminant += 1;
                    case.disc.is_zero()
                }
                Err(e) => return Err(e),
            };
            if !ok {
                out.mismatches.push(f);
            }
        }
    }
    Ok(out)
}

/// `B = F_p[x, y]` graded, `m = (x, y)` and `k = B/m` with resolutions.
#[derive(Clone, Debug)]
pub struct LocalSurfaceCase {
    pub p: u64,
    pub ring: Ring,
    pub m: FPModule,
    pub k: FPModule,
    /// `0 -> B(-2) --(y, -x)--> B(-1)^2`.
    pub m_resolution: Resolution,
    /// The Koszul complex on `x, y`.
    pub koszul: Resolution,
}

impl LocalSurfaceCase {
    pub fn new(p: u64, opts: &HomologyOptions) -> Result<LocalSurfaceCase> {
        let ring = Ring::graded(p, 2)?;
        let (x, y) = (ring.generator(0), ring.generator(1));
        let m = FPModule::from_matrix(
            FreeModule::graded(&ring, vec![1, 1])?,
            FreeModule::graded(&ring, vec![2])?,
            Matrix::from_rows(&ring, vec![vec![y.clone()], vec![ring.neg(&x)]])?,
        )?;
        let k = FPModule::from_matrix(
            FreeModule::graded(&ring, vec![0])?,
            FreeModule::graded(&ring, vec![1, 1])?,
            Matrix::from_rows(&ring, vec![vec![x.clone(), y.clone()]])?,
        )?;
        let m_resolution = Resolution::from_presentation(&m);
        let koszul = Resolution::with_identity_augmentation(koszul_complex(&ring, &[x, y])?, &k)?;
        let case = LocalSurfaceCase { p, ring, m, k, m_resolution, koszul };
        for (res, module) in [(&case.m_resolution, &case.m), (&case.koszul, &case.k)] {
            if !verify_resolution(res.complex(), module, opts)?.passed {
                return Err(Error::NoResolution("supplied resolution failed verification".into()));
            }
        }
        Ok(case)
    }

    /// `0 -> B(-deg f) --f--> B`.
    pub fn hypersurface(&self, f: &Elem) -> Result<ChainComplex> {
        let d = self.ring.homogeneous_degree(f).ok_or_else(|| Error::InhomogeneousElement(self.ring.display(f)))?;
        koszul_complex(&self.ring, std::slice::from_ref(f)).map(|c| {
            debug_assert_eq!(c.term(1).degree(0), d as i64);
            c
        })
    }

    fn chi_prime(&self, e: i64) -> PositiveRational {
        PositiveRational::prime_power(self.p, e)
    }
}

/// `χ(k ⊗^L k) = 1`, `χ(B/(f) ⊗^L k) = 1` and `χ(B/(f) ⊗^L B/(g)) = p^{deg f deg g}`.
pub fn thm_1_3_suite(p: u64, f: &str, g: &str, opts: &HomologyOptions) -> Result<SuiteReport> {
    let case = LocalSurfaceCase::new(p, opts)?;
    let b = &case.ring;
    let (fe, ge) = (b.parse_elem(f)?, b.parse_elem(g)?);
    let (df, dg) = match (b.homogeneous_degree(&fe), b.homogeneous_degree(&ge)) {
        (Some(a), Some(c)) if !b.is_zero(&fe) && !b.is_zero(&ge) => (a as i64, c as i64),
        _ => return Err(Error::InvalidParameter("f and g must be nonzero and homogeneous".into())),
    };
    let lenient = opts.clone().lenient();
    let mut rep = SuiteReport::default();
    let koszul = case.koszul.complex();
    rep.push(CheckLine::new("chi(k (x)L k)", "1", euler_char(&tot_tensor(koszul, koszul)?, opts)?));
    let bf = case.hypersurface(&fe)?;
    let bg = case.hypersurface(&ge)?;
    rep.push(CheckLine::new("chi(B/(f) (x)L k)", "1", euler_char(&tot_tensor(&bf, koszul)?, opts)?));
    let fg = tot_tensor(&bf, &bg)?;
    let h = homology(&fg, &lenient)?;
    let length = match h.degree(0) {
        GroupInvariants::Graded { data, .. } => data.length(),
        _ => None,
    };
    let Some(length) = length.filter(|_| h.degree(1).is_zero()) else {
        return Err(Error::CommonComponent);
    };
    let mult = df * dg;
    rep.push(CheckLine::new("length B/(f,g)", mult, length));
    rep.push(CheckLine::new("chi(B/(f) (x)L B/(g))", case.chi_prime(mult), euler_char(&fg, opts)?));
    Ok(rep)
}

/// `χ(λ̃^2 m) = χ(k)`, where the check also requires the homology of
/// `λ̃^2(m)` to sit in degree 0 with the Hilbert function of `k` (up to a
/// shift of internal degree), and `χ(λ̃^2 k) = χ(k)^{-2}`.
pub fn thm_2_5_suite(p: u64, opts: &HomologyOptions) -> Result<SuiteReport> {
    let case = LocalSurfaceCase::new(p, opts)?;
    let mut rep = SuiteReport::default();
    let l2m = derived_exterior(2, case.m_resolution.complex())?;
    let h = homology(&l2m, opts)?;
    let hilbert = |g: &GroupInvariants| match g {
        GroupInvariants::Graded { data, .. } => Some(data.hilbert.clone()),
        _ => None,
    };
    let hk = homology(case.koszul.complex(), opts)?;
    let chi = euler_char(&l2m, opts)?;
    let actual = match h.top_nonzero() {
        Some(0) if hilbert(h.degree(0)) == hilbert(hk.degree(0)) => chi.to_string(),
        Some(0) => format!("{chi} (H_0 is {}, not k)", h.degree(0)),
        top => format!("{chi} (homology up to degree {top:?})"),
    };
    rep.push(CheckLine::new("chi(l2 m) = chi(k), l2 m = k", case.chi_prime(1), actual));
    let l2k = derived_exterior(2, case.koszul.complex())?;
    rep.push(CheckLine::new("chi(l2 k) = chi(k)^-2", case.chi_prime(-2), euler_char(&l2k, opts)?));
    Ok(rep)
}

/// `χ(λ̃^r m) = p^{(-1)^r}` for `r ∈ {2, 3}`.
pub fn lemma_4_2_direct(p: u64, r: usize, opts: &HomologyOptions) -> Result<SuiteReport> {
    if !(2..=3).contains(&r) {
        return Err(Error::InvalidParameter("direct computation supports r = 2, 3".into()));
    }
    let case = LocalSurfaceCase::new(p, opts)?;
    let chi = euler_char(&derived_exterior(r as i64, case.m_resolution.complex())?, opts)?;
    let sign = if r % 2 == 0 { 1 } else { -1 };
    let mut rep = SuiteReport::default();
    rep.push(CheckLine::new(format!("chi(l{r} m)"), case.chi_prime(sign), chi));
    Ok(rep)
}

/// `χ(λ̃^r k)` directly for `r = 2` (and `r = 3` when `expensive`), and the
/// symbolic recursion for `2 <= r <= rmax`.
pub fn lemma_4_3_direct(p: u64, rmax: usize, expensive: bool, opts: &HomologyOptions) -> Result<SuiteReport> {
    let case = LocalSurfaceCase::new(p, opts)?;
    let expected = |r: usize| {
        let r = r as i64;
        case.chi_prime(if r % 2 == 1 { r } else { -r })
    };
    let mut rep = SuiteReport::default();
    let top = if expensive { 3 } else { 2 };
    for r in 2..=top {
        let chi = euler_char(&derived_exterior(r as i64, case.koszul.complex())?, opts)?;
        rep.push(CheckLine::new(format!("direct chi(l{r} k)"), expected(r), chi));
    }
    let chi_k: ChiValue = case.chi_prime(1).into();
    let (atoms, relations) = point_model("k", &chi_k);
    let table = atoms.into_iter().try_fold(AtomTable::new(), AtomTable::with)?;
    let d = solve_profile("k", &relations, &table, rmax.max(2))?;
    let k = d.table.get("k")?;
    for r in 2..=rmax.max(2) {
        rep.push(CheckLine::new(format!("symbolic c_{r}(k)"), ChiValue::from(expected(r)), k.c(r).unwrap()));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> HomologyOptions {
        HomologyOptions::default()
    }

    fn poly(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn line<'a>(rep: &'a SuiteReport, name: &str) -> &'a CheckLine {
        rep.lines.iter().find(|l| l.name == name).unwrap()
    }

    #[test]
    fn gaussian_and_golden_orders() {
        let rep = d1_chi_check(&poly("x^2+1"), &o()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(line(&rep, "chi(C_0)").actual, "1/4");
        let golden = d1_chi_check(&poly("x^2-x-1"), &o()).unwrap();
        assert_eq!(line(&golden, "chi(C_0)").actual, "1/5");
        let linear = d1_chi_check(&poly("x"), &o()).unwrap();
        assert!(linear.passed());
        assert_eq!(line(&linear, "chi(C_1)").actual, "1");
    }

    #[test]
    fn zero_derivative_is_reported() {
        assert!(matches!(d1_chi_check(&poly("x^2"), &o()), Err(Error::ZeroDerivative(_))));
    }

    #[test]
    fn d1_lambda() {
        let rep = d1_lambda_relation(&poly("x^2+1"), 5, &o()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(d1_lambda_relation(&poly("x"), 4, &o()).unwrap().passed());
    }

    #[test]
    fn small_sweep() {
        let s = discriminant_sweep(2, 2).unwrap();
        assert_eq!(s.cases, 5 + 25);
        assert!(s.mismatches.is_empty());
        assert!(s.zero_discriminant > 0);
    }

    #[test]
    fn local_suites() {
        for (f, g, mult) in [("x", "y", 1), ("x", "y^2", 2), ("x^2", "y^3", 6)] {
            let rep = thm_1_3_suite(3, f, g, &o()).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(line(&rep, "length B/(f,g)").actual, mult.to_string());
        }
        assert!(matches!(thm_1_3_suite(2, "x*y", "x", &o()), Err(Error::CommonComponent)));
        for p in [2, 3] {
            let t = thm_2_5_suite(p, &o()).unwrap();
            assert!(t.passed(), "{t:?}");
            assert_eq!(t.lines.len(), 2);
        }
        assert!(lemma_4_2_direct(2, 3, &o()).unwrap().passed());
        assert!(lemma_4_3_direct(3, 6, false, &o()).unwrap().passed());
    }
}
