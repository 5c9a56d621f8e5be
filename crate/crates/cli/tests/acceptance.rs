//! End-to-end acceptance criteria. Each criterion prints exactly one
//! PASS/FAIL line; the test fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use dle_cli::report::Report;
use dle_cli::scenarios::{run_scenario, Params};
use dle_core::arithmetic::discriminant_sweep;
use dle_core::derived::chi_derived_exterior;
use dle_core::homology::HomologyOptions;
use dle_core::kgroup::{chi_eval, lambda_series, solve_profile, Atom, AtomTable, ChiValue, KClass, Relation, SesTerm};
use dle_core::module::FPModule;
use dle_core::resolution::free_resolution_z;
use dle_core::samples::Sampler;
use dle_core::PositiveRational;

type Outcome = Result<(), String>;

fn run(name: &str, params: &[(&str, &str)]) -> Result<Report, String> {
    let mut p = Params::default();
    for (k, v) in params {
        p.set(k, v);
    }
    run_scenario(name, &p).map_err(|e| format!("{name}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passing(name: &str, params: &[(&str, &str)]) -> Result<Report, String> {
    let r = run(name, params)?;
    let failed: Vec<String> = r.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.actual)).collect();
    ensure(failed.is_empty() && !r.checks.is_empty(), || format!("{name} {params:?}: {}", failed.join("; ")))?;
    Ok(r)
}

fn actual<'a>(r: &'a Report, name: &str) -> Result<&'a str, String> {
    r.checks.iter().find(|c| c.name == name).map(|c| c.actual.as_str()).ok_or_else(|| format!("{}: no check named {name:?}", r.scenario))
}

fn prime_power(p: u64, e: i64) -> String {
    PositiveRational::prime_power(p, e).to_string()
}

fn exterior_square_of_point() -> Outcome {
    for p in [2u64, 3, 5] {
        let r = passing("thm_2_5", &[("prime", &p.to_string())])?;
        ensure(r.checks.len() == 2, || format!("p = {p}: {} checks", r.checks.len()))?;
        ensure(actual(&r, "chi(l2 m) = chi(k), l2 m = k")? == p.to_string(), || format!("p = {p}: chi(l2 m)"))?;
        ensure(actual(&r, "chi(l2 k) = chi(k)^-2")? == prime_power(p, -2), || format!("p = {p}: chi(l2 k)"))?;
    }
    Ok(())
}

fn exterior_cube_of_maximal_ideal() -> Outcome {
    for p in [2u64, 3] {
        let r = passing("lemma_4_2", &[("prime", &p.to_string())])?;
        ensure(actual(&r, "chi(l3 m)")? == prime_power(p, -1), || format!("p = {p}: chi(l3 m)"))?;
    }
    Ok(())
}

fn residue_field_powers() -> Outcome {
    for p in [2u64, 3, 5] {
        let r = passing("lemma_4_3", &[("prime", &p.to_string()), ("rmax", "12")])?;
        ensure(actual(&r, "direct chi(l2 k)")? == prime_power(p, -2), || format!("p = {p}: direct r = 2"))?;
        for k in 2..=12i64 {
            let e = if k % 2 == 1 { k } else { -k };
            ensure(actual(&r, &format!("symbolic c_{k}(k)"))? == prime_power(p, e), || format!("p = {p}: symbolic r = {k}"))?;
        }
    }
    let r = passing("lemma_4_3", &[("prime", "2"), ("rmax", "3"), ("expensive", "true")])?;
    ensure(actual(&r, "direct chi(l3 k)")? == "8", || "p = 2: direct r = 3".into())
}

fn local_intersections() -> Outcome {
    for p in [2u64, 3] {
        for (f, g, mult) in [("x", "y", 1i64), ("x", "y^2", 2), ("x^2", "y^3", 6)] {
            let r = passing("thm_1_3", &[("prime", &p.to_string()), ("f", f), ("g", g)])?;
            ensure(actual(&r, "chi(Z/p (x)L Z/p)")? == "1", || "chi over Z".into())?;
            ensure(actual(&r, "chi(k (x)L k)")? == "1", || "chi(k (x)L k)".into())?;
            ensure(actual(&r, "chi(B/(f) (x)L k)")? == "1", || "chi(B/(f) (x)L k)".into())?;
            ensure(actual(&r, "length B/(f,g)")? == mult.to_string(), || format!("p = {p}, ({f}, {g}): multiplicity"))?;
            ensure(actual(&r, "chi(B/(f) (x)L B/(g))")? == prime_power(p, mult), || format!("p = {p}, ({f}, {g}): chi"))?;
        }
    }
    Ok(())
}

fn monogenic_orders() -> Outcome {
    let sweep = discriminant_sweep(4, 5).map_err(|e| e.to_string())?;
    ensure(sweep.cases == 11 + 121 + 1331 + 14641, || format!("{} polynomials swept", sweep.cases))?;
    ensure(sweep.mismatches.is_empty(), || format!("|Omega| != |disc| for {:?}", sweep.mismatches))?;
    for f in ["x^2+1", "x^2-x-1", "x^3-x-1"] {
        let d1 = passing("d1", &[("poly", f)])?;
        ensure(d1.checks.len() == 4, || format!("{f}: {} checks", d1.checks.len()))?;
        let l = passing("d1_lambda", &[("poly", f), ("rmax", "3")])?;
        actual(&l, "direct chi(l2 Omega) chi(l1 Omega)")?;
        actual(&l, "direct chi(l3 Omega) chi(l2 Omega)")?;
    }
    Ok(())
}

fn dold_kan_round_trip() -> Outcome {
    passing("dold_kan_roundtrip", &[("samples", "100")]).map(|_| ())
}

fn resolution_independence() -> Outcome {
    let r = passing("independence", &[("samples", "20"), ("rmax", "3")])?;
    ensure(actual(&r, "H(l2) independent of resolution")? == "20/20", || "k = 2".into())?;
    ensure(actual(&r, "H(l3) independent of resolution")? == "20/20", || "k = 3".into())?;
    passing("acyclicity", &[("rmax", "3")]).map(|_| ())
}

fn shuffle_comparison() -> Outcome {
    let r = passing("ez_compare", &[("samples", "50")])?;
    ensure(actual(&r, "H(N(KP (x) KQ)) = H(P (x) Q)")? == "50/50", || "sample count".into())
}

/// `χ(λ^r [M])` from cyclic atoms seeded only with `c_1 = n_i` and the
/// relation `0 -> Z -> Z -> Z/n_i -> 0`.
fn symbolic_chi(orders: &[i64], r: usize) -> Result<ChiValue, String> {
    let err = |e: dle_core::Error| e.to_string();
    let mut t = AtomTable::new();
    let mut x = KClass::zero();
    for (i, n) in orders.iter().enumerate() {
        let name = format!("z{i}");
        t.insert(Atom::finite(&name, PositiveRational::integer(*n).map_err(err)?.into())).map_err(err)?;
        let rel = Relation::new(SesTerm::Free(1), SesTerm::Free(1), SesTerm::atom(&name));
        t = solve_profile(&name, &[rel], &t, r).map_err(err)?.table;
        x = x.add(&KClass::atom(&name));
    }
    chi_eval(lambda_series(&x, r, &t).map_err(err)?.coefficient(r), &t).map_err(err)
}

fn class_level_lambda() -> Outcome {
    let mut s = Sampler::new(2024);
    let opts = HomologyOptions::default();
    for _ in 0..20 {
        let m = s.finite_group(12);
        let order = PositiveRational::integer(m.iter().product::<i64>()).unwrap();
        let p = free_resolution_z(&FPModule::integer_torsion(&m)).map_err(|e| e.to_string())?;
        for (r, closed) in [(2usize, order.inv()), (3, order.clone())] {
            let direct = chi_derived_exterior(r as i64, p.complex(), &opts).map_err(|e| e.to_string())?;
            ensure(direct == closed, || format!("M = {m:?}, r = {r}: direct {direct}, closed form {closed}"))?;
            let symbolic = symbolic_chi(&m, r)?;
            ensure(symbolic == ChiValue::from(direct.clone()), || format!("M = {m:?}, r = {r}: symbolic {symbolic}, direct {direct}"))?;
        }
    }
    Ok(())
}

fn symbolic_chain() -> Outcome {
    let exponent = |r: &Report, name: &str, sym: &str| -> Result<i64, String> {
        let v: ChiValue = actual(r, name)?.parse().map_err(|e: dle_core::Error| e.to_string())?;
        Ok(v.exponent(sym))
    };
    let f = passing("prop_4_4", &[("chi", "q"), ("rmax", "12")])?;
    let c = passing("cor_4_5", &[("rmax", "12")])?;
    let o = passing("thm_4_6", &[("rmax", "12")])?;
    for r in 2..=12i64 {
        let sign = if r % 2 == 1 { 1 } else { -1 };
        ensure(exponent(&f, &format!("chi(l{r} F)"), "q")? == sign * r, || format!("prop_4_4 r = {r}"))?;
        ensure(exponent(&c, &format!("chi(l{r} C)"), "A")? == sign * r, || format!("cor_4_5 r = {r}"))?;
        ensure(exponent(&o, &format!("chi(l{r} Omega)"), "A")? == sign, || format!("thm_4_6 r = {r}"))?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("lambda^2 of m is k and chi(lambda^2 k) = p^-2, p = 2, 3, 5", exterior_square_of_point, 390),
        ("chi(lambda^3 m) = 1/p, p = 2, 3", exterior_cube_of_maximal_ideal, 360),
        ("chi(lambda^r k) = chi(k)^(+-r): symbolic r <= 12, direct r = 2 and r = 3 at p = 2", residue_field_powers, 600),
        ("derived tensor products at a point and local multiplicities 1, 2, 6", local_intersections, 5),
        ("monogenic orders: |Omega| = |disc| sweep, chi(C_0), chi(C_1), lambda relation", monogenic_orders, 60),
        ("N(K(C)) = C and simplicial identities on 100 random complexes", dold_kan_round_trip, 30),
        ("resolution independence for 20 groups and acyclicity over Z and F_2[x,y]", resolution_independence, 60),
        ("simplicial and total tensor products agree on 50 random pairs", shuffle_comparison, 60),
        ("symbolic lambda^r [M] equals direct chi on 20 groups; chi = 1/|M|, |M|", class_level_lambda, 120),
        ("closed forms for F, C and Omega for 2 <= r <= 12", symbolic_chain, 1),
    ];
    let mut out = std::io::stdout();
    let mut failures = Vec::new();
    for (i, (label, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*limit) {
            outcome = Err(format!("took {elapsed:.1?}, limit {limit} s"));
        }
        let line = match &outcome {
            Ok(()) => format!("PASS criterion {}: {label} ({elapsed:.2?})", i + 1),
            Err(e) => format!("FAIL criterion {}: {label} ({elapsed:.2?}): {e}", i + 1),
        };
        // written past the harness capture so every run shows the summary
        writeln!(out, "{line}").unwrap();
        if outcome.is_err() {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
