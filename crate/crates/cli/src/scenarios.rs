//! Registry of named scenarios and their runner.

use std::collections::BTreeMap;
use std::time::Instant;

use dle_core::arithmetic::{self, CheckLine, SuiteReport};
use dle_core::complex::ChainComplex;
use dle_core::derived::{acyclic_exterior_check, derived_tensor_modules, ez_homology_compare, independence_report};
use dle_core::homology::{euler_char, HomologyOptions};
use dle_core::kgroup::{closed_form_check, ChiValue, ClosedForm};
use dle_core::module::{FPModule, FreeModule};
use dle_core::poly::IntPoly;
use dle_core::resolution::{dominate, free_resolution_z};
use dle_core::ring::is_prime;
use dle_core::samples::Sampler;
use dle_core::simplicial::{dold_kan_inverse, normalize, simplicial_exterior, verify_simplicial_identities};
use dle_core::Ring;
use rayon::prelude::*;

use crate::report::{CheckResult, Report};
use crate::CliError;

/// Static description of a scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScenarioInfo {
    pub name: &'static str,
    /// Parameter names with their defaults.
    pub params: &'static [(&'static str, &'static str)],
    pub anchor: &'static str,
}

const REGISTRY: &[ScenarioInfo] = &[
    ScenarioInfo {
        name: "acyclicity",
        params: &[("prime", "2"), ("rmax", "3")],
        anchor: "derived exterior powers of split acyclic free complexes are acyclic",
    },
    ScenarioInfo {
        name: "cor_4_5",
        params: &[("rmax", "12")],
        anchor: "chi(lambda^r C) = A^r for odd r and A^-r for even r when chi(C) = A",
    },
    ScenarioInfo {
        name: "d1",
        params: &[("poly", "x^2+1")],
        anchor: "Omega has order |disc f|; chi(O -> D^-1) = 1/|disc f|, chi(Omega -> 0) = |disc f|",
    },
    ScenarioInfo {
        name: "d1_lambda",
        params: &[("poly", "x^2+1"), ("rmax", "5")],
        anchor: "[lambda^r Omega] + [lambda^(r-1) Omega] = 0, so the chi values multiply to 1",
    },
    ScenarioInfo {
        name: "dold_kan_roundtrip",
        params: &[("seed", "1"), ("samples", "100")],
        anchor: "N(K(C)) = C, and K(C) with its exterior powers are simplicial modules",
    },
    ScenarioInfo {
        name: "ez_compare",
        params: &[("seed", "1"), ("samples", "50"), ("rmax", "3")],
        anchor: "N(K P (x) K Q) and P (x) Q have the same homology",
    },
    ScenarioInfo {
        name: "independence",
        params: &[("seed", "1"), ("samples", "20"), ("rmax", "3")],
        anchor: "the homology of N Lambda^k K P does not depend on the free resolution P",
    },
    ScenarioInfo {
        name: "lemma_4_2",
        params: &[("prime", "2"), ("rmax", "3")],
        anchor: "lambda^r(m) = (-1)^r [k], so chi(lambda^r m) = chi(k)^((-1)^r)",
    },
    ScenarioInfo {
        name: "lemma_4_3",
        params: &[("prime", "2"), ("rmax", "12"), ("expensive", "false")],
        anchor: "chi(lambda^r k) = chi(k)^r for odd r and chi(k)^-r for even r",
    },
    ScenarioInfo {
        name: "prop_4_4",
        params: &[("chi", "q"), ("rmax", "12")],
        anchor: "chi(lambda^r F) = chi(F)^r for odd r and chi(F)^-r for even r, F of finite support",
    },
    ScenarioInfo {
        name: "thm_1_3",
        params: &[("prime", "2"), ("f", "x"), ("g", "y")],
        anchor: "chi of derived tensor products: 1 against a point, p^(local multiplicity) for two curves",
    },
    ScenarioInfo {
        name: "thm_2_5",
        params: &[("prime", "2")],
        anchor: "lambda^2(m) = k, and chi(lambda^2 k) = chi(k)^-2",
    },
    ScenarioInfo {
        name: "thm_4_6",
        params: &[("rmax", "12")],
        anchor: "chi(lambda^r Omega) = A for odd r and A^-1 for even r",
    },
];

/// All scenarios in alphabetical order.
pub fn list_scenarios() -> &'static [ScenarioInfo] {
    REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static ScenarioInfo, CliError> {
    REGISTRY.iter().find(|s| s.name == name).ok_or_else(|| CliError::UnknownScenario(name.to_string()))
}

/// Parameter values supplied on the command line; unset values take the
/// scenario defaults.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub values: BTreeMap<String, String>,
    pub options: HomologyOptions,
}

impl Params {
    pub fn set(&mut self, name: &str, value: impl ToString) {
        self.values.insert(name.to_string(), value.to_string());
    }

    fn resolved(&self, info: &ScenarioInfo) -> BTreeMap<String, String> {
        let mut out: BTreeMap<String, String> =
            info.params.iter().map(|(k, d)| (k.to_string(), self.values.get(*k).cloned().unwrap_or_else(|| d.to_string()))).collect();
        if let Some(c) = self.options.cutoff {
            out.insert("cutoff".into(), c.to_string());
        }
        if let Some(w) = self.options.window {
            out.insert("window".into(), w.to_string());
        }
        out
    }
}

fn get<T: std::str::FromStr>(p: &BTreeMap<String, String>, name: &str) -> Result<T, CliError> {
    let raw = &p[name];
    raw.parse().map_err(|_| CliError::InvalidParameter(format!("{name} = {raw:?}")))
}

fn prime(p: &BTreeMap<String, String>) -> Result<u64, CliError> {
    let v: u64 = get(p, "prime")?;
    if !is_prime(v) {
        return Err(CliError::InvalidParameter(format!("prime = {v} is not prime")));
    }
    Ok(v)
}

fn rmax(p: &BTreeMap<String, String>) -> Result<usize, CliError> {
    let r: usize = get(p, "rmax")?;
    if r < 2 {
        return Err(CliError::InvalidParameter("rmax must be at least 2".into()));
    }
    Ok(r)
}

fn poly(p: &BTreeMap<String, String>) -> Result<IntPoly, CliError> {
    let f = IntPoly::parse(&p["poly"]).map_err(|e| CliError::InvalidParameter(e.to_string()))?;
    if !f.is_monic() {
        return Err(CliError::InvalidParameter(format!("poly = {f} is not monic of degree >= 1")));
    }
    Ok(f)
}

/// Collects timed checks for one scenario.
struct Checks {
    anchor: &'static str,
    out: Vec<CheckResult>,
}

impl Checks {
    /// Runs `f`; lines computed together share the elapsed time equally.
    /// An engine error becomes one failed check named `label`.
    fn suite(&mut self, label: &str, f: impl FnOnce() -> dle_core::Result<Vec<CheckResult>>) {
        let start = Instant::now();
        let result = f();
        let millis = start.elapsed().as_millis() as u64;
        match result {
            Ok(lines) => {
                let share = millis / lines.len().max(1) as u64;
                self.out.extend(lines.into_iter().map(|mut c| {
                    c.anchor = self.anchor.to_string();
                    c.millis = share;
                    c
                }));
            }
            Err(e) => {
                let mut c = CheckResult::error(label, "no error", &e, self.anchor);
                c.millis = millis;
                self.out.push(c);
            }
        }
    }

    fn lines(&mut self, label: &str, f: impl FnOnce() -> dle_core::Result<SuiteReport>) {
        self.suite(label, || Ok(f()?.lines.into_iter().map(from_line).collect()));
    }
}

fn from_line(l: CheckLine) -> CheckResult {
    CheckResult { name: l.name, expected: l.expected, actual: l.actual, pass: l.pass, anchor: String::new(), millis: 0 }
}

fn check(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> CheckResult {
    CheckResult::compare(name, expected, actual, "")
}

/// `passed/total` for a batch of sample outcomes.
fn tally(outcomes: &[bool]) -> String {
    format!("{}/{}", outcomes.iter().filter(|&&b| b).count(), outcomes.len())
}

fn closed_form(kind: ClosedForm, factors: &[ChiValue], rmax: usize, atom: &str) -> dle_core::Result<(Vec<CheckResult>, Vec<String>)> {
    let rep = closed_form_check(kind, factors, rmax)?;
    let checks = rep
        .rows
        .iter()
        .map(|row| CheckResult::compare(format!("chi(l{} {atom})", row.r), &row.expected, &row.derived, ""))
        .collect();
    Ok((checks, rep.steps.iter().map(ToString::to_string).collect()))
}

/// Runs one registered scenario.
pub fn run_scenario(name: &str, params: &Params) -> Result<Report, CliError> {
    let info = lookup(name)?;
    let p = params.resolved(info);
    let opts = &params.options;
    let mut report = Report::new(name, p.clone());
    let mut c = Checks { anchor: info.anchor, out: Vec::new() };
    match name {
        "acyclicity" => {
            let (q, top) = (prime(&p)?, rmax(&p)?);
            let z = Ring::integers();
            let mut s = Sampler::new(0);
            let zc = s.change_bases(&ChainComplex::identity_pair(&FreeModule::new(&z, 2), 1).direct_sum(&ChainComplex::identity_pair(&FreeModule::new(&z, 1), 2)));
            let b = Ring::graded(q, 2).map_err(|e| CliError::InvalidParameter(e.to_string()))?;
            let bc = ChainComplex::identity_pair(&FreeModule::graded(&b, vec![0, 1]).expect("graded ring"), 1);
            for (ring, cx) in [("Z", &zc), ("B", &bc)] {
                for k in 1..=top as i64 {
                    c.suite(&format!("l{k} acyclic over {ring}"), || {
                        let rep = acyclic_exterior_check(k, cx, opts)?;
                        let actual = if rep.acyclic { "acyclic".to_string() } else { format!("homology in degrees {:?}", rep.nonzero_degrees) };
                        Ok(vec![check(format!("l{k} acyclic over {ring}"), "acyclic", actual)])
                    });
                }
            }
        }
        "cor_4_5" | "prop_4_4" | "thm_4_6" => {
            let top = rmax(&p)?;
            let (kind, factors, atom) = match name {
                "prop_4_4" => {
                    let factors = p["chi"]
                        .split(',')
                        .map(|s| s.trim().parse::<ChiValue>())
                        .collect::<dle_core::Result<Vec<_>>>()
                        .map_err(|e| CliError::InvalidParameter(e.to_string()))?;
                    (ClosedForm::FiniteSupport, factors, "F")
                }
                "cor_4_5" => (ClosedForm::CurveClass, Vec::new(), "C"),
                _ => (ClosedForm::Differentials, Vec::new(), "Omega"),
            };
            let mut steps = Vec::new();
            c.suite("closed form", || {
                let (checks, s) = closed_form(kind, &factors, top, atom)?;
                steps = s;
                Ok(checks)
            });
            report.derivation = steps;
        }
        "d1" => {
            let f = poly(&p)?;
            c.lines("d1 checks", || arithmetic::d1_chi_check(&f, opts));
        }
        "d1_lambda" => {
            let (f, top) = (poly(&p)?, rmax(&p)?);
            c.lines("lambda relation", || arithmetic::d1_lambda_relation(&f, top, opts));
        }
        "dold_kan_roundtrip" => {
            let (seed, n): (u64, usize) = (get(&p, "seed")?, get(&p, "samples")?);
            let mut s = Sampler::new(seed);
            let corpus: Vec<ChainComplex> = (0..n).map(|_| s.z_complex()).collect();
            c.suite("N(K(C)) = C", || {
                let ok: Vec<bool> = corpus
                    .iter()
                    .map(|cx| normalize(&dold_kan_inverse(cx, cx.len().max(1))).map(|n| n.trimmed() == cx.trimmed()).unwrap_or(false))
                    .collect();
                Ok(vec![check("N(K(C)) = C", tally(&vec![true; n]), tally(&ok))])
            });
            c.suite("simplicial identities", || {
                let ok: Vec<bool> = corpus
                    .iter()
                    .map(|cx| {
                        let k = dold_kan_inverse(cx, 3);
                        verify_simplicial_identities(&k, 3).is_ok()
                            && verify_simplicial_identities(&simplicial_exterior(2, k.clone()), 3).is_ok()
                            && verify_simplicial_identities(&simplicial_exterior(3, k), 3).is_ok()
                    })
                    .collect();
                Ok(vec![check("simplicial identities for K, L2 K, L3 K", tally(&vec![true; n]), tally(&ok))])
            });
        }
        "ez_compare" => {
            let (seed, n, lmax): (u64, usize, usize) = (get(&p, "seed")?, get(&p, "samples")?, get(&p, "rmax")?);
            let mut s = Sampler::new(seed);
            let pairs: Vec<(ChainComplex, ChainComplex)> = (0..n).map(|_| (s.z_complex(), s.z_complex())).collect();
            c.suite("homology of N(KP (x) KQ)", || {
                let ok: Vec<bool> = pairs.iter().map(|(a, b)| ez_homology_compare(a, b, lmax, opts).map(|r| r.equal).unwrap_or(false)).collect();
                Ok(vec![check("H(N(KP (x) KQ)) = H(P (x) Q)", tally(&vec![true; n]), tally(&ok))])
            });
        }
        "independence" => {
            let (seed, n, top): (u64, usize, usize) = (get(&p, "seed")?, get(&p, "samples")?, rmax(&p)?);
            let mut s = Sampler::new(seed);
            let mut cases = Vec::new();
            for _ in 0..n {
                let orders = s.finite_group(12);
                let plain = free_resolution_z(&FPModule::integer_torsion(&orders)).expect("integer torsion module");
                cases.push((plain, s.padded_resolution(&orders)));
            }
            for k in 2..=top as i64 {
                c.suite(&format!("independence l{k}"), || {
                    let ok: Vec<bool> = cases
                        .iter()
                        .map(|(a, b)| independence_report(k, a.complex(), b.complex(), opts).map(|r| r.equal).unwrap_or(false))
                        .collect();
                    Ok(vec![check(format!("H(l{k}) independent of resolution"), tally(&vec![true; n]), tally(&ok))])
                });
            }
            c.suite("domination", || {
                let ok: Vec<bool> = cases.iter().map(|(a, b)| dominate(a, b).and_then(|w| w.verify(a, b)).unwrap_or(false)).collect();
                Ok(vec![check("a common dominating resolution exists", tally(&vec![true; n]), tally(&ok))])
            });
        }
        "lemma_4_2" => {
            let (q, top) = (prime(&p)?, rmax(&p)?);
            for r in 2..=top.min(3) {
                c.lines(&format!("chi(l{r} m)"), || arithmetic::lemma_4_2_direct(q, r, opts));
            }
        }
        "lemma_4_3" => {
            let (q, top, expensive) = (prime(&p)?, rmax(&p)?, get::<bool>(&p, "expensive")?);
            c.lines("chi(l^r k)", || arithmetic::lemma_4_3_direct(q, top, expensive, opts));
        }
        "thm_1_3" => {
            let q = prime(&p)?;
            c.suite("chi(Z/p (x)L Z/p)", || {
                let zp = FPModule::integer_torsion(&[q as i64]);
                let chi = euler_char(&derived_tensor_modules(&zp, &zp)?, opts)?;
                Ok(vec![check("chi(Z/p (x)L Z/p)", "1", chi)])
            });
            c.lines("local suite", || arithmetic::thm_1_3_suite(q, &p["f"], &p["g"], opts));
        }
        "thm_2_5" => {
            let q = prime(&p)?;
            c.lines("lambda^2 suite", || arithmetic::thm_2_5_suite(q, opts));
        }
        _ => unreachable!("registered scenario without a runner"),
    }
    report.checks = c.out;
    Ok(report)
}

/// Runs scenarios on up to `threads` workers; the output order follows
/// `names`.
pub fn run_many(names: &[String], params: &Params, threads: usize) -> Result<Vec<Report>, CliError> {
    for n in names {
        lookup(n)?;
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().map_err(|e| CliError::Io(e.to_string()))?;
    pool.install(|| names.par_iter().map(|n| run_scenario(n, params)).collect())
}
