//! Line-oriented script format for ad-hoc computations.
//!
//! ```text
//! ring R = Z | GF <p> vars <n> | ORDER <poly>
//! module M over R gens <shifts...> rels [<relation>; <relation>; ...]
//! complex C = koszul(R; <elem>, <elem>, ...)
//! complex C = terms R [<shifts> | <shifts> | ...] diffs [<matrix> | ...]
//! compute X = dlambda <k> <M|C> | dtensor <A> <B> | cone <S> <T> maps [<matrix> | ...] | homology <C>
//! assert chi <X> = <a/b>
//! assert homology <X> deg <n> invariants [<ints>] | hilbert [<ints>] (at <d>)
//! ```
//!
//! Each relation lists one entry per generator. A term of an explicit
//! complex lists the internal degrees of its generators (zeros over
//! ungraded rings), so its rank is the number of entries. Matrices are rows
//! separated by `;`; the `n`-th differential maps term `n` to term `n - 1`.

use std::collections::HashMap;
use std::path::Path;

use dle_core::complex::{cone, koszul_complex, ChainComplex, ComplexMap};
use dle_core::derived::{derived_exterior, derived_tensor};
use dle_core::homology::{euler_char, homology, GroupInvariants, HomologyData, HomologyOptions};
use dle_core::linalg::{cokernel_invariants, Matrix};
use dle_core::module::{FPModule, FreeMap, FreeModule};
use dle_core::poly::IntPoly;
use dle_core::resolution::resolve;
use dle_core::{Elem, PositiveRational, Ring};

use crate::report::{CheckResult, Report};
use crate::CliError;

#[derive(Clone, Debug)]
enum Value {
    Ring(Ring),
    Module(FPModule),
    Complex(ChainComplex),
    Homology(HomologyData),
    /// Definition whose computation failed with the named engine error.
    Failed(&'static str),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Module(_) => "module",
            Value::Complex(_) => "complex",
            Value::Homology(_) => "homology",
            Value::Failed(_) => "failed definition",
        }
    }
}

struct Interpreter<'a> {
    env: HashMap<String, Value>,
    opts: &'a HomologyOptions,
    checks: Vec<CheckResult>,
    line: usize,
}

/// Runs the script at `path`.
pub fn run_script(path: &Path, opts: &HomologyOptions) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    run_script_text(&text, &path.display().to_string(), opts)
}

/// Runs script source; `origin` is echoed as the `path` parameter.
pub fn run_script_text(text: &str, origin: &str, opts: &HomologyOptions) -> Result<Report, CliError> {
    let mut it = Interpreter { env: HashMap::new(), opts, checks: Vec::new(), line: 0 };
    for (i, raw) in text.lines().enumerate() {
        it.line = i + 1;
        let stmt = raw.split('#').next().unwrap_or("").trim();
        if !stmt.is_empty() {
            it.statement(stmt)?;
        }
    }
    let mut params = std::collections::BTreeMap::new();
    params.insert("path".to_string(), origin.to_string());
    let mut report = Report::new("script", params);
    report.checks = it.checks;
    Ok(report)
}

/// Splits `s` at the first occurrence of `keyword` as a separate word.
fn split_keyword<'s>(s: &'s str, keyword: &str) -> Option<(&'s str, &'s str)> {
    let mut from = 0;
    while let Some(pos) = s[from..].find(keyword) {
        let at = from + pos;
        let end = at + keyword.len();
        let before = at == 0 || s[..at].ends_with(char::is_whitespace);
        let after = end == s.len() || s[end..].starts_with(|c: char| c.is_whitespace() || c == '[' || c == '(');
        if before && after {
            return Some((s[..at].trim(), s[end..].trim()));
        }
        from = end;
    }
    None
}

impl Interpreter<'_> {
    fn parse_err(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse { line: self.line, msg: msg.into() }
    }

    fn anchor(&self) -> String {
        format!("script line {}", self.line)
    }

    fn lookup(&self, name: &str) -> Result<&Value, CliError> {
        self.env.get(name).ok_or_else(|| CliError::UndefinedName { line: self.line, name: name.to_string() })
    }

    /// The ring bound to `name`; `Err(error name)` if its definition failed.
    fn ring(&self, name: &str) -> Result<Result<Ring, &'static str>, CliError> {
        match self.lookup(name)? {
            Value::Ring(r) => Ok(Ok(r.clone())),
            Value::Failed(e) => Ok(Err(*e)),
            v => Err(self.parse_err(format!("{name} is a {}, expected a ring", v.kind()))),
        }
    }

    fn ident<'s>(&self, s: &'s str) -> Result<&'s str, CliError> {
        let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(s)
        } else {
            Err(self.parse_err(format!("bad identifier {s:?}")))
        }
    }

    /// `<id> = <rest>`
    fn binding<'s>(&self, s: &'s str) -> Result<(&'s str, &'s str), CliError> {
        let (id, rest) = s.split_once('=').ok_or_else(|| self.parse_err("expected '<id> = ...'"))?;
        Ok((self.ident(id.trim())?, rest.trim()))
    }

    /// Contents of one `[...]` group and the text after it.
    fn bracket<'s>(&self, s: &'s str) -> Result<(&'s str, &'s str), CliError> {
        let s = s.trim();
        let inner = s.strip_prefix('[').ok_or_else(|| self.parse_err("expected '['"))?;
        let close = inner.find(']').ok_or_else(|| self.parse_err("missing ']'"))?;
        Ok((&inner[..close], inner[close + 1..].trim()))
    }

    fn ints<T: std::str::FromStr>(&self, s: &str) -> Result<Vec<T>, CliError> {
        s.split_whitespace().map(|w| w.parse().map_err(|_| self.parse_err(format!("expected an integer, got {w:?}")))).collect()
    }

    fn elem(&self, ring: &Ring, s: &str) -> Result<Elem, CliError> {
        ring.parse_elem(s).map_err(|e| self.parse_err(e.to_string()))
    }

    /// A `rows x cols` matrix written as rows separated by `;`.
    fn matrix(&self, ring: &Ring, s: &str, rows: usize, cols: usize) -> Result<Matrix, CliError> {
        let entries: Vec<&str> = s.split(';').flat_map(str::split_whitespace).collect();
        if entries.len() != rows * cols {
            return Err(self.parse_err(format!("expected a {rows}x{cols} matrix, got {} entries", entries.len())));
        }
        let elems = entries.iter().map(|e| self.elem(ring, e)).collect::<Result<Vec<_>, _>>()?;
        Matrix::from_entries(ring, rows, cols, elems).map_err(|e| self.parse_err(e.to_string()))
    }

    fn free(&self, ring: &Ring, degrees: Vec<i64>) -> FreeModule {
        if ring.is_graded() {
            FreeModule::graded(ring, degrees).expect("graded ring")
        } else {
            FreeModule::new(ring, degrees.len())
        }
    }

    /// Binds `id` to the result of `f`, recording an engine error as a
    /// failed check.
    fn define(&mut self, id: &str, f: impl FnOnce() -> dle_core::Result<Value>) {
        let v = f().unwrap_or_else(|e| {
            self.checks.push(CheckResult::error(format!("define {id}"), "no error", &e, &self.anchor()));
            Value::Failed(e.name())
        });
        self.env.insert(id.to_string(), v);
    }

    fn statement(&mut self, stmt: &str) -> Result<(), CliError> {
        let (head, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
        match head {
            "ring" => self.ring_stmt(rest.trim()),
            "module" => self.module_stmt(rest.trim()),
            "complex" => self.complex_stmt(rest.trim()),
            "compute" => self.compute_stmt(rest.trim()),
            "assert" => self.assert_stmt(rest.trim()),
            other => Err(self.parse_err(format!("unknown statement {other:?}"))),
        }
    }

    fn ring_stmt(&mut self, s: &str) -> Result<(), CliError> {
        let (id, def) = self.binding(s)?;
        let words: Vec<&str> = def.split_whitespace().collect();
        match words.as_slice() {
            ["Z"] => self.define(id, || Ok(Value::Ring(Ring::integers()))),
            ["GF", p, "vars", n] => {
                let (p, n): (u64, usize) = (self.ints(p)?[0], self.ints(n)?[0]);
                self.define(id, || Ok(Value::Ring(if n == 0 { Ring::prime_field(p)? } else { Ring::graded(p, n)? })));
            }
            ["ORDER", ..] => {
                let f = IntPoly::parse(def["ORDER".len()..].trim()).map_err(|e| self.parse_err(e.to_string()))?;
                self.define(id, || Ok(Value::Ring(Ring::order(f)?)));
            }
            _ => return Err(self.parse_err("expected Z, GF <p> vars <n> or ORDER <poly>")),
        }
        Ok(())
    }

    fn module_stmt(&mut self, s: &str) -> Result<(), CliError> {
        let (id, rest) = split_keyword(s, "over").ok_or_else(|| self.parse_err("expected 'over'"))?;
        let id = self.ident(id)?;
        let (ring_name, rest) = split_keyword(rest, "gens").ok_or_else(|| self.parse_err("expected 'gens'"))?;
        let (gens, rels) = split_keyword(rest, "rels").ok_or_else(|| self.parse_err("expected 'rels'"))?;
        let shifts: Vec<i64> = self.ints(gens)?;
        if shifts.is_empty() {
            return Err(self.parse_err("a module needs at least one generator"));
        }
        let (body, tail) = self.bracket(rels)?;
        if !tail.is_empty() {
            return Err(self.parse_err(format!("unexpected text {tail:?}")));
        }
        let ring = match self.ring(self.ident(ring_name)?)? {
            Ok(r) => r,
            Err(e) => {
                self.env.insert(id.to_string(), Value::Failed(e));
                return Ok(());
            }
        };
        let mut columns: Vec<Vec<Elem>> = Vec::new();
        for row in body.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.len() != shifts.len() {
                return Err(self.parse_err(format!("relation {row:?} needs {} entries", shifts.len())));
            }
            columns.push(entries.iter().map(|e| self.elem(&ring, e)).collect::<Result<_, _>>()?);
        }
        // a relation sits in the degree of its first nonzero entry
        let rel_degrees: Vec<i64> = columns
            .iter()
            .map(|col| {
                col.iter()
                    .enumerate()
                    .find(|(_, e)| !ring.is_zero(e))
                    .map_or(0, |(i, e)| shifts[i] + ring.homogeneous_degree(e).unwrap_or(0) as i64)
            })
            .collect();
        let gens = self.free(&ring, shifts.clone());
        let relm = self.free(&ring, rel_degrees);
        let rows: Vec<Vec<Elem>> = (0..shifts.len()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let n_rel = columns.len();
        self.define(id, || {
            let m = if n_rel == 0 { Matrix::zeros(&ring, gens.rank(), 0) } else { Matrix::from_rows(&ring, rows)? };
            Ok(Value::Module(FPModule::from_matrix(gens, relm, m)?))
        });
        Ok(())
    }

    fn complex_stmt(&mut self, s: &str) -> Result<(), CliError> {
        let (id, def) = self.binding(s)?;
        if let Some(args) = def.strip_prefix("koszul(") {
            let args = args.strip_suffix(')').ok_or_else(|| self.parse_err("missing ')'"))?;
            let (ring_name, elems) = args.split_once(';').ok_or_else(|| self.parse_err("expected koszul(<ring>; <elems>)"))?;
            let ring = match self.ring(self.ident(ring_name.trim())?)? {
                Ok(r) => r,
                Err(e) => {
                    self.env.insert(id.to_string(), Value::Failed(e));
                    return Ok(());
                }
            };
            let elems = elems.split(',').map(|e| self.elem(&ring, e.trim())).collect::<Result<Vec<_>, _>>()?;
            self.define(id, || Ok(Value::Complex(koszul_complex(&ring, &elems)?)));
            return Ok(());
        }
        let rest = def.strip_prefix("terms").ok_or_else(|| self.parse_err("expected koszul(...) or terms"))?.trim();
        let open = rest.find('[').ok_or_else(|| self.parse_err("expected '['"))?;
        let ring_name = self.ident(rest[..open].trim())?;
        let (terms, rest) = self.bracket(&rest[open..])?;
        let rest = rest.strip_prefix("diffs").ok_or_else(|| self.parse_err("expected 'diffs'"))?;
        let (diffs, tail) = self.bracket(rest)?;
        if !tail.is_empty() {
            return Err(self.parse_err(format!("unexpected text {tail:?}")));
        }
        let ring = match self.ring(ring_name)? {
            Ok(r) => r,
            Err(e) => {
                self.env.insert(id.to_string(), Value::Failed(e));
                return Ok(());
            }
        };
        let terms: Vec<FreeModule> =
            terms.split('|').map(|t| Ok(self.free(&ring, self.ints(t)?))).collect::<Result<_, CliError>>()?;
        let diffs: Vec<&str> = if terms.len() <= 1 && diffs.trim().is_empty() { Vec::new() } else { diffs.split('|').collect() };
        if diffs.len() + 1 != terms.len() {
            return Err(self.parse_err(format!("{} terms need {} differentials", terms.len(), terms.len() - 1)));
        }
        let matrices = diffs
            .iter()
            .enumerate()
            .map(|(i, m)| self.matrix(&ring, m, terms[i].rank(), terms[i + 1].rank()))
            .collect::<Result<Vec<_>, _>>()?;
        self.define(id, || Ok(Value::Complex(ChainComplex::from_terms_and_matrices(&ring, terms, matrices)?)));
        Ok(())
    }

    /// A complex, resolving modules; `Err(name)` for failed definitions.
    fn complex_of(&self, name: &str) -> Result<Result<ChainComplex, &'static str>, CliError> {
        Ok(match self.lookup(name)? {
            Value::Complex(c) => Ok(c.clone()),
            Value::Module(m) => resolve(m).map(|r| r.complex().clone()).map_err(|e| e.name()),
            Value::Failed(e) => Err(*e),
            v => return Err(self.parse_err(format!("{name} is a {}, expected a module or complex", v.kind()))),
        })
    }

    fn compute_stmt(&mut self, s: &str) -> Result<(), CliError> {
        let (id, def) = self.binding(s)?;
        let words: Vec<&str> = def.split_whitespace().collect();
        let inputs: Vec<&str> = match words.as_slice() {
            ["dlambda", _, x] | ["homology", x] => vec![*x],
            ["dtensor", a, b] => vec![*a, *b],
            ["cone", a, b, "maps", ..] => vec![*a, *b],
            _ => return Err(self.parse_err("expected dlambda <k> <X>, dtensor <A> <B>, cone <S> <T> maps [...] or homology <X>")),
        };
        let mut complexes = Vec::new();
        for x in &inputs {
            match self.complex_of(self.ident(x)?)? {
                Ok(c) => complexes.push(c),
                Err(e) => {
                    self.checks.push(CheckResult::compare(format!("define {id}"), "no error", e, &self.anchor()).failed());
                    self.env.insert(id.to_string(), Value::Failed(e));
                    return Ok(());
                }
            }
        }
        let opts = self.opts.clone();
        match words[0] {
            "dlambda" => {
                let k: i64 = self.ints(words[1])?[0];
                let c = complexes.remove(0);
                self.define(id, || Ok(Value::Complex(derived_exterior(k, &c)?)));
            }
            "dtensor" => self.define(id, || Ok(Value::Complex(derived_tensor(&complexes[0], &complexes[1])?))),
            "homology" => self.define(id, || Ok(Value::Homology(homology(&complexes[0], &opts.lenient())?))),
            _ => {
                let (src, tgt) = (&complexes[0], &complexes[1]);
                let (_, maps) = split_keyword(def, "maps").expect("matched above");
                let (body, tail) = self.bracket(maps)?;
                if !tail.is_empty() {
                    return Err(self.parse_err(format!("unexpected text {tail:?}")));
                }
                let mut comps = Vec::new();
                for (n, m) in body.split('|').enumerate() {
                    let (s_n, t_n) = (src.term(n), tgt.term(n));
                    let mat = self.matrix(src.ring(), m, t_n.rank(), s_n.rank())?;
                    comps.push((s_n, t_n, mat));
                }
                self.define(id, || {
                    let maps = comps.into_iter().map(|(s, t, m)| FreeMap::new(s, t, m)).collect::<dle_core::Result<Vec<_>>>()?;
                    Ok(Value::Complex(cone(&ComplexMap::new(src, tgt, maps)?)))
                });
            }
        }
        Ok(())
    }

    fn assert_stmt(&mut self, s: &str) -> Result<(), CliError> {
        let anchor = self.anchor();
        if let Some(rest) = s.strip_prefix("chi") {
            let (id, value) = self.binding(rest.trim())?;
            let expected: PositiveRational = value.parse().map_err(|_| self.parse_err(format!("expected a positive rational, got {value:?}")))?;
            let name = format!("chi {id}");
            let check = match self.complex_of(id)? {
                Ok(c) => match euler_char(&c, self.opts) {
                    Ok(chi) => CheckResult::compare(name, &expected, chi, &anchor),
                    Err(e) => CheckResult::error(name, &expected, &e, &anchor),
                },
                Err(e) => CheckResult::compare(name, &expected, e, &anchor).failed(),
            };
            self.checks.push(check);
            return Ok(());
        }
        let rest = s.strip_prefix("homology").ok_or_else(|| self.parse_err("expected 'assert chi' or 'assert homology'"))?.trim();
        let (id, rest) = split_keyword(rest, "deg").ok_or_else(|| self.parse_err("expected 'deg'"))?;
        let id = self.ident(id)?;
        let (deg, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| self.parse_err("expected a degree"))?;
        let deg: usize = self.ints(deg)?[0];
        let rest = rest.trim();
        let name = format!("homology {id} deg {deg}");
        let (kind, body) = rest.split_once(char::is_whitespace).ok_or_else(|| self.parse_err("expected invariants or hilbert"))?;
        let (list, tail) = self.bracket(body)?;
        let values: Vec<i64> = self.ints(list)?;
        let at: Option<i64> = match tail.split_whitespace().collect::<Vec<_>>().as_slice() {
            [] => None,
            ["at", d] if kind == "hilbert" => Some(self.ints(d)?[0]),
            _ => return Err(self.parse_err(format!("unexpected text {tail:?}"))),
        };
        let expected = match kind {
            "invariants" => invariant_factors(&values),
            "hilbert" => with_start(render(values.iter().copied()), at),
            _ => return Err(self.parse_err("expected invariants or hilbert")),
        };
        let data = match self.lookup(id)? {
            Value::Homology(h) => Ok(h.clone()),
            Value::Failed(e) => Err(*e),
            _ => match self.complex_of(id)? {
                Ok(c) => homology(&c, &self.opts.clone().lenient()).map_err(|e| e.name()),
                Err(e) => Err(e),
            },
        };
        let check = match data {
            Ok(h) => {
                let g = h.degree(deg);
                let actual = match (kind, g) {
                    ("invariants", GroupInvariants::Abelian(c)) => {
                        render(c.torsion.iter().map(|t| i64::try_from(t).unwrap_or(i64::MAX)).chain(std::iter::repeat(0).take(c.free_rank)))
                    }
                    ("invariants", GroupInvariants::Vector { dim, .. }) => render(std::iter::repeat(0).take(*dim)),
                    ("hilbert", GroupInvariants::Graded { data, .. }) => {
                        with_start(render(data.hilbert.iter().map(|&v| v as i64)), at.map(|_| data.start))
                    }
                    ("invariants" | "hilbert", g) if g.is_zero() => with_start("[]".into(), at.map(|_| 0)),
                    (_, g) => g.to_string(),
                };
                CheckResult::compare(name, expected, actual, &anchor)
            }
            Err(e) => CheckResult::compare(name, expected, e, &anchor).failed(),
        };
        self.checks.push(check);
        Ok(())
    }
}

/// Invariant factors of `Z/v_1 + ... + Z/v_n` (`Z` for `v = 0`), torsion
/// first and free summands as zeros.
fn invariant_factors(values: &[i64]) -> String {
    let z = Ring::integers();
    let mut d = Matrix::zeros(&z, values.len(), values.len());
    for (i, v) in values.iter().enumerate() {
        d.set(i, i, z.from_i64(*v));
    }
    let inv = cokernel_invariants(&d).expect("integer matrix");
    render(inv.torsion.iter().map(|t| i64::try_from(t).unwrap_or(i64::MAX)).chain(std::iter::repeat(0).take(inv.free_rank)))
}

fn render(values: impl Iterator<Item = i64>) -> String {
    format!("[{}]", values.map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
}

fn with_start(list: String, at: Option<i64>) -> String {
    match at {
        Some(d) => format!("{list} at {d}"),
        None => list,
    }
}

impl CheckResult {
    fn failed(mut self) -> Self {
        self.pass = false;
        self
    }
}
