//! Bounded chain complexes of free modules in nonnegative degrees.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{FreeMap, FreeModule};
use crate::ring::{Elem, Ring};
use crate::subsets::{subset_rank, subsets};

/// `C_0 <- C_1 <- ... <- C_top`, with `diffs[n - 1] = ∂_n : C_n -> C_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    terms: Vec<FreeModule>,
    diffs: Vec<FreeMap>,
}

impl ChainComplex {
    /// Validates shapes, rings and `∂_{n-1} ∘ ∂_n = 0`.
    pub fn new(ring: &Ring, terms: Vec<FreeModule>, diffs: Vec<FreeMap>) -> Result<ChainComplex> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for t in &terms {
            if t.ring() != ring {
                return Err(Error::RingMismatch("complex term over a different ring".into()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &terms[k + 1] || d.target() != &terms[k] {
                return Err(Error::ShapeMismatch(format!("differential ∂_{} has the wrong source or target", k + 1)));
            }
        }
        for n in 2..terms.len() {
            if !diffs[n - 2].compose(&diffs[n - 1])?.is_zero() {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(ChainComplex { ring: ring.clone(), terms, diffs })
    }

    pub(crate) fn new_unchecked(ring: &Ring, terms: Vec<FreeModule>, diffs: Vec<FreeMap>) -> ChainComplex {
        debug_assert_eq!(diffs.len(), terms.len().saturating_sub(1));
        ChainComplex { ring: ring.clone(), terms, diffs }
    }

    /// Builds a complex from differential matrices; term ranks are inferred.
    /// Over a graded ring the caller supplies the generator degrees instead.
    pub fn from_matrices(ring: &Ring, ranks: &[usize], matrices: Vec<Matrix>) -> Result<ChainComplex> {
        let terms: Vec<FreeModule> = ranks.iter().map(|&r| FreeModule::new(ring, r)).collect();
        ChainComplex::from_terms_and_matrices(ring, terms, matrices)
    }

    pub fn from_terms_and_matrices(ring: &Ring, terms: Vec<FreeModule>, matrices: Vec<Matrix>) -> Result<ChainComplex> {
        if matrices.len() != terms.len().saturating_sub(1) {
            return Err(Error::ShapeMismatch("one matrix per differential expected".into()));
        }
        let diffs = matrices
            .into_iter()
            .enumerate()
            .map(|(k, m)| FreeMap::new(terms[k + 1].clone(), terms[k].clone(), m))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(ring, terms, diffs)
    }

    pub fn zero(ring: &Ring) -> ChainComplex {
        ChainComplex { ring: ring.clone(), terms: Vec::new(), diffs: Vec::new() }
    }

    /// `m` in degree zero.
    pub fn concentrated(m: &FreeModule) -> ChainComplex {
        ChainComplex { ring: m.ring().clone(), terms: vec![m.clone()], diffs: Vec::new() }
    }

    /// `0 -> F --id--> F -> 0` with the source in degree `n >= 1`.
    pub fn identity_pair(f: &FreeModule, n: usize) -> ChainComplex {
        assert!(n >= 1, "identity pair needs a source degree of at least 1");
        let ring = f.ring();
        let mut terms = vec![FreeModule::zero(ring); n + 1];
        terms[n - 1] = f.clone();
        terms[n] = f.clone();
        let diffs = (1..=n)
            .map(|k| if k == n { FreeMap::identity(f) } else { FreeMap::zero(&terms[k], &terms[k - 1]) })
            .collect();
        ChainComplex::new_unchecked(ring, terms, diffs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of stored terms (one more than the top stored degree).
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree with a nonzero term.
    pub fn top(&self) -> Option<usize> {
        self.terms.iter().rposition(|t| !t.is_zero())
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> FreeModule {
        self.terms.get(n).cloned().unwrap_or_else(|| FreeModule::zero(&self.ring))
    }

    pub fn rank(&self, n: usize) -> usize {
        self.terms.get(n).map_or(0, FreeModule::rank)
    }

    /// `∂_n : C_n -> C_{n-1}`, zero outside the stored range.
    pub fn diff(&self, n: usize) -> FreeMap {
        if n >= 1 && n < self.terms.len() {
            self.diffs[n - 1].clone()
        } else {
            let src = self.term(n);
            let tgt = if n == 0 { FreeModule::zero(&self.ring) } else { self.term(n - 1) };
            FreeMap::zero(&src, &tgt)
        }
    }

    pub fn diffs(&self) -> &[FreeMap] {
        &self.diffs
    }

    /// Maximal generator degree over all terms (graded rings).
    pub fn max_generator_degree(&self) -> Option<i64> {
        self.terms.iter().filter_map(FreeModule::max_degree).max()
    }

    pub fn min_generator_degree(&self) -> Option<i64> {
        self.terms.iter().filter_map(FreeModule::min_degree).min()
    }

    /// Pads or trims (zero) trailing terms so that exactly `len` are stored.
    /// Trimming a nonzero term panics.
    pub fn with_len(&self, len: usize) -> ChainComplex {
        let mut terms = self.terms.clone();
        let mut diffs = self.diffs.clone();
        while terms.len() > len {
            assert!(terms.last().unwrap().is_zero(), "cannot trim a nonzero term");
            terms.pop();
            diffs.pop();
        }
        while terms.len() < len {
            let t = FreeModule::zero(&self.ring);
            if let Some(prev) = terms.last() {
                diffs.push(FreeMap::zero(&t, prev));
            }
            terms.push(t);
        }
        ChainComplex::new_unchecked(&self.ring, terms, diffs)
    }

    /// Drops trailing zero terms.
    pub fn trimmed(&self) -> ChainComplex {
        self.with_len(self.top().map_or(0, |t| t + 1))
    }

    /// Keeps degrees `0..=top` only.
    pub fn truncate(&self, top: usize) -> ChainComplex {
        let n = self.terms.len().min(top + 1);
        ChainComplex::new_unchecked(&self.ring, self.terms[..n].to_vec(), self.diffs[..n.saturating_sub(1)].to_vec())
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let len = self.len().max(other.len());
        let (a, b) = (self.with_len(len), other.with_len(len));
        let terms = (0..len).map(|n| a.terms[n].direct_sum(&b.terms[n])).collect();
        let diffs = (0..len.saturating_sub(1)).map(|k| a.diffs[k].direct_sum(&b.diffs[k])).collect();
        ChainComplex::new_unchecked(&self.ring, terms, diffs)
    }

    /// Restriction of scalars from `Z[x]/(f)` to the integers.
    pub fn restrict_scalars(&self) -> Result<ChainComplex> {
        let z = Ring::integers();
        let n = self.ring.order_degree();
        self.ring.expect_kind("MonogenicOrder")?;
        let terms: Vec<FreeModule> = self.terms.iter().map(|t| FreeModule::new(&z, t.rank() * n)).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let m = crate::linalg::restrict_scalars(d.matrix())?;
                Ok(FreeMap::new_unchecked(terms[k + 1].clone(), terms[k].clone(), m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainComplex::new_unchecked(&z, terms, diffs))
    }

    /// Cancels unit entries of the differentials by Gaussian elimination.
    ///
    /// Each step replaces `b ⊕ D -> b' ⊕ E` with pivot `φ : b -> b'` by
    /// `ε - γ φ^{-1} δ : D -> E`, restricting the neighbouring differentials;
    /// the result is homotopy equivalent to `self`. Over graded rings only
    /// constant entries are pivots, so the output is minimal.
    pub fn reduce(&self) -> ChainComplex {
        let ring = &self.ring;
        if self.terms.len() < 2 || ring.modulus_poly().is_some() {
            return self.clone();
        }
        let mut mats: Vec<Vec<Vec<Elem>>> = self
            .diffs
            .iter()
            .map(|d| (0..d.matrix().rows()).map(|i| (0..d.matrix().cols()).map(|j| d.matrix().get(i, j).clone()).collect()).collect())
            .collect();
        let mut keep: Vec<Vec<bool>> = self.terms.iter().map(|t| vec![true; t.rank()]).collect();
        for n in 1..self.terms.len() {
            let m = &mut mats[n - 1];
            loop {
                let mut pivot = None;
                'search: for (j, &alive_j) in keep[n].iter().enumerate() {
                    if !alive_j {
                        continue;
                    }
                    for (i, &alive_i) in keep[n - 1].iter().enumerate() {
                        if alive_i {
                            if let Some(inv) = unit_inverse(ring, &m[i][j]) {
                                pivot = Some((i, j, inv));
                                break 'search;
                            }
                        }
                    }
                }
                let Some((i, j, inv)) = pivot else { break };
                keep[n - 1][i] = false;
                keep[n][j] = false;
                let pivot_row: Vec<(usize, Elem)> = (0..m[i].len())
                    .filter(|&b| keep[n][b] && !ring.is_zero(&m[i][b]))
                    .map(|b| (b, m[i][b].clone()))
                    .collect();
                for a in 0..m.len() {
                    if !keep[n - 1][a] || ring.is_zero(&m[a][j]) {
                        continue;
                    }
                    let factor = ring.mul(&m[a][j], &inv);
                    for (b, v) in &pivot_row {
                        let t = ring.mul(&factor, v);
                        m[a][*b] = ring.sub(&m[a][*b], &t);
                    }
                }
            }
        }
        let terms: Vec<FreeModule> = self
            .terms
            .iter()
            .enumerate()
            .map(|(n, t)| {
                let d: Vec<i64> = (0..t.rank()).filter(|&i| keep[n][i]).map(|i| t.degree(i)).collect();
                match t.degrees() {
                    Some(_) => FreeModule::graded(ring, d).expect("graded ring"),
                    None => FreeModule::new(ring, d.len()),
                }
            })
            .collect();
        let diffs = (1..self.terms.len())
            .map(|n| {
                let rows: Vec<usize> = (0..keep[n - 1].len()).filter(|&i| keep[n - 1][i]).collect();
                let cols: Vec<usize> = (0..keep[n].len()).filter(|&j| keep[n][j]).collect();
                let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))).map(|(i, j)| mats[n - 1][i][j].clone()).collect();
                let m = Matrix::from_entries(ring, rows.len(), cols.len(), entries).expect("shape");
                FreeMap::new_unchecked(terms[n].clone(), terms[n - 1].clone(), m)
            })
            .collect();
        ChainComplex::new_unchecked(ring, terms, diffs).trimmed()
    }
}

/// Inverse of a unit usable as an elimination pivot.
fn unit_inverse(ring: &Ring, e: &Elem) -> Option<Elem> {
    match e {
        Elem::Int(_) => ring.is_unit(e).then(|| e.clone()),
        Elem::Fp(_) => (!ring.is_zero(e)).then(|| ring.div_exact(&ring.one(), e).unwrap()),
        Elem::Poly(p) => {
            let [(m, c)] = p.terms() else { return None };
            (m.degree() == 0).then(|| {
                let q = ring.char_p().unwrap();
                let inv = crate::ring::inv_mod(*c, q);
                ring.from_i64(inv as i64)
            })
        }
        Elem::Order(_) => None,
    }
}

/// Degreewise maps `f_n : S_n -> T_n` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<FreeMap>,
}

impl ComplexMap {
    /// `maps[n] : S_n -> T_n`; missing degrees are zero maps.
    pub fn new(source: &ChainComplex, target: &ChainComplex, maps: Vec<FreeMap>) -> Result<ComplexMap> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch("chain map between complexes over different rings".into()));
        }
        let len = source.len().max(target.len()).max(maps.len());
        let mut full = Vec::with_capacity(len);
        for n in 0..len {
            let f = match maps.get(n) {
                Some(f) => f.clone(),
                None => FreeMap::zero(&source.term(n), &target.term(n)),
            };
            if f.source() != &source.term(n) || f.target() != &target.term(n) {
                return Err(Error::ShapeMismatch(format!("component {n} of the chain map has the wrong shape")));
            }
            full.push(f);
        }
        for n in 1..len {
            let lhs = target.diff(n).compose(&full[n])?;
            let rhs = full[n - 1].compose(&source.diff(n))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(ComplexMap { source: source.clone(), target: target.clone(), maps: full })
    }

    pub fn identity(c: &ChainComplex) -> ComplexMap {
        let maps = c.terms.iter().map(FreeMap::identity).collect();
        ComplexMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: usize) -> FreeMap {
        self.maps
            .get(n)
            .cloned()
            .unwrap_or_else(|| FreeMap::zero(&self.source.term(n), &self.target.term(n)))
    }

    pub fn components(&self) -> &[FreeMap] {
        &self.maps
    }
}

/// Mapping cone: `Cone_n = T_n ⊕ S_{n-1}` with `∂ = [[∂_T, φ], [0, -∂_S]]`.
pub fn cone(phi: &ComplexMap) -> ChainComplex {
    let (s, t) = (&phi.source, &phi.target);
    let ring = &s.ring;
    let len = t.len().max(s.len() + 1);
    let term = |n: usize| {
        let shifted = if n == 0 { FreeModule::zero(ring) } else { s.term(n - 1) };
        t.term(n).direct_sum(&shifted)
    };
    let terms: Vec<FreeModule> = (0..len).map(term).collect();
    let diffs = (1..len)
        .map(|n| {
            let (src, tgt) = (&terms[n], &terms[n - 1]);
            let mut m = Matrix::zeros(ring, tgt.rank(), src.rank());
            let tn = t.rank(n);
            let tn1 = t.rank(n - 1);
            m.set_block(0, 0, t.diff(n).matrix());
            m.set_block(0, tn, phi.component(n - 1).matrix());
            if n >= 2 {
                m.set_block(tn1, tn, &s.diff(n - 1).matrix().neg());
            }
            FreeMap::new_unchecked(src.clone(), tgt.clone(), m)
        })
        .collect();
    ChainComplex::new_unchecked(ring, terms, diffs)
}

/// Total complex of `C ⊗ D` with `∂(a ⊗ b) = ∂a ⊗ b + (-1)^{deg a} a ⊗ ∂b`.
/// `Tot_n` lists the blocks `C_a ⊗ D_{n-a}` by increasing `a`.
pub fn tot_tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch("tensor product of complexes over different rings".into()));
    }
    let ring = &c.ring;
    if c.is_empty() || d.is_empty() {
        return Ok(ChainComplex::zero(ring));
    }
    let len = c.len() + d.len() - 1;
    // offsets[n][a]: position of the block C_a ⊗ D_{n-a} inside Tot_n
    let mut offsets = vec![vec![usize::MAX; c.len()]; len];
    let mut terms = Vec::with_capacity(len);
    for (n, off) in offsets.iter_mut().enumerate() {
        let mut t = FreeModule::zero(ring);
        for (a, o) in off.iter_mut().enumerate() {
            if n >= a && n - a < d.len() {
                *o = t.rank();
                t = t.direct_sum(&c.term(a).tensor(&d.term(n - a)));
            }
        }
        terms.push(t);
    }
    let mut diffs = Vec::with_capacity(len.saturating_sub(1));
    for n in 1..len {
        let mut m = Matrix::zeros(ring, terms[n - 1].rank(), terms[n].rank());
        for a in 0..c.len() {
            if n < a || n - a >= d.len() {
                continue;
            }
            let b = n - a;
            let col = offsets[n][a];
            if a >= 1 {
                let block = c.diff(a).tensor(&FreeMap::identity(&d.term(b)));
                m.set_block(offsets[n - 1][a - 1], col, block.matrix());
            }
            if b >= 1 {
                let block = FreeMap::identity(&c.term(a)).tensor(&d.diff(b));
                let block = if a % 2 == 1 { block.neg() } else { block };
                m.set_block(offsets[n - 1][a], col, block.matrix());
            }
        }
        diffs.push(FreeMap::new_unchecked(terms[n].clone(), terms[n - 1].clone(), m));
    }
    ChainComplex::new(ring, terms, diffs)
}

/// Koszul complex on `a_1..a_ν`: `K_j = Λ^j(R^ν)` with
/// `∂(e_I) = Σ_t (-1)^t a_{i_t} e_{I \ i_t}`.
pub fn koszul_complex(ring: &Ring, elements: &[Elem]) -> Result<ChainComplex> {
    let nu = elements.len();
    if nu == 0 {
        return Err(Error::InvalidParameter("Koszul complex on an empty sequence".into()));
    }
    let degrees: Vec<i64> = elements
        .iter()
        .map(|e| {
            if !ring.is_graded() || ring.is_zero(e) {
                Ok(0)
            } else {
                ring.homogeneous_degree(e)
                    .map(i64::from)
                    .ok_or_else(|| Error::InhomogeneousElement(ring.display(e)))
            }
        })
        .collect::<Result<_>>()?;
    let base = if ring.is_graded() { FreeModule::graded(ring, degrees)? } else { FreeModule::new(ring, nu) };
    let terms: Vec<FreeModule> = (0..=nu).map(|j| base.exterior_power(j)).collect();
    let mut diffs = Vec::with_capacity(nu);
    for j in 1..=nu {
        let mut m = Matrix::zeros(ring, terms[j - 1].rank(), terms[j].rank());
        for (col, set) in subsets(nu, j).into_iter().enumerate() {
            for t in 0..j {
                let mut rest = set.clone();
                let i = rest.remove(t);
                let coeff = if t % 2 == 0 { elements[i].clone() } else { ring.neg(&elements[i]) };
                m.set(subset_rank(nu, &rest), col, coeff);
            }
        }
        diffs.push(FreeMap::new(terms[j].clone(), terms[j - 1].clone(), m)?);
    }
    ChainComplex::new(ring, terms, diffs)
}
