//! Free resolutions: construction over the integers, verification over every
//! ring kind, and domination of two resolutions by a third.

use crate::complex::{ChainComplex, ComplexMap};
use crate::error::{Error, Result};
use crate::homology::{default_cutoff, homology, HomologyData, HomologyOptions};
use crate::linalg::{smith_normal_form, solve, Matrix};
use crate::module::{FPModule, FreeMap, FreeModule};
use crate::ring::Elem;

/// A free resolution `P -> M` with augmentation `P_0 -> generators of M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    complex: ChainComplex,
    module: FPModule,
    augmentation: FreeMap,
}

impl Resolution {
    /// Pairs a complex with a module; the augmentation must map `P_0` to the
    /// generators of `module`.
    pub fn new(complex: ChainComplex, module: FPModule, augmentation: FreeMap) -> Result<Resolution> {
        if augmentation.source() != &complex.term(0) || augmentation.target() != module.generators() {
            return Err(Error::ShapeMismatch("augmentation must map P_0 to the generators".into()));
        }
        Ok(Resolution { complex, module, augmentation })
    }

    /// The presentation `relations -> generators` as a two-term complex, with
    /// the identity augmentation. It is a resolution when the relation map is
    /// injective; see [`verify_resolution`].
    pub fn from_presentation(module: &FPModule) -> Resolution {
        let rel = module.relations();
        let complex = if rel.source().is_zero() {
            ChainComplex::concentrated(rel.target())
        } else {
            ChainComplex::new_unchecked(rel.ring(), vec![rel.target().clone(), rel.source().clone()], vec![rel.clone()])
        };
        Resolution { complex, module: module.clone(), augmentation: FreeMap::identity(module.generators()) }
    }

    /// Wraps a complex whose `P_0` is the generator module of `module`.
    pub fn with_identity_augmentation(complex: ChainComplex, module: &FPModule) -> Result<Resolution> {
        let aug = FreeMap::identity(module.generators());
        Resolution::new(complex, module.clone(), aug)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn augmentation(&self) -> &FreeMap {
        &self.augmentation
    }

    /// Highest degree with a nonzero term.
    pub fn length(&self) -> usize {
        self.complex.top().unwrap_or(0)
    }

    /// Adds `0 -> F --id--> F -> 0` with `F` in degrees `n` and `n - 1`;
    /// the augmentation is extended by zero.
    pub fn padded(&self, f: &FreeModule, n: usize) -> Resolution {
        let complex = self.complex.direct_sum(&ChainComplex::identity_pair(f, n));
        let ring = self.complex.ring();
        let mut m = Matrix::zeros(ring, self.augmentation.target().rank(), complex.term(0).rank());
        m.set_block(0, 0, self.augmentation.matrix());
        let augmentation = FreeMap::new_unchecked(complex.term(0), self.augmentation.target().clone(), m);
        Resolution { complex, module: self.module.clone(), augmentation }
    }
}

/// Free resolution of length at most one of a module over the integers.
///
/// The relation matrix is used directly when injective; otherwise its image
/// is a free submodule with basis the first `rank` columns of `A V`, where
/// `U A V = D` is the Smith normal form.
pub fn free_resolution_z(m: &FPModule) -> Result<Resolution> {
    let ring = m.ring();
    ring.expect_kind("Integers")?;
    let rel = m.relations();
    let a = rel.matrix();
    let snf = smith_normal_form(a)?;
    let r = snf.rank();
    let gens = m.generators().clone();
    let complex = if r == 0 {
        ChainComplex::concentrated(&gens)
    } else if r == a.cols() {
        ChainComplex::new(ring, vec![gens.clone(), rel.source().clone()], vec![rel.clone()])?
    } else {
        let av = a.mul(&snf.v)?;
        let cols: Vec<usize> = (0..r).collect();
        let rows: Vec<usize> = (0..a.rows()).collect();
        let basis = av.submatrix(&rows, &cols);
        let p1 = FreeModule::new(ring, r);
        ChainComplex::new(ring, vec![gens.clone(), p1.clone()], vec![FreeMap::new(p1, gens.clone(), basis)?])?
    };
    Resolution::new(complex, m.clone(), FreeMap::identity(&gens))
}

/// A verified finite free resolution of `m`: over the integers the
/// length-one resolution, a free module as itself, otherwise the
/// presentation when its relation map is injective.
pub fn resolve(m: &FPModule) -> Result<Resolution> {
    if m.ring().is_integers() {
        return free_resolution_z(m);
    }
    let r = Resolution::from_presentation(m);
    if m.is_free() || verify_resolution(r.complex(), m, &HomologyOptions::default())?.passed {
        Ok(r)
    } else {
        Err(Error::NoResolution("the presentation is not injective; supply a resolution".into()))
    }
}

/// Outcome of [`verify_resolution`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCheck {
    pub passed: bool,
    /// First homological degree where the check failed.
    pub failing_degree: Option<usize>,
    pub detail: String,
}

impl ResolutionCheck {
    fn pass() -> Self {
        ResolutionCheck { passed: true, failing_degree: None, detail: "resolution verified".into() }
    }

    fn fail(n: usize, detail: String) -> Self {
        ResolutionCheck { passed: false, failing_degree: Some(n), detail }
    }
}

/// Checks that `coker ∂_1` has the invariants of `m` and that `P` is exact
/// in degrees `>= 1`. Over graded rings both are compared through Hilbert
/// functions up to a common cutoff.
pub fn verify_resolution(p: &ChainComplex, m: &FPModule, opts: &HomologyOptions) -> Result<ResolutionCheck> {
    if p.ring() != m.ring() {
        return Err(Error::RingMismatch("resolution and module over different rings".into()));
    }
    let presentation = Resolution::from_presentation(m);
    let mut opts = opts.clone().lenient();
    if p.ring().is_graded() && opts.cutoff.is_none() {
        opts.cutoff = Some(default_cutoff(p).max(default_cutoff(presentation.complex())));
    }
    let hp = homology(p, &opts)?;
    let hm = homology(presentation.complex(), &opts)?;
    if hp.degree(0) != hm.degree(0) {
        return Ok(ResolutionCheck::fail(0, format!("H_0 is {}, module is {}", hp.degree(0), hm.degree(0))));
    }
    if let Some(n) = first_nonzero_above_zero(&hp) {
        return Ok(ResolutionCheck::fail(n, format!("H_{n} = {} is not zero", hp.degree(n))));
    }
    Ok(ResolutionCheck::pass())
}

fn first_nonzero_above_zero(h: &HomologyData) -> Option<usize> {
    (1..h.len()).find(|&n| !h.degree(n).is_zero())
}

/// `R` with surjective chain maps onto two resolutions of the same module.
#[derive(Clone, Debug)]
pub struct DominationWitness {
    pub r: Resolution,
    pub pi_p: ComplexMap,
    pub pi_q: ComplexMap,
    /// Sections `ι_P`, `ι_Q` with `π ∘ ι = id` degreewise.
    pub sections_p: Vec<FreeMap>,
    pub sections_q: Vec<FreeMap>,
}

impl DominationWitness {
    /// Re-checks chain maps, degreewise surjectivity and compatibility with
    /// the augmentations modulo relations.
    pub fn verify(&self, p: &Resolution, q: &Resolution) -> Result<bool> {
        let rc = self.r.complex();
        for (pi, target, sections) in [(&self.pi_p, p, &self.sections_p), (&self.pi_q, q, &self.sections_q)] {
            let again = ComplexMap::new(rc, target.complex(), pi.components().to_vec());
            if again.is_err() {
                return Ok(false);
            }
            for (n, s) in sections.iter().enumerate() {
                if pi.component(n).compose(s)? != FreeMap::identity(&target.complex().term(n)) {
                    return Ok(false);
                }
            }
            // ε_target ∘ π_0 - ε_R must land in the relations
            let diff = target.augmentation().compose(&pi.component(0))?.add(&self.r.augmentation().neg())?;
            if lift_through(p.module().relations(), &diff)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Solves `target ∘ X = rhs` column by column.
fn lift_through(target: &FreeMap, rhs: &FreeMap) -> Result<Option<FreeMap>> {
    let ring = target.ring();
    let mut x = Matrix::zeros(ring, target.source().rank(), rhs.source().rank());
    for j in 0..rhs.source().rank() {
        let b: Vec<Elem> = (0..rhs.matrix().rows()).map(|i| rhs.matrix().get(i, j).clone()).collect();
        if b.iter().all(|e| ring.is_zero(e)) {
            continue;
        }
        if target.source().is_zero() {
            return Ok(None);
        }
        let Some(col) = solve(target.matrix(), &b)? else { return Ok(None) };
        for (i, e) in col.into_iter().enumerate() {
            x.set(i, j, e);
        }
    }
    Ok(Some(FreeMap::new_unchecked(rhs.source().clone(), target.source().clone(), x)))
}

/// Chain map `Q -> P` over the identity of the resolved module.
fn comparison_map(q: &Resolution, p: &Resolution) -> Result<Vec<FreeMap>> {
    let (qc, pc) = (q.complex(), p.complex());
    let rel = p.module().relations();
    // g_0: ε_P g_0 ≡ ε_Q modulo relations, via the block [ε_P | rel]
    let p0 = pc.term(0);
    let stacked = FreeMap::new_unchecked(
        p0.direct_sum(rel.source()),
        p.augmentation().target().clone(),
        p.augmentation().matrix().hstack(rel.matrix())?,
    );
    let lift = lift_through(&stacked, q.augmentation())?.ok_or(Error::LiftFailure(0))?;
    let rows: Vec<usize> = (0..p0.rank()).collect();
    let cols: Vec<usize> = (0..qc.term(0).rank()).collect();
    let g0 = FreeMap::new_unchecked(qc.term(0), p0, lift.matrix().submatrix(&rows, &cols));
    let mut maps = vec![g0];
    let len = qc.len().max(pc.len());
    for n in 1..len {
        let rhs = maps[n - 1].compose(&qc.diff(n))?;
        let g = lift_through(&pc.diff(n), &rhs)?.ok_or(Error::LiftFailure(n))?;
        let g = FreeMap::new_unchecked(qc.term(n), pc.term(n), g.matrix().clone());
        maps.push(g);
    }
    Ok(maps)
}

/// Builds `R = cone(Q --(-g, id)--> P ⊕ Q)`, so `R_n = P_n ⊕ Q_n ⊕ Q_{n-1}`,
/// with `π_P = (id, g, 0)` and `π_Q = (h, id, s)` where `g`, `h` are
/// comparison maps and `∂s + s∂ = id - h g`.
pub fn dominate(p: &Resolution, q: &Resolution) -> Result<DominationWitness> {
    let (pc, qc) = (p.complex(), q.complex());
    let ring = pc.ring().clone();
    if ring != *qc.ring() {
        return Err(Error::RingMismatch("resolutions over different rings".into()));
    }
    let g = comparison_map(q, p)?;
    let h = comparison_map(p, q)?;
    let len = pc.len().max(qc.len()) + 1;
    // homotopy s_n : Q_n -> Q_{n+1} with ∂ s_n = id - h_n g_n - s_{n-1} ∂
    let mut s: Vec<FreeMap> = Vec::with_capacity(len);
    for n in 0..len {
        let qn = qc.term(n);
        let hg = if n < g.len() && n < h.len() { h[n].compose(&g[n])? } else { FreeMap::zero(&qn, &qn) };
        let mut rhs = FreeMap::identity(&qn).add(&hg.neg())?;
        if n >= 1 {
            rhs = rhs.add(&s[n - 1].compose(&qc.diff(n))?.neg())?;
        }
        let lifted = lift_through(&qc.diff(n + 1), &rhs)?.ok_or(Error::LiftFailure(n))?;
        s.push(FreeMap::new_unchecked(qn, qc.term(n + 1), lifted.matrix().clone()));
    }
    let g_at = |n: usize| g.get(n).cloned().unwrap_or_else(|| FreeMap::zero(&qc.term(n), &pc.term(n)));
    let h_at = |n: usize| h.get(n).cloned().unwrap_or_else(|| FreeMap::zero(&pc.term(n), &qc.term(n)));
    let neg_g: Vec<FreeMap> = (0..len).map(|n| g_at(n).neg()).collect();
    let phi_maps: Vec<FreeMap> = (0..len)
        .map(|n| {
            let tgt = pc.term(n).direct_sum(&qc.term(n));
            let mut m = Matrix::zeros(&ring, tgt.rank(), qc.term(n).rank());
            m.set_block(0, 0, neg_g[n].matrix());
            m.set_block(pc.term(n).rank(), 0, FreeMap::identity(&qc.term(n)).matrix());
            FreeMap::new_unchecked(qc.term(n), tgt, m)
        })
        .collect();
    let pq = pc.direct_sum(qc).with_len(len);
    let phi = ComplexMap::new(&qc.with_len(len), &pq, phi_maps)?;
    let rc = crate::complex::cone(&phi);
    let rlen = rc.len();
    let mut pi_p = Vec::with_capacity(rlen);
    let mut pi_q = Vec::with_capacity(rlen);
    let mut sec_p = Vec::with_capacity(rlen);
    let mut sec_q = Vec::with_capacity(rlen);
    for n in 0..rlen {
        let (pn, qn) = (pc.term(n).rank(), qc.term(n).rank());
        let rn = rc.term(n);
        let mut mp = Matrix::zeros(&ring, pn, rn.rank());
        mp.set_block(0, 0, FreeMap::identity(&pc.term(n)).matrix());
        mp.set_block(0, pn, g_at(n).matrix());
        let mut mq = Matrix::zeros(&ring, qn, rn.rank());
        mq.set_block(0, 0, h_at(n).matrix());
        mq.set_block(0, pn, FreeMap::identity(&qc.term(n)).matrix());
        if n >= 1 {
            mq.set_block(0, pn + qn, s[n - 1].matrix());
        }
        pi_p.push(FreeMap::new_unchecked(rn.clone(), pc.term(n), mp));
        pi_q.push(FreeMap::new_unchecked(rn.clone(), qc.term(n), mq));
        let mut ip = Matrix::zeros(&ring, rn.rank(), pn);
        ip.set_block(0, 0, FreeMap::identity(&pc.term(n)).matrix());
        let mut iq = Matrix::zeros(&ring, rn.rank(), qn);
        iq.set_block(pn, 0, FreeMap::identity(&qc.term(n)).matrix());
        sec_p.push(FreeMap::new_unchecked(pc.term(n), rn.clone(), ip));
        sec_q.push(FreeMap::new_unchecked(qc.term(n), rn, iq));
    }
    let pi_p = ComplexMap::new(&rc, &pc.with_len(rlen), pi_p)?;
    let pi_q = ComplexMap::new(&rc, &qc.with_len(rlen), pi_q)?;
    let r0 = rc.term(0);
    let mut aug = Matrix::zeros(&ring, p.augmentation().target().rank(), r0.rank());
    aug.set_block(0, 0, p.augmentation().matrix());
    aug.set_block(0, pc.term(0).rank(), q.augmentation().matrix());
    let augmentation = FreeMap::new_unchecked(r0, p.augmentation().target().clone(), aug);
    let r = Resolution::new(rc, p.module().clone(), augmentation)?;
    Ok(DominationWitness { r, pi_p, pi_q, sections_p: sec_p, sections_q: sec_q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul_complex;
    use crate::ring::Ring;

    #[test]
    fn integer_resolutions() {
        let m = FPModule::integer_torsion(&[6]);
        let r = free_resolution_z(&m).unwrap();
        assert_eq!(r.complex().terms().iter().map(FreeModule::rank).collect::<Vec<_>>(), vec![1, 1]);
        assert!(verify_resolution(r.complex(), &m, &Default::default()).unwrap().passed);
        let free = FPModule::free(FreeModule::new(&Ring::integers(), 3));
        assert_eq!(free_resolution_z(&free).unwrap().complex().len(), 1);
        // dependent relations: columns (2, 0), (4, 0), (0, 2)
        let z = Ring::integers();
        let gens = FreeModule::new(&z, 2);
        let dep = FPModule::from_matrix(gens, FreeModule::new(&z, 3), Matrix::from_i64_rows(&z, &[&[2, 4, 0], &[0, 0, 2]])).unwrap();
        let r = free_resolution_z(&dep).unwrap();
        assert_eq!(r.complex().rank(1), 2);
        assert!(verify_resolution(r.complex(), &dep, &Default::default()).unwrap().passed);
    }

    #[test]
    fn wrong_module_fails_in_degree_zero() {
        let two = free_resolution_z(&FPModule::integer_torsion(&[2])).unwrap();
        let check = verify_resolution(two.complex(), &FPModule::integer_torsion(&[3]), &Default::default()).unwrap();
        assert_eq!(check.failing_degree, Some(0));
    }

    #[test]
    fn koszul_resolves_residue_field() {
        let b = Ring::graded(5, 2).unwrap();
        let k = koszul_complex(&b, &[b.generator(0), b.generator(1)]).unwrap();
        let gens = FreeModule::graded(&b, vec![0]).unwrap();
        let rels = FreeModule::graded(&b, vec![1, 1]).unwrap();
        let kmod = FPModule::from_matrix(gens, rels, Matrix::from_rows(&b, vec![vec![b.generator(0), b.generator(1)]]).unwrap()).unwrap();
        assert!(verify_resolution(&k, &kmod, &Default::default()).unwrap().passed);
    }

    #[test]
    fn domination_of_padded_resolution() {
        let z = Ring::integers();
        let m = FPModule::integer_torsion(&[6]);
        let p = free_resolution_z(&m).unwrap();
        let q = p.padded(&FreeModule::new(&z, 1), 1);
        let w = dominate(&p, &q).unwrap();
        assert!(w.verify(&p, &q).unwrap());
        assert!(verify_resolution(w.r.complex(), &m, &Default::default()).unwrap().passed);
        let same = dominate(&p, &p).unwrap();
        assert!(same.verify(&p, &p).unwrap());
    }
}
