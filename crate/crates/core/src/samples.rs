//! Seeded random inputs: integer complexes, finite abelian groups and
//! randomly padded resolutions.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::ChainComplex;
use crate::linalg::Matrix;
use crate::module::{FPModule, FreeMap, FreeModule};
use crate::resolution::{free_resolution_z, Resolution};
use crate::ring::Ring;

/// Deterministic source of random inputs.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// A unimodular integer matrix and its inverse, as a product of a few
    /// elementary transvections and sign changes.
    pub fn unimodular(&mut self, n: usize) -> (Matrix, Matrix) {
        let z = Ring::integers();
        let mut u = Matrix::identity(&z, n);
        let mut inv = Matrix::identity(&z, n);
        if n == 0 {
            return (u, inv);
        }
        for _ in 0..n + 1 {
            let (i, j) = (self.index(n), self.index(n));
            let mut e = Matrix::identity(&z, n);
            let mut e_inv = Matrix::identity(&z, n);
            if i == j {
                e.set(i, i, z.from_i64(-1));
                e_inv.set(i, i, z.from_i64(-1));
            } else {
                let c = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                e.set(i, j, z.from_i64(c));
                e_inv.set(i, j, z.from_i64(-c));
            }
            u = e.mul(&u).expect("square");
            inv = inv.mul(&e_inv).expect("square");
        }
        (u, inv)
    }

    /// Orders of one to three cyclic factors, each in `2..=max_order`.
    pub fn finite_group(&mut self, max_order: i64) -> Vec<i64> {
        let n = 1 + self.index(if max_order <= 4 { 3 } else { 2 });
        (0..n).map(|_| self.range(2, max_order)).collect()
    }

    /// An integer complex with at most four terms of rank at most three and
    /// entries in `[-9, 9]`: a sum of `Z --d--> Z` and free pieces, in
    /// random bases.
    pub fn z_complex(&mut self) -> ChainComplex {
        let z = Ring::integers();
        let len = 1 + self.index(4);
        let mut ranks = vec![0usize; len];
        let mut sum = ChainComplex::zero(&z).with_len(len);
        for n in 0..len {
            while ranks[n] < 3 && self.rng.gen_bool(0.6) {
                if n + 1 < len && ranks[n + 1] < 3 && self.rng.gen_bool(0.6) {
                    let d = self.range(-9, 9);
                    sum = sum.direct_sum(&elementary(&z, n, d));
                    ranks[n + 1] += 1;
                } else {
                    sum = sum.direct_sum(&elementary(&z, n, 0).truncate(n));
                }
                ranks[n] += 1;
            }
        }
        for _ in 0..20 {
            let c = self.change_bases(&sum);
            if c.diffs().iter().all(|d| d.matrix().to_bigint_rows().iter().flatten().all(|e| e.magnitude() <= &9u32.into())) {
                return c;
            }
        }
        sum
    }

    /// The same complex after a random unimodular change of basis in every
    /// degree.
    pub fn change_bases(&mut self, c: &ChainComplex) -> ChainComplex {
        let bases: Vec<(Matrix, Matrix)> = (0..c.len()).map(|n| self.unimodular(c.rank(n))).collect();
        conjugate(c, &bases)
    }

    /// A free resolution of `Z/n_1 ⊕ ... ⊕ Z/n_j`, padded by one or two
    /// identity pairs and written in random bases.
    pub fn padded_resolution(&mut self, orders: &[i64]) -> Resolution {
        let z = Ring::integers();
        let base = free_resolution_z(&FPModule::integer_torsion(orders)).expect("integer module");
        let mut res = base;
        for _ in 0..1 + self.index(2) {
            let degree = 1 + self.index(2);
            res = res.padded(&FreeModule::new(&z, 1), degree);
        }
        let bases: Vec<(Matrix, Matrix)> = (0..res.complex().len()).map(|n| self.unimodular(res.complex().rank(n))).collect();
        let complex = conjugate(res.complex(), &bases);
        let aug = res.augmentation().matrix().mul(&bases[0].1).expect("shapes");
        let aug = FreeMap::new(complex.term(0), res.augmentation().target().clone(), aug).expect("integer map");
        Resolution::new(complex, res.module().clone(), aug).expect("same shapes")
    }
}

/// `Z --d--> Z` in degrees `n + 1` and `n`.
fn elementary(z: &Ring, n: usize, d: i64) -> ChainComplex {
    let mut ranks = vec![0usize; n + 2];
    ranks[n] = 1;
    ranks[n + 1] = 1;
    let matrices = (1..=n + 1)
        .map(|k| if k == n + 1 { Matrix::from_i64_rows(z, &[&[d]]) } else { Matrix::zeros(z, ranks[k - 1], ranks[k]) })
        .collect();
    ChainComplex::from_matrices(z, &ranks, matrices).expect("single map")
}

/// `∂'_n = U_{n-1} ∂_n U_n^{-1}` for bases `(U_n, U_n^{-1})`.
pub fn conjugate(c: &ChainComplex, bases: &[(Matrix, Matrix)]) -> ChainComplex {
    let matrices: Vec<Matrix> = (1..c.len())
        .map(|n| bases[n - 1].0.mul(c.diff(n).matrix()).and_then(|m| m.mul(&bases[n].1)).expect("shapes"))
        .collect();
    ChainComplex::from_terms_and_matrices(c.ring(), c.terms().to_vec(), matrices).expect("conjugate of a complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, HomologyOptions};

    #[test]
    fn deterministic_and_bounded() {
        let (mut a, mut b) = (Sampler::new(7), Sampler::new(7));
        for _ in 0..20 {
            let c = a.z_complex();
            assert_eq!(c, b.z_complex());
            assert!(c.len() <= 4 && c.terms().iter().all(|t| t.rank() <= 3));
        }
    }

    #[test]
    fn padding_keeps_homology() {
        let mut s = Sampler::new(3);
        let opts = HomologyOptions::default();
        for _ in 0..10 {
            let orders = s.finite_group(12);
            let plain = free_resolution_z(&FPModule::integer_torsion(&orders)).unwrap();
            let padded = s.padded_resolution(&orders);
            let (h1, h2) = (homology(plain.complex(), &opts).unwrap(), homology(padded.complex(), &opts).unwrap());
            assert!(h1.same_as(&h2));
        }
    }
}
