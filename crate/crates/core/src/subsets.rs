//! Lexicographic ranking of k-element subsets and signed wedge expansion.

use std::collections::BTreeMap;

use crate::ring::{Elem, Ring};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Signed binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial_signed(n: i64, k: usize) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k as i64 {
        acc *= n - i;
    }
    let mut fact = num_bigint::BigInt::from(1);
    for i in 1..=k as i64 {
        fact *= i;
    }
    acc / fact
}

/// Position of the sorted subset `s` among all `s.len()`-subsets of
/// `0..n` in lexicographic order.
pub fn subset_rank(n: usize, s: &[usize]) -> usize {
    let k = s.len();
    let mut rank = 0;
    let mut prev: usize = 0;
    for (i, &a) in s.iter().enumerate() {
        for j in prev..a {
            rank += binomial(n - j - 1, k - i - 1);
        }
        prev = a + 1;
    }
    rank
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(n: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut j = 0;
    for i in 0..k {
        loop {
            let c = binomial(n - j - 1, k - i - 1);
            if rank < c {
                break;
            }
            rank -= c;
            j += 1;
        }
        out.push(j);
        j += 1;
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..binomial(n, k)).map(|r| subset_unrank(n, k, r)).collect()
}

/// Sparse column: sorted `(row, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Elem)>;

/// Expands `v_1 ∧ v_2 ∧ ... ∧ v_k` in the basis of sorted index subsets.
pub fn wedge_expand(ring: &Ring, vectors: &[SparseVec]) -> BTreeMap<Vec<usize>, Elem> {
    let mut acc: BTreeMap<Vec<usize>, Elem> = BTreeMap::new();
    acc.insert(Vec::new(), ring.one());
    for v in vectors {
        let mut next: BTreeMap<Vec<usize>, Elem> = BTreeMap::new();
        for (set, c) in &acc {
            for (r, e) in v {
                if set.binary_search(r).is_err() {
                    let pos = set.partition_point(|s| s < r);
                    let mut t = set.clone();
                    t.insert(pos, *r);
                    let mut term = ring.mul(c, e);
                    if (set.len() - pos) % 2 == 1 {
                        term = ring.neg(&term);
                    }
                    accumulate(ring, &mut next, t, term);
                }
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

pub(crate) fn accumulate<K: Ord>(ring: &Ring, map: &mut BTreeMap<K, Elem>, key: K, value: Elem) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            if !ring.is_zero(&value) {
                v.insert(value);
            }
        }
        Entry::Occupied(mut o) => {
            let s = ring.add(o.get(), &value);
            if ring.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration() {
        for n in 0..8 {
            for k in 0..=n {
                let mut expected = Vec::new();
                // brute force lexicographic enumeration via bitmasks
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize == k {
                        expected.push((0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
                    }
                }
                expected.sort();
                assert_eq!(expected.len(), binomial(n, k));
                for (r, s) in expected.iter().enumerate() {
                    assert_eq!(subset_rank(n, s), r);
                    assert_eq!(&subset_unrank(n, k, r), s);
                }
            }
        }
    }

    #[test]
    fn signed_binomials() {
        assert_eq!(binomial_signed(-1, 3), (-1).into());
        assert_eq!(binomial_signed(-2, 2), 3.into());
        assert_eq!(binomial_signed(3, 5), 0.into());
        assert_eq!(binomial_signed(5, 2), 10.into());
    }

    #[test]
    fn wedge_sign() {
        let z = Ring::integers();
        // e1 ∧ e0 = -(e0 ∧ e1)
        let w = wedge_expand(&z, &[vec![(1, z.from_i64(1))], vec![(0, z.from_i64(1))]]);
        assert_eq!(w.get(&vec![0, 1]), Some(&z.from_i64(-1)));
        // repeated vector vanishes
        let v = vec![(0, z.from_i64(2)), (1, z.from_i64(3))];
        assert!(wedge_expand(&z, &[v.clone(), v]).is_empty());
    }
}
