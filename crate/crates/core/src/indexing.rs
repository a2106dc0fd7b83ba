//! Multi-index combinatorics for monomial multivectors `u_I ∂_J`.
//!
//! `I` is a multiset of coordinate indices (a monomial `u_{i1} ⋯ u_{ik}`), `J` is a
//! strictly increasing index set (a wedge `∂_{j1} ∧ ⋯ ∧ ∂_{jk}`). All indices are
//! 1-based and range over `1..=n-1`, where `n` is the ambient dimension and the
//! coordinate `t` is not indexed here.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

/// The maximum of a possibly empty index set. `Bottom` is below every index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Bottom,
    At(usize),
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n))
    }
}

fn check_range(entries: &[usize], n: usize) -> Result<()> {
    for &e in entries {
        if e == 0 || e >= n {
            return Err(Error::IndexOutOfRange { index: e, n });
        }
    }
    Ok(())
}

/// Non-decreasing multi-index `I`, the exponent pattern of `u_I`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct MultisetIndex(Vec<usize>);

impl MultisetIndex {
    /// Builds a multiset from entries in any order.
    pub fn new(mut entries: Vec<usize>, n: usize) -> Result<Self> {
        check_range(&entries, n)?;
        entries.sort_unstable();
        Ok(MultisetIndex(entries))
    }

    pub fn empty() -> Self {
        MultisetIndex(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_entry(&self) -> Bound {
        self.0.last().map_or(Bound::Bottom, |&m| Bound::At(m))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Multiset union: `u_{I ∪ m} = u_I u_m`.
    pub fn with(&self, m: usize) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|&x| x <= m);
        v.insert(pos, m);
        MultisetIndex(v)
    }

    /// Lowers the multiplicity of `m` by one, if present.
    pub fn without(&self, m: usize) -> Option<Self> {
        let pos = self.0.iter().position(|&x| x == m)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(MultisetIndex(v))
    }

    /// Exponent vector of `u_I` over `u_1..u_{n-1}` (index 0 unused).
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0u32; n];
        for &i in &self.0 {
            e[i] += 1;
        }
        e
    }
}

/// Strictly increasing multi-index `J`, the generator set of `∂_J`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct IncreasingIndex(Vec<usize>);

impl IncreasingIndex {
    /// Builds an increasing index; entries must already be strictly increasing.
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        check_range(&entries, n)?;
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract(format!(
                "index {entries:?} is not strictly increasing"
            )));
        }
        Ok(IncreasingIndex(entries))
    }

    pub(crate) fn from_sorted(entries: Vec<usize>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        IncreasingIndex(entries)
    }

    pub fn empty() -> Self {
        IncreasingIndex(Vec::new())
    }

    /// `∂_1 ∧ ⋯ ∧ ∂_{n-1}`.
    pub fn full(n: usize) -> Self {
        IncreasingIndex((1..n).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max_entry(&self) -> Bound {
        self.0.last().map_or(Bound::Bottom, |&m| Bound::At(m))
    }

    /// Set union with a single index not already present.
    pub fn with(&self, m: usize) -> Option<Self> {
        match self.0.binary_search(&m) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, m);
                Some(IncreasingIndex(v))
            }
        }
    }

    pub fn without(&self, m: usize) -> Option<Self> {
        let pos = self.0.binary_search(&m).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(IncreasingIndex(v))
    }
}

impl fmt::Display for MultisetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl fmt::Display for IncreasingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    write!(f, "({})", parts.join(","))
}

/// Sorted elements of `{1, …, n-1}` missing from `J`.
pub fn complement(j: &IncreasingIndex, n: usize) -> Result<IncreasingIndex> {
    check_range(&j.0, n)?;
    Ok(IncreasingIndex((1..n).filter(|i| !j.contains(*i)).collect()))
}

/// Sign of the permutation sorting the concatenation `(a, b)`, or 0 when the two
/// slices share an element. Both slices must be strictly increasing.
pub fn merge_sign_slices(a: &[usize], b: &[usize]) -> i32 {
    // count inversions: pairs (x in a, y in b) with x > y
    let mut inversions = 0usize;
    let mut ib = 0;
    for &x in a {
        while ib < b.len() && b[ib] < x {
            ib += 1;
        }
        if ib < b.len() && b[ib] == x {
            return 0;
        }
        inversions += ib;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `∂_{J1} ∧ ∂_{J2} = merge_sign(J1, J2) ∂_{J1 ∪ J2}`.
pub fn merge_sign(j1: &IncreasingIndex, j2: &IncreasingIndex) -> i32 {
    merge_sign_slices(&j1.0, &j2.0)
}

/// Merges two disjoint increasing slices into one sorted vector.
pub(crate) fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A monomial multivector `u_I ∂_J` in ambient dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexPair {
    pub i: MultisetIndex,
    pub j: IncreasingIndex,
    pub n: usize,
}

impl Ord for IndexPair {
    // J outer, I inner; this is the enumeration order
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.j.len(), &self.j, self.i.len(), &self.i).cmp(&(
            other.n,
            other.j.len(),
            &other.j,
            other.i.len(),
            &other.i,
        ))
    }
}

impl PartialOrd for IndexPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i: Vec<String> = self.i.0.iter().map(|x| x.to_string()).collect();
        let j: Vec<String> = self.j.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({}|{})", i.join(","), j.join(","))
    }
}

impl IndexPair {
    pub fn new(i: Vec<usize>, j: Vec<usize>, n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(IndexPair {
            i: MultisetIndex::new(i, n)?,
            j: IncreasingIndex::new(j, n)?,
            n,
        })
    }

    pub fn complement(&self) -> IncreasingIndex {
        IncreasingIndex((1..self.n).filter(|x| !self.j.contains(*x)).collect())
    }

    /// `max(I) ≤ max(J^c)` with `max(∅) = Bottom`.
    pub fn is_admissible(&self) -> bool {
        self.i.max_entry() <= self.complement().max_entry()
    }
}

pub fn is_admissible(p: &IndexPair) -> bool {
    p.is_admissible()
}

/// `u_I ∂_J ↦ u_{I∪m} ∂_{J∪m}` with `m = max J^c`; lands on a non-admissible pair.
pub fn good_to_bad(p: &IndexPair) -> Result<IndexPair> {
    if !p.is_admissible() {
        return Err(Error::Contract(format!("{p} is not admissible")));
    }
    let m = match p.complement().max_entry() {
        Bound::At(m) => m,
        Bound::Bottom => {
            return Err(Error::Degenerate(format!(
                "{p} has empty complement, no index to add"
            )))
        }
    };
    Ok(IndexPair {
        i: p.i.with(m),
        j: p.j.with(m).expect("m lies in the complement"),
        n: p.n,
    })
}

/// `u_I ∂_J ↦ u_{I∖m} ∂_{J∖m}` with `m = max(I ∩ J)`; inverse of [`good_to_bad`].
pub fn bad_to_good(p: &IndexPair) -> Result<(IndexPair, usize)> {
    if p.is_admissible() {
        return Err(Error::Contract(format!("{p} is admissible")));
    }
    let m = p
        .i
        .entries()
        .iter()
        .rev()
        .copied()
        .find(|&x| p.j.contains(x))
        .expect("a non-admissible pair has max I in J");
    let pair = IndexPair {
        i: p.i.without(m).expect("m in I"),
        j: p.j.without(m).expect("m in J"),
        n: p.n,
    };
    Ok((pair, m))
}

/// Binomial coefficient; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `1..=m` in lexicographic order.
pub fn increasing_indices(m: usize, k: usize) -> Vec<IncreasingIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IncreasingIndex>) {
        if cur.len() == k {
            out.push(IncreasingIndex(cur.clone()));
            return;
        }
        for x in start..=m {
            if m - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(1, m, k, &mut cur, &mut out);
    out
}

/// All multisets of size `l` from `1..=m` in lexicographic order.
pub fn multiset_indices(m: usize, l: usize) -> Vec<MultisetIndex> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(start: usize, m: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<MultisetIndex>) {
        if cur.len() == l {
            out.push(MultisetIndex(cur.clone()));
            return;
        }
        for x in start..=m {
            cur.push(x);
            rec(x, m, l, cur, out);
            cur.pop();
        }
    }
    if m == 0 && l > 0 {
        return out;
    }
    rec(1, m, l, &mut cur, &mut out);
    out
}

/// The canonical basis `B^{k,l}` (or its admissible part) of `u`-homogeneous
/// `k`-vectors with coefficients of degree `l`, in `J`-outer, `I`-inner order.
pub fn enumerate_pairs(k: usize, l: usize, n: usize, admissible_only: bool) -> Vec<IndexPair> {
    if n < 2 || k > n - 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let multisets = multiset_indices(n - 1, l);
    for j in increasing_indices(n - 1, k) {
        for i in &multisets {
            let p = IndexPair {
                i: i.clone(),
                j: j.clone(),
                n,
            };
            if !admissible_only || p.is_admissible() {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inc(v: &[usize]) -> IncreasingIndex {
        IncreasingIndex(v.to_vec())
    }

    fn pair(i: &[usize], j: &[usize], n: usize) -> IndexPair {
        IndexPair::new(i.to_vec(), j.to_vec(), n).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&inc(&[1, 3]), 4).unwrap(), inc(&[2]));
        assert_eq!(complement(&inc(&[]), 3).unwrap(), inc(&[1, 2]));
        assert_eq!(complement(&inc(&[1, 2]), 3).unwrap(), inc(&[]));
        assert!(matches!(
            complement(&inc(&[3]), 3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
    }

    #[test]
    fn admissibility_examples() {
        assert!(pair(&[1], &[1], 3).is_admissible());
        assert!(!pair(&[2], &[2], 3).is_admissible());
        for n in 2..6 {
            for j in 0..n {
                for jj in increasing_indices(n - 1, j) {
                    let p = IndexPair { i: MultisetIndex::empty(), j: jj, n };
                    assert!(p.is_admissible());
                }
            }
        }
    }

    #[test]
    fn bottom_is_below_everything() {
        assert!(Bound::Bottom < Bound::At(0));
        assert!(Bound::Bottom <= Bound::Bottom);
    }

    #[test]
    fn merge_sign_examples() {
        assert_eq!(merge_sign(&inc(&[1]), &inc(&[2])), 1);
        assert_eq!(merge_sign(&inc(&[2]), &inc(&[1])), -1);
        assert_eq!(merge_sign(&inc(&[1, 3]), &inc(&[2])), -1);
        assert_eq!(merge_sign(&inc(&[1, 3]), &inc(&[3])), 0);
        assert_eq!(merge_sign(&inc(&[]), &inc(&[2, 4])), 1);
    }

    #[test]
    fn good_to_bad_examples() {
        assert_eq!(good_to_bad(&pair(&[1], &[1], 3)).unwrap(), pair(&[1, 2], &[1, 2], 3));
        assert_eq!(good_to_bad(&pair(&[], &[], 3)).unwrap(), pair(&[2], &[2], 3));
        assert_eq!(good_to_bad(&pair(&[1, 1], &[2], 3)).unwrap(), pair(&[1, 1, 1], &[1, 2], 3));
        assert!(matches!(good_to_bad(&pair(&[2], &[2], 3)), Err(Error::Contract(_))));
        assert!(matches!(good_to_bad(&pair(&[], &[1, 2], 3)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn bad_to_good_examples() {
        assert_eq!(bad_to_good(&pair(&[2], &[2], 3)).unwrap(), (pair(&[], &[], 3), 2));
        assert_eq!(bad_to_good(&pair(&[1, 2], &[1, 2], 3)).unwrap(), (pair(&[1], &[1], 3), 2));
        assert_eq!(
            bad_to_good(&pair(&[1, 1, 1], &[1, 2], 3)).unwrap(),
            (pair(&[1, 1], &[2], 3), 1)
        );
        assert!(matches!(bad_to_good(&pair(&[1], &[1], 3)), Err(Error::Contract(_))));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_pairs(1, 1, 3, false).len(), 4);
        let adm = enumerate_pairs(1, 1, 3, true);
        assert_eq!(adm, vec![pair(&[1], &[1], 3), pair(&[2], &[1], 3), pair(&[1], &[2], 3)]);
        assert!(enumerate_pairs(2, 2, 3, true).is_empty());
        assert!(enumerate_pairs(3, 0, 3, false).is_empty());
    }

    #[test]
    fn enumeration_counts_match_binomials() {
        for n in 2..=6 {
            for k in 0..n {
                for l in 0..=4 {
                    assert_eq!(
                        enumerate_pairs(k, l, n, false).len(),
                        binomial(n - 1, k) * binomial(n - 2 + l, l)
                    );
                }
            }
        }
    }

    #[test]
    fn admissibility_matches_run_description() {
        // if n-1 ∉ J every I is fine; otherwise I must avoid the top run r..n-1 of J
        for n in 2..=6 {
            for k in 0..n {
                for l in 0..=4 {
                    for p in enumerate_pairs(k, l, n, false) {
                        let top = n - 1;
                        let expected = if !p.j.contains(top) {
                            true
                        } else {
                            let mut r = top;
                            while r > 1 && p.j.contains(r - 1) {
                                r -= 1;
                            }
                            p.i.entries().iter().all(|&x| x < r)
                        };
                        assert_eq!(p.is_admissible(), expected, "{p}");
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range_indices_rejected() {
        assert!(IndexPair::new(vec![0], vec![], 3).is_err());
        assert!(IndexPair::new(vec![], vec![2, 1], 3).is_err());
        assert!(IndexPair::new(vec![], vec![1], 1).is_err());
    }
}
