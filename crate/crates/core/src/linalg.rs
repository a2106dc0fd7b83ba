//! Sparse exact elimination over the integers.
//!
//! Vectors are inserted one at a time into an echelon form keyed by leading
//! column. Reduction is fraction-free (`v ← p·v − q·w`, then divide by the
//! content), so entries stay integral. Vectors with disjoint supports never
//! interact, which keeps block-diagonal systems cheap without explicit
//! blocking.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type SparseVec = BTreeMap<usize, BigInt>;
pub type RationalVec = BTreeMap<usize, Rational>;

/// Clears denominators; returns the integer vector and the positive factor
/// it was multiplied by.
pub fn clear_denominators(v: &RationalVec) -> (SparseVec, BigInt) {
    let l = v.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let out = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&i, c)| (i, c.numer() * (&l / c.denom())))
        .collect();
    (out, l)
}

fn content(v: &SparseVec) -> BigInt {
    v.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

#[derive(Debug, Clone)]
struct Pivot {
    row: SparseVec,
    /// `row = Σ combo[j] · input_j`
    combo: RationalVec,
}

/// Incremental echelon form with optional tracking of how each pivot row is
/// built from the inserted vectors.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Pivot>,
    track: bool,
}

/// `v ← p·v − q·w` with `p, q` chosen to cancel column `col`, then the content
/// is divided out. Returns the overall factor `(p, q, g)` used.
fn eliminate(v: &mut SparseVec, w: &SparseVec, col: usize) -> (BigInt, BigInt, BigInt) {
    let a = w[&col].clone();
    let b = v[&col].clone();
    let g0 = a.gcd(&b);
    let p = &a / &g0;
    let q = &b / &g0;
    if !p.is_one() {
        for c in v.values_mut() {
            *c *= &p;
        }
    }
    for (&i, c) in w {
        let e = v.entry(i).or_insert_with(BigInt::zero);
        *e -= &q * c;
        if e.is_zero() {
            v.remove(&i);
        }
    }
    let mut g = content(v);
    if g.is_zero() {
        g = BigInt::one();
    }
    if !g.is_one() {
        for c in v.values_mut() {
            *c /= &g;
        }
    }
    (p, q, g)
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { pivots: BTreeMap::new(), track: false }
    }

    /// An echelon form that remembers combinations, enabling [`Echelon::solve`].
    pub fn tracking() -> Self {
        Echelon { pivots: BTreeMap::new(), track: true }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts input vector number `id`; returns `true` if it was independent.
    pub fn insert(&mut self, id: usize, v: &RationalVec) -> bool {
        let (mut v, scale) = clear_denominators(v);
        let mut combo = RationalVec::new();
        if self.track {
            combo.insert(id, Rational::from_integer(scale));
        }
        while let Some((&col, _)) = v.iter().next() {
            let Some(piv) = self.pivots.get(&col) else {
                if self.track {
                    let g = content(&v);
                    if !g.is_one() {
                        for c in v.values_mut() {
                            *c /= &g;
                        }
                        let g = Rational::from_integer(g);
                        for c in combo.values_mut() {
                            *c /= &g;
                        }
                    }
                }
                self.pivots.insert(col, Pivot { row: v, combo });
                return true;
            };
            let (p, q, g) = eliminate(&mut v, &piv.row, col);
            if self.track {
                combine(&mut combo, &piv.combo, &p, &q, &g);
            }
        }
        false
    }

    /// Finds `x` with `Σ x_j · input_j = target`, if the target lies in the span.
    pub fn solve(&self, target: &RationalVec) -> Option<RationalVec> {
        assert!(self.track, "solve needs a tracking echelon form");
        let (mut v, scale) = clear_denominators(target);
        // invariant: v = beta·target·scale − Σ z_j input_j
        let mut beta = Rational::one();
        let mut z = RationalVec::new();
        while let Some((&col, _)) = v.iter().next() {
            let piv = self.pivots.get(&col)?;
            let (p, q, g) = eliminate(&mut v, &piv.row, col);
            let gr = Rational::from_integer(g);
            beta = beta * Rational::from_integer(p.clone()) / &gr;
            // z ← (p·z + q·combo)/g
            for c in z.values_mut() {
                *c = &*c * Rational::from_integer(p.clone()) / &gr;
            }
            let qr = Rational::from_integer(q) / &gr;
            for (&j, c) in &piv.combo {
                let e = z.entry(j).or_insert_with(Rational::zero);
                *e += c * &qr;
            }
            z.retain(|_, c| !c.is_zero());
        }
        let denom = beta * Rational::from_integer(scale);
        Some(z.into_iter().map(|(j, c)| (j, c / &denom)).filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// `combo ← (p·combo − q·other)/g`.
fn combine(combo: &mut RationalVec, other: &RationalVec, p: &BigInt, q: &BigInt, g: &BigInt) {
    let pr = Rational::from_integer(p.clone());
    let qr = Rational::from_integer(q.clone());
    let gr = Rational::from_integer(g.clone());
    for c in combo.values_mut() {
        *c = &*c * &pr;
    }
    for (&j, c) in other {
        let e = combo.entry(j).or_insert_with(Rational::zero);
        *e -= c * &qr;
    }
    combo.retain(|_, c| !c.is_zero());
    if !g.is_one() {
        for c in combo.values_mut() {
            *c /= &gr;
        }
    }
}

/// Rank of a list of sparse rational vectors.
pub fn rank(vectors: &[RationalVec]) -> usize {
    let mut e = Echelon::new();
    for (i, v) in vectors.iter().enumerate() {
        e.insert(i, v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn v(entries: &[(usize, Rational)]) -> RationalVec {
        entries.iter().cloned().collect()
    }

    #[test]
    fn rank_small() {
        let a = v(&[(0, int(1)), (1, int(2))]);
        let b = v(&[(0, int(2)), (1, int(4))]);
        let c = v(&[(1, rat(1, 3)), (2, int(1))]);
        assert_eq!(rank(&[a.clone(), b.clone()]), 1);
        assert_eq!(rank(&[a, b, c]), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[RationalVec::new()]), 0);
    }

    #[test]
    fn solve_recovers_combination() {
        let cols = vec![
            v(&[(0, int(2)), (1, int(3))]),
            v(&[(1, int(5)), (2, rat(1, 2))]),
            v(&[(0, int(4)), (1, int(6))]),
            v(&[(0, int(7)), (2, int(-3))]),
        ];
        let mut e = Echelon::tracking();
        for (i, c) in cols.iter().enumerate() {
            e.insert(i, c);
        }
        assert_eq!(e.rank(), 3);
        let target = v(&[(0, rat(3, 7)), (1, int(-2)), (2, int(9))]);
        let x = e.solve(&target).unwrap();
        let mut acc = RationalVec::new();
        for (j, c) in &x {
            for (i, a) in &cols[*j] {
                *acc.entry(*i).or_insert_with(Rational::zero) += a * c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        assert_eq!(acc, target);
    }

    #[test]
    fn solve_rejects_outside_span() {
        let mut e = Echelon::tracking();
        e.insert(0, &v(&[(0, int(1)), (1, int(1))]));
        assert!(e.solve(&v(&[(0, int(1))])).is_none());
        assert_eq!(e.solve(&RationalVec::new()), Some(RationalVec::new()));
    }
}
