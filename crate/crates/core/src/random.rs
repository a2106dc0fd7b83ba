//! Seeded generators of random exact inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Blade, Monomial, PolyMultivector, Polynomial, Rational};
use crate::cohomology::{admissible_basis, pair_field};
use crate::indexing::{enumerate_pairs, increasing_indices, MultisetIndex};

/// Deterministic source for all randomized checks.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    /// A nonzero rational with small numerator and denominator.
    pub fn rational(&mut self) -> Rational {
        let mut p: i64 = self.rng.gen_range(-6..=6);
        if p == 0 {
            p = 1;
        }
        let q: i64 = self.rng.gen_range(1..=4);
        Rational::new(p.into(), q.into())
    }

    /// A monomial in `t, u_1, …` of total degree at most `max_deg`.
    pub fn monomial(&mut self, n: usize, max_deg: u32, with_t: bool) -> Monomial {
        let d = self.rng.gen_range(0..=max_deg);
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            let v = if with_t { self.below(n) } else { 1 + self.below(n - 1) };
            exps[v] += 1;
        }
        Monomial::from_exponents(exps)
    }

    pub fn polynomial(&mut self, n: usize, max_deg: u32, terms: usize, with_t: bool) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let m = self.monomial(n, max_deg, with_t);
            p.add_term(m, self.rational());
        }
        p
    }

    /// A random blade of degree `k`; with `allow_dt = false` it avoids `∂t`.
    pub fn blade(&mut self, n: usize, k: usize, allow_dt: bool) -> Blade {
        let dt = allow_dt && k >= 1 && (k == n || self.rng.gen_bool(0.5));
        let j = increasing_indices(n - 1, if dt { k - 1 } else { k });
        let j = j.choose(&mut self.rng).expect("degree fits the dimension").clone();
        Blade::new(dt, j)
    }

    /// A random `k`-vector field with up to `terms` monomial terms.
    pub fn multivector(&mut self, n: usize, k: usize, max_deg: u32, terms: usize) -> PolyMultivector {
        self.multivector_with(n, k, max_deg, terms, true, true)
    }

    pub fn multivector_with(
        &mut self,
        n: usize,
        k: usize,
        max_deg: u32,
        terms: usize,
        allow_dt: bool,
        with_t: bool,
    ) -> PolyMultivector {
        let mut out = PolyMultivector::zero(n, k);
        if k > n || (!allow_dt && k > n - 1) {
            return out;
        }
        let count = self.range(1, terms.max(1));
        for _ in 0..count {
            let b = self.blade(n, k, allow_dt);
            let m = self.monomial(n, max_deg, with_t);
            let c = self.rational();
            out = &out + &PolyMultivector::monomial(c, m, b);
        }
        out
    }

    /// A field in `W^{k,l}`: no `∂t`, no `t`, `u`-degree exactly `l`.
    pub fn bihomogeneous(&mut self, n: usize, k: usize, l: usize, terms: usize) -> PolyMultivector {
        let pairs = enumerate_pairs(k, l, n, false);
        let mut out = PolyMultivector::zero(n, k);
        if pairs.is_empty() {
            return out;
        }
        for _ in 0..self.range(1, terms.max(1)) {
            let p = pairs.choose(&mut self.rng).expect("nonempty").clone();
            out = &out + &pair_field(&p).scale(&self.rational());
        }
        out
    }

    /// A multiset `I` of size `len` over `1..n`.
    pub fn multiset(&mut self, n: usize, len: usize) -> MultisetIndex {
        let entries = (0..len).map(|_| 1 + self.below(n - 1)).collect();
        MultisetIndex::new(entries, n).expect("entries in range")
    }

    /// A book cocycle of degree `k`: an admissible combination plus an exact part.
    pub fn cocycle(&mut self, n: usize, k: usize, max_deg: u32) -> PolyMultivector {
        let basis = admissible_basis(n, k).expect("dimension checked by caller");
        let mut out = PolyMultivector::zero(n, k);
        for b in &basis {
            if self.rng.gen_bool(0.5) {
                out = &out + &b.scale(&self.rational());
            }
        }
        if k >= 1 {
            let zeta = self.multivector(n, k - 1, max_deg, 4);
            out = (&out + &zeta.d_book().with_degree(k)).with_degree(k);
        }
        out
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_cocycle;

    #[test]
    fn deterministic_from_seed() {
        let a: Vec<_> = (0..5).map(|_| Sampler::new(7).multivector(3, 2, 3, 4)).collect();
        let mut s = Sampler::new(7);
        let b = s.multivector(3, 2, 3, 4);
        assert_eq!(a[0], b);
        assert_eq!(a[0], a[4]);
    }

    #[test]
    fn generated_shapes() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let mu = s.multivector_with(4, 2, 3, 5, false, false);
            assert!(!mu.has_dt_part() && !mu.depends_on_t());
            let w = s.bihomogeneous(4, 2, 2, 3);
            assert!(w.flat_terms().all(|(b, m, _)| m.u_degree() == 2 && b.j.len() == 2 && !b.dt));
            assert!(is_cocycle(&s.cocycle(3, 2, 3), None));
        }
    }
}
