//! Multivector fields on `ℝⁿ = ℝ_t × ℝ^{n-1}_u` with polynomial coefficients.
//!
//! Every term is stored against a normalized generator word in the fixed order
//! `∂t, ∂_{u1}, …, ∂_{u_{n-1}}`; any reordering sign is absorbed into the
//! coefficient, so equality of multivectors is equality of term maps.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::indexing::{check_dim, merge_sign_slices, merge_sorted, IncreasingIndex};

/// A normalized generator word `∂t^{dt} ∧ ∂_J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Blade {
    pub dt: bool,
    pub j: IncreasingIndex,
}

impl Blade {
    pub fn new(dt: bool, j: IncreasingIndex) -> Self {
        Blade { dt, j }
    }

    pub fn scalar() -> Self {
        Blade { dt: false, j: IncreasingIndex::empty() }
    }

    pub fn degree(&self) -> usize {
        self.dt as usize + self.j.len()
    }

    /// Generator word with `0` standing for `∂t`.
    pub fn generators(&self) -> Vec<usize> {
        let mut g = Vec::with_capacity(self.degree());
        if self.dt {
            g.push(0);
        }
        g.extend_from_slice(self.j.entries());
        g
    }

    pub fn from_generators(g: Vec<usize>) -> Self {
        match g.first() {
            Some(0) => Blade { dt: true, j: IncreasingIndex::from_sorted(g[1..].to_vec()) },
            _ => Blade { dt: false, j: IncreasingIndex::from_sorted(g) },
        }
    }

    /// `self ∧ other` as `(sign, blade)`, or `None` when a generator repeats.
    pub fn wedge(&self, other: &Blade) -> Option<(i32, Blade)> {
        let (a, b) = (self.generators(), other.generators());
        let s = merge_sign_slices(&a, &b);
        if s == 0 {
            return None;
        }
        Some((s, Blade::from_generators(merge_sorted(&a, &b))))
    }
}

impl Ord for Blade {
    // ∂t-terms first, then J lexicographically
    fn cmp(&self, other: &Self) -> Ordering {
        other.dt.cmp(&self.dt).then_with(|| self.j.cmp(&other.j))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which homogeneous decomposition [`PolyMultivector::grade_parts`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// Total `(t, u)`-degree of the coefficient.
    CoefficientDegree,
    /// `u`-degree of the coefficient minus `|J|`; `∂t` carries no weight.
    EulerWeight,
}

/// A `k`-vector field with polynomial coefficients in `(t, u_1, …, u_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMultivector {
    n: usize,
    k: usize,
    terms: BTreeMap<Blade, Polynomial>,
}

impl PolyMultivector {
    pub fn zero(n: usize, k: usize) -> Self {
        PolyMultivector { n, k, terms: BTreeMap::new() }
    }

    pub fn try_zero(n: usize, k: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self::zero(n, k))
    }

    pub fn function(p: Polynomial) -> Self {
        Self::from_blade(Blade::scalar(), p)
    }

    pub fn from_blade(b: Blade, p: Polynomial) -> Self {
        let mut mv = PolyMultivector::zero(p.dim(), b.degree());
        if !p.is_zero() {
            mv.terms.insert(b, p);
        }
        mv
    }

    /// `c · m · ∂_B`.
    pub fn monomial(c: Rational, m: Monomial, b: Blade) -> Self {
        Self::from_blade(b, Polynomial::term(m, c))
    }

    /// The coordinate vector field `∂_{x_var}` (`var = 0` is `∂t`).
    pub fn generator(n: usize, var: usize) -> Self {
        let b = if var == 0 {
            Blade::new(true, IncreasingIndex::empty())
        } else {
            Blade::new(false, IncreasingIndex::from_sorted(vec![var]))
        };
        Self::from_blade(b, Polynomial::constant(n, Rational::one()))
    }

    /// The Euler vector field `E = Σ u_i ∂_{u_i}`.
    pub fn euler_field(n: usize) -> Self {
        let mut e = PolyMultivector::zero(n, 1);
        for i in 1..n {
            e.add_blade(Blade::new(false, IncreasingIndex::from_sorted(vec![i])), &Polynomial::var(n, i));
        }
        e
    }

    /// `Λ_book = ∂t ∧ E`.
    pub fn book(n: usize) -> Self {
        Self::generator(n, 0).wedge(&Self::euler_field(n))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &Blade) -> Polynomial {
        self.terms.get(b).cloned().unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().map(Polynomial::len).sum()
    }

    /// `true` when some coefficient depends on `t`.
    pub fn depends_on_t(&self) -> bool {
        self.terms.values().any(|p| !p.is_t_free())
    }

    pub fn has_dt_part(&self) -> bool {
        self.terms.keys().any(|b| b.dt)
    }

    pub(crate) fn add_blade(&mut self, b: Blade, p: &Polynomial) {
        debug_assert_eq!(b.degree(), self.k);
        if p.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(p.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_blade_term(&mut self, b: Blade, m: Monomial, c: Rational) {
        self.add_blade(b, &Polynomial::term(m, c))
    }

    /// Relabels the degree of a zero field (saturated brackets and parts of
    /// degree-0 fields carry a nominal degree). Panics on a nonzero field of
    /// another degree.
    pub fn with_degree(mut self, k: usize) -> Self {
        assert!(self.is_zero() || self.k == k, "cannot relabel a nonzero {}-vector as degree {k}", self.k);
        self.k = k;
        self
    }

    pub fn try_add(&self, other: &PolyMultivector) -> Result<PolyMultivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.k != other.k {
            return Err(Error::Degree(format!(
                "cannot add a {}-vector and a {}-vector",
                self.k, other.k
            )));
        }
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.add_blade(b.clone(), p);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> PolyMultivector {
        self.map_coefficients(|p| p.scale(c))
    }

    /// Applies `f` to every coefficient polynomial, keeping each blade.
    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMultivector {
        let mut out = PolyMultivector::zero(self.n, self.k);
        for (b, p) in &self.terms {
            out.add_blade(b.clone(), &f(p));
        }
        out
    }

    /// Keeps the terms whose blade satisfies `keep`.
    pub fn filter_blades(&self, keep: impl Fn(&Blade) -> bool) -> PolyMultivector {
        let mut out = PolyMultivector::zero(self.n, self.k);
        for (b, p) in &self.terms {
            if keep(b) {
                out.terms.insert(b.clone(), p.clone());
            }
        }
        out
    }

    pub fn try_wedge(&self, other: &PolyMultivector) -> Result<PolyMultivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = PolyMultivector::zero(self.n, self.k + other.k);
        for (b1, p1) in &self.terms {
            for (b2, p2) in &other.terms {
                if let Some((s, b)) = b1.wedge(b2) {
                    let prod = p1 * p2;
                    let prod = if s < 0 { -&prod } else { prod };
                    out.add_blade(b, &prod);
                }
            }
        }
        Ok(out)
    }

    /// Exterior product. Panics on a dimension mismatch; see [`Self::try_wedge`].
    pub fn wedge(&self, other: &PolyMultivector) -> PolyMultivector {
        self.try_wedge(other).expect("wedge of multivectors in different dimensions")
    }

    /// `a` in the splitting `μ = ∂t ∧ a + b`, a `(k-1)`-vector without `∂t`.
    /// Zero when `k = 0`.
    pub fn dt_part(&self) -> PolyMultivector {
        let mut a = PolyMultivector::zero(self.n, self.k.saturating_sub(1));
        for (b, p) in &self.terms {
            if b.dt {
                a.terms.insert(Blade::new(false, b.j.clone()), p.clone());
            }
        }
        a
    }

    /// `b` in the splitting `μ = ∂t ∧ a + b`.
    pub fn plain_part(&self) -> PolyMultivector {
        self.filter_blades(|b| !b.dt)
    }

    /// `∂t ∧ self`; terms already containing `∂t` vanish.
    pub fn dt_wedge(&self) -> PolyMultivector {
        let mut out = PolyMultivector::zero(self.n, self.k + 1);
        for (b, p) in &self.terms {
            if !b.dt {
                out.terms.insert(Blade::new(true, b.j.clone()), p.clone());
            }
        }
        out
    }

    /// Coefficient-wise `∂/∂t`.
    pub fn partial_t(&self) -> PolyMultivector {
        self.map_coefficients(|p| p.partial(0))
    }

    /// Coefficient-wise `∂/∂x_var`.
    pub fn partial(&self, var: usize) -> PolyMultivector {
        self.map_coefficients(|p| p.partial(var))
    }

    /// Coefficient-wise `u`-Euler derivative `E(μ)`; `t` is untouched.
    pub fn euler_apply(&self) -> PolyMultivector {
        self.map_coefficients(Polynomial::euler)
    }

    /// Right derivative with respect to the odd generator for `x_var`: the
    /// generator is moved to the end of each word and removed.
    fn odd_derivative(&self, var: usize) -> PolyMultivector {
        let mut out = PolyMultivector::zero(self.n, self.k.saturating_sub(1));
        for (b, p) in &self.terms {
            let g = b.generators();
            if let Some(pos) = g.iter().position(|&x| x == var) {
                let after = g.len() - pos - 1;
                let mut rest = g;
                rest.remove(pos);
                let p = if after % 2 == 1 { -p } else { p.clone() };
                out.add_blade(Blade::from_generators(rest), &p);
            }
        }
        out
    }

    /// Schouten bracket, normalized so that `[X, f] = X(f)`, `[X, Y]` is the Lie
    /// bracket of vector fields and `[X∧Y, μ] = X∧L_Y μ − Y∧L_X μ`.
    pub fn try_schouten(&self, other: &PolyMultivector) -> Result<PolyMultivector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let (p, q) = (self.k as i64, other.k as i64);
        let degree = (self.k + other.k).saturating_sub(1);
        let mut out = PolyMultivector::zero(self.n, degree);
        let sign_flip = ((p - 1) * (q - 1)).rem_euclid(2) == 1;
        for var in 0..self.n {
            if self.k > 0 {
                let t1 = self.odd_derivative(var).wedge(&other.partial(var));
                out = out.try_add(&t1.with_degree(degree))?;
            }
            if other.k > 0 {
                let t2 = other.odd_derivative(var).wedge(&self.partial(var));
                let t2 = if sign_flip { t2 } else { -&t2 };
                out = out.try_add(&t2.with_degree(degree))?;
            }
        }
        Ok(out)
    }

    pub fn schouten(&self, other: &PolyMultivector) -> PolyMultivector {
        self.try_schouten(other).expect("bracket of multivectors in different dimensions")
    }

    /// Poisson differential of `Λ_book` via the closed form
    /// `d(∂t∧a + b) = ∂t∧(E∧∂t a + E(b) − k b) − E∧∂t b`, applied term by term.
    pub fn d_book(&self) -> PolyMultivector {
        let mut out = PolyMultivector::zero(self.n, self.k + 1);
        for (b, m, c) in self.flat_terms() {
            for (b2, m2, c2) in d_book_term(self.k, b, m) {
                out.add_blade_term(b2, m2, c * c2);
            }
        }
        out
    }

    /// Splits into homogeneous pieces; the pieces sum back to `self`.
    pub fn grade_parts(&self, grading: Grading) -> BTreeMap<i64, PolyMultivector> {
        let mut parts: BTreeMap<i64, PolyMultivector> = BTreeMap::new();
        for (b, p) in &self.terms {
            for (m, c) in p.terms() {
                let g = match grading {
                    Grading::CoefficientDegree => m.total_degree() as i64,
                    Grading::EulerWeight => m.u_degree() as i64 - b.j.len() as i64,
                };
                parts
                    .entry(g)
                    .or_insert_with(|| PolyMultivector::zero(self.n, self.k))
                    .add_blade_term(b.clone(), m.clone(), c.clone());
            }
        }
        parts
    }

    /// Every `(blade, monomial, coefficient)` triple in canonical order.
    pub fn flat_terms(&self) -> impl Iterator<Item = (&Blade, &Monomial, &Rational)> {
        self.terms.iter().flat_map(|(b, p)| p.terms().map(move |(m, c)| (b, m, c)))
    }

    pub fn max_coefficient_degree(&self) -> Option<u32> {
        self.flat_terms().map(|(_, m, _)| m.total_degree()).max()
    }

    /// Exact evaluation of every coefficient at a point, keyed by blade.
    pub fn evaluate(&self, point: &[Rational]) -> BTreeMap<Blade, Rational> {
        self.terms
            .iter()
            .map(|(b, p)| (b.clone(), p.evaluate(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

/// `d_book(m·∂_B)` for a single monomial term of degree `k`.
pub(crate) fn d_book_term(k: usize, b: &Blade, m: &Monomial) -> Vec<(Blade, Monomial, Rational)> {
    let n = m.dim();
    let mut out = Vec::new();
    let te = m.t_exp();
    if !b.dt {
        // ∂t∧(E(b) − k b)
        let w = i64::from(m.u_degree()) - k as i64;
        if w != 0 {
            out.push((Blade::new(true, b.j.clone()), m.clone(), Rational::from_integer(w.into())));
        }
    }
    if te > 0 {
        // ∂t∧E∧∂t a for dt-terms, −E∧∂t b for the others
        let dm = m.with_exp(0, te - 1);
        for i in 1..n {
            if b.j.contains(i) {
                continue;
            }
            let s = merge_sign_slices(&[i], b.j.entries());
            let j2 = IncreasingIndex::from_sorted(merge_sorted(&[i], b.j.entries()));
            let m2 = dm.with_exp(i, dm.exp(i) + 1);
            let c = i64::from(te) * i64::from(s) * if b.dt { 1 } else { -1 };
            out.push((Blade::new(b.dt, j2), m2, Rational::from_integer(c.into())));
        }
    }
    out
}

impl Add for PolyMultivector {
    type Output = PolyMultivector;
    fn add(self, rhs: PolyMultivector) -> PolyMultivector {
        self.try_add(&rhs).expect("incompatible multivector sum")
    }
}

impl Add for &PolyMultivector {
    type Output = PolyMultivector;
    fn add(self, rhs: &PolyMultivector) -> PolyMultivector {
        self.try_add(rhs).expect("incompatible multivector sum")
    }
}

impl Neg for &PolyMultivector {
    type Output = PolyMultivector;
    fn neg(self) -> PolyMultivector {
        self.map_coefficients(|p| -p)
    }
}

impl Neg for PolyMultivector {
    type Output = PolyMultivector;
    fn neg(self) -> PolyMultivector {
        -&self
    }
}

impl Sub for &PolyMultivector {
    type Output = PolyMultivector;
    fn sub(self, rhs: &PolyMultivector) -> PolyMultivector {
        self + &(-rhs)
    }
}

impl Sub for PolyMultivector {
    type Output = PolyMultivector;
    fn sub(self, rhs: PolyMultivector) -> PolyMultivector {
        &self - &rhs
    }
}
