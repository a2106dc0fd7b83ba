//! Cohomology of the polynomial model, slice by slice.
//!
//! A linear Poisson differential preserves the total coefficient degree `d`,
//! so the cochain complex splits into finite slices `C^{k,d}`. Dimensions come
//! from exact ranks; classes of book cocycles are read off the admissible
//! basis after reducing modulo the ideal generated by `E`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Blade, LinearPoisson, Monomial, PolyMultivector, Rational};
use crate::error::{Error, Result};
use crate::homotopy::taylor_part;
use crate::indexing::{
    binomial, check_dim, enumerate_pairs, increasing_indices, merge_sign, IncreasingIndex, IndexPair, MultisetIndex,
};
use crate::linalg::{Echelon, RationalVec};

/// Applies `d_book`, or `[π, ·]` when a structure is given.
fn differential(mu: &PolyMultivector, pi: Option<&LinearPoisson>) -> PolyMultivector {
    match pi {
        None => mu.d_book(),
        Some(p) => p.differential(mu),
    }
}

/// Blades of degree `k` in dimension `n`, `∂t`-blades first.
fn blades(n: usize, k: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    if k >= 1 {
        out.extend(increasing_indices(n - 1, k - 1).into_iter().map(|j| Blade::new(true, j)));
    }
    out.extend(increasing_indices(n - 1, k).into_iter().map(|j| Blade::new(false, j)));
    out
}

/// The monomial basis of `C^{k,d}`: blade-outer, monomial-inner.
pub fn slice_basis(n: usize, k: usize, d: u32) -> Vec<(Blade, Monomial)> {
    let monos = Monomial::all_of_degree(n, d);
    let mut out = Vec::new();
    for b in blades(n, k) {
        for m in &monos {
            out.push((b.clone(), m.clone()));
        }
    }
    out
}

pub fn slice_dimension(n: usize, k: usize, d: u32) -> usize {
    if k > n {
        return 0;
    }
    binomial(n, k) * binomial(d as usize + n - 1, n - 1)
}

/// One finite piece of the cochain complex with the matrix of its differential.
#[derive(Debug, Clone)]
pub struct ComplexSlice {
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub basis: Vec<(Blade, Monomial)>,
    pub target_basis: Vec<(Blade, Monomial)>,
    /// Column `j` is the image of `basis[j]`, indexed by `target_basis`.
    pub columns: Vec<RationalVec>,
}

impl ComplexSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for (j, c) in self.columns.iter().enumerate() {
            e.insert(j, c);
        }
        e.rank()
    }

    /// Coordinates of a homogeneous field in this slice's basis.
    pub fn coordinates(&self, mu: &PolyMultivector) -> Result<RationalVec> {
        coordinates_in(&self.basis, mu)
    }

    /// The field with the given coordinates.
    pub fn field(&self, coords: &RationalVec) -> PolyMultivector {
        let mut out = PolyMultivector::zero(self.n, self.k);
        for (j, c) in coords {
            let (b, m) = &self.basis[*j];
            out.add_blade_term(b.clone(), m.clone(), c.clone());
        }
        out
    }
}

type BasisIndex<'a> = HashMap<(&'a Blade, &'a Monomial), usize>;

fn basis_index(basis: &[(Blade, Monomial)]) -> BasisIndex<'_> {
    basis.iter().enumerate().map(|(i, (b, m))| ((b, m), i)).collect()
}

fn coordinates_in(basis: &[(Blade, Monomial)], mu: &PolyMultivector) -> Result<RationalVec> {
    coordinates_indexed(&basis_index(basis), mu)
}

fn coordinates_indexed(index: &BasisIndex<'_>, mu: &PolyMultivector) -> Result<RationalVec> {
    let mut out = RationalVec::new();
    for (b, m, c) in mu.flat_terms() {
        let Some(&i) = index.get(&(b, m)) else {
            return Err(Error::Contract(format!("term {m}*{:?} lies outside the slice", b.generators())));
        };
        out.insert(i, c.clone());
    }
    Ok(out)
}

/// Builds `C^{k,d}` and the matrix of `d_book` (or `[π, ·]`) into `C^{k+1,d}`.
pub fn build_slice(n: usize, k: usize, d: u32, pi: Option<&LinearPoisson>) -> Result<ComplexSlice> {
    check_dim(n)?;
    if k > n {
        return Err(Error::Degree(format!("degree {k} exceeds the dimension {n}")));
    }
    if let Some(p) = pi {
        if p.dim() != n {
            return Err(Error::DimensionMismatch(p.dim(), n));
        }
        if !p.jacobi_holds() {
            return Err(Error::InvalidStructure("[π, π] ≠ 0".into()));
        }
    }
    Ok(build_slice_unchecked(n, k, d, pi))
}

fn build_slice_unchecked(n: usize, k: usize, d: u32, pi: Option<&LinearPoisson>) -> ComplexSlice {
    let basis = slice_basis(n, k, d);
    let target_basis = if k < n { slice_basis(n, k + 1, d) } else { Vec::new() };
    let index = basis_index(&target_basis);
    let columns = basis
        .iter()
        .map(|(b, m)| {
            let e = PolyMultivector::monomial(Rational::one(), m.clone(), b.clone());
            let img = differential(&e, pi);
            coordinates_indexed(&index, &img).expect("a linear differential preserves the coefficient degree")
        })
        .collect();
    ComplexSlice { n, k, d, basis, target_basis, columns }
}

fn slice_rank(n: usize, k: usize, d: u32, pi: Option<&LinearPoisson>) -> usize {
    if k >= n {
        return 0;
    }
    build_slice_unchecked(n, k, d, pi).rank()
}

/// Dimension table of `H^{k,d}` for `0 ≤ k ≤ n`, `0 ≤ d ≤ dmax(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimsTable {
    pub n: usize,
    /// `"book"` for `Λ_book`; `"formal"` for any other linear structure.
    pub label: String,
    /// `entries[k]` lists `(d, dim H^{k,d})` for `d = 0..=dmax(k)`.
    pub entries: Vec<Vec<(u32, usize)>>,
    pub totals: Vec<usize>,
}

impl DimsTable {
    pub fn get(&self, k: usize, d: u32) -> Option<usize> {
        self.entries.get(k)?.iter().find(|(dd, _)| *dd == d).map(|(_, v)| *v)
    }
}

/// `b_k = C(n−1,k)·C(n+k−2,k)`.
pub fn expected_dimension(n: usize, k: usize) -> usize {
    binomial(n - 1, k) * binomial(n + k - 2, k)
}

/// Computes the dimension table; `dmax` defaults to `k + 3` for each `k`.
pub fn cohomology_dims(n: usize, dmax: Option<u32>, pi: Option<&LinearPoisson>) -> Result<DimsTable> {
    check_dim(n)?;
    if let Some(p) = pi {
        if p.dim() != n {
            return Err(Error::DimensionMismatch(p.dim(), n));
        }
        if !p.jacobi_holds() {
            return Err(Error::InvalidStructure("[π, π] ≠ 0".into()));
        }
    }
    let dmax_of = |k: usize| dmax.unwrap_or(k as u32 + 3);
    // ranks of D_{k,d} needed for H^{k,d} and H^{k+1,d}
    let mut jobs: Vec<(usize, u32)> = Vec::new();
    for k in 0..n {
        let top = dmax_of(k).max(dmax_of(k + 1));
        for d in 0..=top {
            jobs.push((k, d));
        }
    }
    let ranks: Vec<usize> = run_jobs(&jobs, |&(k, d)| slice_rank(n, k, d, pi));
    let rank: HashMap<(usize, u32), usize> = jobs.into_iter().zip(ranks).collect();
    let r = |k: usize, d: u32| rank.get(&(k, d)).copied().unwrap_or(0);
    let mut entries = Vec::new();
    let mut totals = Vec::new();
    for k in 0..=n {
        let mut row = Vec::new();
        for d in 0..=dmax_of(k) {
            let incoming = if k == 0 { 0 } else { r(k - 1, d) };
            let h = slice_dimension(n, k, d) - r(k, d) - incoming;
            row.push((d, h));
        }
        totals.push(row.iter().map(|(_, h)| h).sum());
        entries.push(row);
    }
    let label = match pi {
        Some(p) if !p.is_book() => "formal",
        _ => "book",
    };
    Ok(DimsTable { n, label: label.into(), entries, totals })
}

#[cfg(feature = "parallel")]
fn run_jobs<T: Sync, R: Send>(jobs: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    jobs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_jobs<T, R>(jobs: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    jobs.iter().map(f).collect()
}

pub fn is_cocycle(mu: &PolyMultivector, pi: Option<&LinearPoisson>) -> bool {
    differential(mu, pi).is_zero()
}

/// A `ζ` with `dζ = μ`, or `None` when `μ` is not exact.
pub fn find_primitive(mu: &PolyMultivector, pi: Option<&LinearPoisson>) -> Result<Option<PolyMultivector>> {
    if !is_cocycle(mu, pi) {
        return Err(Error::Contract("find_primitive needs a cocycle".into()));
    }
    let n = mu.dim();
    let k = mu.degree();
    if mu.is_zero() {
        return Ok(Some(PolyMultivector::zero(n, k.saturating_sub(1))));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut out = PolyMultivector::zero(n, k - 1);
    for (d, part) in mu.grade_parts(crate::algebra::Grading::CoefficientDegree) {
        let slice = build_slice_unchecked(n, k - 1, d as u32, pi);
        let mut e = Echelon::tracking();
        for (j, c) in slice.columns.iter().enumerate() {
            e.insert(j, c);
        }
        let target = coordinates_in(&slice.target_basis, &part)?;
        match e.solve(&target) {
            Some(x) => out = &out + &slice.field(&x),
            None => return Ok(None),
        }
    }
    Ok(Some(out.with_degree(k - 1)))
}

/// `w = admissible_part + E∧cofactor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub admissible_part: PolyMultivector,
    pub cofactor: PolyMultivector,
}

/// Splits a term `u_I ∂_J` (as blade and monomial) into its index pair.
pub fn pair_of(b: &Blade, m: &Monomial) -> IndexPair {
    let n = m.dim();
    let mut i = Vec::new();
    for v in 1..n {
        for _ in 0..m.exp(v) {
            i.push(v);
        }
    }
    IndexPair::new(i, b.j.entries().to_vec(), n).expect("indices of a stored term are in range")
}

/// The monomial field `u_I ∂_J`.
pub fn pair_field(p: &IndexPair) -> PolyMultivector {
    PolyMultivector::monomial(
        Rational::one(),
        Monomial::from_exponents(p.i.exponents(p.n)),
        Blade::new(false, p.j.clone()),
    )
}

/// Every basis field `u_I ∂_J` of `B^{k,l}`.
pub fn enumerate_pairs_fields(k: usize, l: usize, n: usize) -> Vec<PolyMultivector> {
    enumerate_pairs(k, l, n, false).iter().map(pair_field).collect()
}

/// Reduces a `t`-free field without `∂t` modulo `E∧(·)` onto admissible monomials.
pub fn reduce_mod_e(w: &PolyMultivector) -> Result<ReductionResult> {
    if w.has_dt_part() {
        return Err(Error::Domain("reduce_mod_E acts on fields without a dt-part".into()));
    }
    if w.depends_on_t() {
        return Err(Error::Domain("reduce_mod_E acts on t-free fields".into()));
    }
    let n = w.dim();
    let k = w.degree();
    let mut adm = PolyMultivector::zero(n, k);
    let mut cof = PolyMultivector::zero(n, k.saturating_sub(1));
    for (b, m, c) in w.flat_terms() {
        let p = pair_of(b, m);
        if p.is_admissible() {
            adm.add_blade_term(b.clone(), m.clone(), c.clone());
            continue;
        }
        // max(I) lies in J; m = max(I ∩ J)
        let top = p.i.entries().iter().copied().filter(|x| p.j.contains(*x)).max().expect("non-admissible term");
        let i2 = p.i.without(top).expect("top ∈ I");
        let j2 = p.j.without(top).expect("top ∈ J");
        let s = merge_sign(&IncreasingIndex::new(vec![top], n)?, &j2);
        let cs = c * Rational::from_integer(s.into());
        cof.add_blade_term(Blade::new(false, j2.clone()), Monomial::from_exponents(i2.exponents(n)), cs.clone());
        for sp in 1..n {
            if sp == top || j2.contains(sp) {
                continue;
            }
            let sgn = merge_sign(&IncreasingIndex::new(vec![sp], n)?, &j2);
            let j3 = j2.with(sp).expect("sp ∉ J'");
            let i3: MultisetIndex = i2.with(sp);
            let coeff = -(&cs) * Rational::from_integer(sgn.into());
            adm.add_blade_term(Blade::new(false, j3), Monomial::from_exponents(i3.exponents(n)), coeff);
        }
    }
    Ok(ReductionResult { admissible_part: adm, cofactor: cof })
}

/// Coordinates of a class in the admissible basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomologyClass {
    pub n: usize,
    pub k: usize,
    /// `(I′, J′)` for the basis element `∂t∧u_{I′}∂_{J′}`.
    pub dt_coords: BTreeMap<IndexPair, Rational>,
    /// `(I, J)` for the basis element `u_I∂_J`.
    pub plain_coords: BTreeMap<IndexPair, Rational>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.dt_coords.is_empty() && self.plain_coords.is_empty()
    }

    /// The admissible representative `∂t∧Σ cu_{I′}∂_{J′} + Σ cu_I∂_J`.
    pub fn representative(&self) -> PolyMultivector {
        let mut a = PolyMultivector::zero(self.n, self.k.saturating_sub(1));
        for (p, c) in &self.dt_coords {
            a = &a + &pair_field(p).scale(c);
        }
        let mut b = PolyMultivector::zero(self.n, self.k);
        for (p, c) in &self.plain_coords {
            b = &b + &pair_field(p).scale(c);
        }
        (&a.dt_wedge().with_degree(self.k) + &b).with_degree(self.k)
    }

    pub fn scale(&self, c: &Rational) -> CohomologyClass {
        let sc = |m: &BTreeMap<IndexPair, Rational>| {
            m.iter().map(|(p, v)| (p.clone(), v * c)).filter(|(_, v)| !v.is_zero()).collect()
        };
        CohomologyClass { n: self.n, k: self.k, dt_coords: sc(&self.dt_coords), plain_coords: sc(&self.plain_coords) }
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        let merge = |a: &BTreeMap<IndexPair, Rational>, b: &BTreeMap<IndexPair, Rational>| {
            let mut out = a.clone();
            for (p, v) in b {
                let e = out.entry(p.clone()).or_insert_with(Rational::zero);
                *e += v;
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        CohomologyClass {
            n: self.n,
            k: self.k,
            dt_coords: merge(&self.dt_coords, &other.dt_coords),
            plain_coords: merge(&self.plain_coords, &other.plain_coords),
        }
    }
}

fn admissible_coords(w: &PolyMultivector) -> Result<BTreeMap<IndexPair, Rational>> {
    let mut out = BTreeMap::new();
    for part in w.grade_parts(crate::algebra::Grading::CoefficientDegree).values() {
        let r = reduce_mod_e(part)?;
        for (b, m, c) in r.admissible_part.flat_terms() {
            out.insert(pair_of(b, m), c.clone());
        }
    }
    Ok(out)
}

/// Class of a book cocycle: `[∂t∧a + b] ↦ [T^{k−1}a|_{t0}] ⊕ [T^k b|_{t0}]`.
pub fn classify(mu: &PolyMultivector, t0: &Rational) -> Result<CohomologyClass> {
    if !is_cocycle(mu, None) {
        return Err(Error::Contract("classify needs a d_book-cocycle".into()));
    }
    let k = mu.degree();
    let n = mu.dim();
    let at_t0 = |x: &PolyMultivector| x.map_coefficients(|p| p.eval_t(t0));
    let a = at_t0(&taylor_part(&mu.dt_part(), k as i64 - 1));
    let b = at_t0(&taylor_part(&mu.plain_part(), k as i64));
    let dt_coords = if k >= 1 { admissible_coords(&a)? } else { BTreeMap::new() };
    let plain_coords = admissible_coords(&b)?;
    Ok(CohomologyClass { n, k, dt_coords, plain_coords })
}

/// Cup product of classes: wedge of representatives, reduced modulo `E`.
pub fn class_product(x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch(x.n, y.n));
    }
    let w = x.representative().wedge(&y.representative()).with_degree(x.k + y.k);
    classify(&w, &Rational::zero())
}

/// The admissible cocycles spanning `H^k`: `∂t∧u_{I′}∂_{J′}` first, then `u_I∂_J`.
pub fn admissible_basis(n: usize, k: usize) -> Result<Vec<PolyMultivector>> {
    check_dim(n)?;
    let mut out = Vec::new();
    if k >= 1 {
        for p in enumerate_pairs(k - 1, k - 1, n, true) {
            out.push(pair_field(&p).dt_wedge());
        }
    }
    for p in enumerate_pairs(k, k, n, true) {
        out.push(pair_field(&p));
    }
    Ok(out)
}

/// A primitive of a top-degree field `f ∂t∧∂_1∧…∧∂_{n−1}`.
pub fn top_primitive(mu: &PolyMultivector) -> Result<PolyMultivector> {
    let n = mu.dim();
    if mu.degree() != n {
        return Err(Error::Domain(format!("expected a top-degree field of degree {n}, got {}", mu.degree())));
    }
    let full = IncreasingIndex::full(n);
    let f = mu.coefficient(&Blade::new(true, full.clone()));
    let mut alpha = PolyMultivector::zero(n, n - 2);
    for i in 1..n {
        let ai = f.partial(i).t_antiderivative();
        let ai = if i % 2 == 1 { ai } else { -&ai };
        let rest = full.without(i).expect("i ∈ 1..n");
        alpha.add_blade(Blade::new(false, rest), &ai);
    }
    let beta = PolyMultivector::from_blade(Blade::new(false, full), -&f).with_degree(n - 1);
    let eta = &alpha.dt_wedge().with_degree(n - 1) + &beta;
    let scale = Rational::new(1.into(), ((n - 1) as i64).into());
    Ok(eta.scale(&scale).with_degree(n - 1))
}

/// One bidegree of the Koszul complex `(W^{•,•}, E∧)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulEntry {
    pub k: usize,
    pub l: usize,
    pub dim: usize,
    /// rank of `E∧ : W^{k−1,l−1} → W^{k,l}`
    pub rank_in: usize,
    /// dimension of the kernel of `E∧ : W^{k,l} → W^{k+1,l+1}`
    pub kernel: usize,
    pub homology: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub n: usize,
    pub l_max: usize,
    pub entries: Vec<KoszulEntry>,
    /// Exact at every spot except `(k, l) = (n−1, 0)`.
    pub exact_off_top: bool,
    /// The sequence `0 → W^0 → ⋯ → W^{n−1} → 0` along `l = k` is exact.
    pub diagonal_exact: bool,
}

fn wedge_e_rank(n: usize, k: usize, l: usize) -> usize {
    // E∧ : W^{k,l} → W^{k+1,l+1}
    if k + 1 > n - 1 {
        return 0;
    }
    let e = PolyMultivector::euler_field(n);
    let target: Vec<(Blade, Monomial)> = enumerate_pairs(k + 1, l + 1, n, false)
        .iter()
        .map(|p| (Blade::new(false, p.j.clone()), Monomial::from_exponents(p.i.exponents(n))))
        .collect();
    let index = basis_index(&target);
    let mut ech = Echelon::new();
    for (idx, p) in enumerate_pairs(k, l, n, false).iter().enumerate() {
        let img = e.wedge(&pair_field(p));
        let v = coordinates_indexed(&index, &img).expect("E∧ raises both degrees by one");
        ech.insert(idx, &v);
    }
    ech.rank()
}

pub fn koszul_exactness(n: usize, l_max: usize) -> Result<KoszulReport> {
    check_dim(n)?;
    let mut entries = Vec::new();
    for l in 0..=l_max {
        for k in 0..n {
            let dim = koszul_dimension(n, k, l);
            let rank_in = if k == 0 || l == 0 { 0 } else { wedge_e_rank(n, k - 1, l - 1) };
            let kernel = dim - wedge_e_rank(n, k, l);
            entries.push(KoszulEntry { k, l, dim, rank_in, kernel, homology: kernel - rank_in });
        }
    }
    let exact_off_top = entries.iter().all(|e| (e.homology == 0) != (e.k == n - 1 && e.l == 0));
    let diagonal_exact = entries.iter().filter(|e| e.k == e.l).all(|e| e.homology == 0 || (e.k == n - 1 && e.l == 0));
    Ok(KoszulReport { n, l_max, entries, exact_off_top, diagonal_exact })
}

/// Helper for tests and the verifier: `Σ c_j · d(e_j)` over a slice equals `d(Σ c_j e_j)`.
pub fn slice_matrix_agrees(slice: &ComplexSlice, coords: &RationalVec, pi: Option<&LinearPoisson>) -> bool {
    let mu = slice.field(coords);
    let mut acc = RationalVec::new();
    for (j, c) in coords {
        for (i, a) in &slice.columns[*j] {
            *acc.entry(*i).or_insert_with(Rational::zero) += a * c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    coordinates_in(&slice.target_basis, &differential(&mu, pi)).map(|v| v == acc).unwrap_or(false)
}

/// Total number of monomials `u_I ∂_J` in `B^{k,l}`; `|W^{k,l}|` as a dimension.
pub fn koszul_dimension(n: usize, k: usize, l: usize) -> usize {
    binomial(n - 1, k) * binomial(l + n - 2, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Grading};
    use crate::text::{format_multivector, parse_multivector};

    fn mv(s: &str, n: usize) -> PolyMultivector {
        parse_multivector(s, n).unwrap()
    }

    #[test]
    fn slice_examples() {
        let s = build_slice(2, 0, 0, None).unwrap();
        assert_eq!(s.dimension(), 1);
        assert_eq!(s.rank(), 0);
        assert_eq!(build_slice(3, 1, 1, None).unwrap().dimension(), 9);
        let s = build_slice(2, 2, 1, None).unwrap();
        assert_eq!(s.dimension(), 2);
        let text: Vec<String> = s
            .basis
            .iter()
            .map(|(b, m)| format_multivector(&PolyMultivector::monomial(int(1), m.clone(), b.clone())))
            .collect();
        assert_eq!(text, ["u1*dt^du1", "t*dt^du1"]);
        for n in 2..=4 {
            for k in 0..=n {
                for d in 0..4 {
                    assert_eq!(build_slice(n, k, d, None).unwrap().dimension(), slice_dimension(n, k, d));
                }
            }
        }
    }

    #[test]
    fn slice_matrix_matches_differential() {
        let s = build_slice(3, 1, 2, None).unwrap();
        let coords: RationalVec = (0..s.dimension()).map(|j| (j, int(j as i64 % 5 - 2))).collect();
        assert!(slice_matrix_agrees(&s, &coords, None));
    }

    #[test]
    fn non_poisson_structure_rejected() {
        let pi = LinearPoisson::from_bivector(mv("u1*dt^du1 + t*du1^du2", 3)).unwrap();
        assert!(matches!(build_slice(3, 1, 1, Some(&pi)), Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn dims_small() {
        assert_eq!(cohomology_dims(2, None, None).unwrap().totals, [1, 1, 0]);
        assert_eq!(cohomology_dims(3, None, None).unwrap().totals, [1, 4, 3, 0]);
        let t4 = cohomology_dims(4, None, None).unwrap();
        assert_eq!(t4.totals, [1, 9, 18, 10, 0]);
        for k in 0..=4 {
            assert_eq!(t4.totals[k], expected_dimension(4, k));
        }
    }

    #[test]
    fn concentration_in_two_degrees() {
        let t = cohomology_dims(3, None, None).unwrap();
        for (k, row) in t.entries.iter().enumerate() {
            for &(d, h) in row {
                if d as usize + 1 != k && d as usize != k {
                    assert_eq!(h, 0, "k = {k}, d = {d}");
                }
            }
        }
        // H^{k,k} counts admissible (I,J) with |I| = |J| = k; H^{k,k−1} the ∂t ones
        assert_eq!(t.get(2, 2), Some(enumerate_pairs(2, 2, 3, true).len()));
        assert_eq!(t.get(2, 1), Some(enumerate_pairs(1, 1, 3, true).len()));
    }

    #[test]
    fn book_via_structure_constants_matches() {
        let pi = LinearPoisson::book(3).unwrap();
        let t = cohomology_dims(3, None, Some(&pi)).unwrap();
        assert_eq!(t.label, "book");
        assert_eq!(t.totals, [1, 4, 3, 0]);
    }

    #[test]
    fn abelian_structure_is_formal() {
        let pi = LinearPoisson::from_structure_constants(2, &[]).unwrap();
        let t = cohomology_dims(2, Some(1), Some(&pi)).unwrap();
        assert_eq!(t.label, "formal");
        // zero differential: cohomology is the whole slice
        assert_eq!(t.get(0, 1), Some(2));
        assert_eq!(t.get(2, 0), Some(1));
    }

    #[test]
    fn cocycle_examples() {
        assert!(is_cocycle(&mv("dt", 3), None));
        for s in ["u1*du2", "u2*du1", "u2*du2"] {
            assert!(is_cocycle(&mv(s, 3), None));
        }
        assert!(!is_cocycle(&mv("t", 3), None));
        assert_eq!(mv("t", 3).d_book(), -&PolyMultivector::euler_field(3));
    }

    #[test]
    fn primitive_examples() {
        let minus_e = -&PolyMultivector::euler_field(3);
        let z = find_primitive(&minus_e, None).unwrap().unwrap();
        assert_eq!(z.d_book(), minus_e);
        assert_eq!(z, mv("t", 3));
        assert!(find_primitive(&PolyMultivector::zero(3, 1), None).unwrap().unwrap().is_zero());
        assert!(find_primitive(&mv("dt", 2), None).unwrap().is_none());
        assert!(matches!(find_primitive(&mv("t", 3), None), Err(Error::Contract(_))));
        let zeta = mv("t^2*u1*du1 + u2*dt + 3*t*u1*du2", 3);
        let mu = zeta.d_book();
        let z = find_primitive(&mu, None).unwrap().unwrap();
        assert_eq!(z.d_book(), mu);
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_mod_e(&mv("u2*du2", 3)).unwrap();
        assert_eq!(r.admissible_part, mv("-u1*du1", 3));
        assert_eq!(r.cofactor, mv("1", 3));
        let r = reduce_mod_e(&mv("u1*du1", 3)).unwrap();
        assert_eq!(r.admissible_part, mv("u1*du1", 3));
        assert!(r.cofactor.is_zero());
        let r = reduce_mod_e(&PolyMultivector::euler_field(3)).unwrap();
        assert!(r.admissible_part.is_zero());
        assert_eq!(r.cofactor, mv("1", 3));
        assert!(matches!(reduce_mod_e(&mv("dt", 3)), Err(Error::Domain(_))));
        assert!(matches!(reduce_mod_e(&mv("t*du1", 3)), Err(Error::Domain(_))));
    }

    #[test]
    fn reduction_exhaustive_small() {
        for n in 2..=4 {
            let e = PolyMultivector::euler_field(n);
            for k in 0..n {
                for l in 0..=3 {
                    for p in enumerate_pairs(k, l, n, false) {
                        let w = pair_field(&p);
                        let r = reduce_mod_e(&w).unwrap();
                        let back = &r.admissible_part + &e.wedge(&r.cofactor).with_degree(k);
                        assert_eq!(back, w, "{p}");
                        for (b, m, _) in r.admissible_part.flat_terms().chain(r.cofactor.flat_terms()) {
                            assert!(pair_of(b, m).is_admissible(), "{p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&mv("dt + u2*du1", 3), &int(0)).unwrap();
        assert_eq!(c.dt_coords.len(), 1);
        assert_eq!(c.dt_coords[&IndexPair::new(vec![], vec![], 3).unwrap()], int(1));
        assert_eq!(c.plain_coords.len(), 1);
        assert_eq!(c.plain_coords[&IndexPair::new(vec![2], vec![1], 3).unwrap()], int(1));
        assert!(classify(&PolyMultivector::euler_field(3), &int(0)).unwrap().is_zero());
        let exact = mv("t*u1*du1 + u1^2*u2*du2", 3).d_book();
        assert!(classify(&exact, &int(5)).unwrap().is_zero());
        assert!(matches!(classify(&mv("t", 3), &int(0)), Err(Error::Contract(_))));
    }

    #[test]
    fn basis_and_unit_vectors() {
        let fmt = |v: Vec<PolyMultivector>| v.iter().map(format_multivector).collect::<Vec<_>>();
        assert_eq!(fmt(admissible_basis(3, 1).unwrap()), ["dt", "u1*du1", "u2*du1", "u1*du2"]);
        assert_eq!(fmt(admissible_basis(3, 2).unwrap()), ["u1*dt^du1", "u2*dt^du1", "u1*dt^du2"]);
        for n in 2..=4 {
            for k in 0..=n {
                let basis = admissible_basis(n, k).unwrap();
                assert_eq!(basis.len(), expected_dimension(n, k));
                for b in &basis {
                    let c = classify(b, &int(0)).unwrap();
                    let coords: Vec<_> = c.dt_coords.values().chain(c.plain_coords.values()).collect();
                    assert_eq!(coords, [&int(1)]);
                    assert_eq!(&c.representative(), b);
                }
            }
        }
    }

    #[test]
    fn ring_structure_on_generators() {
        let n = 3;
        let mut gens = vec![mv("dt", n)];
        for i in 1..n {
            for j in 1..n {
                gens.push(mv(&format!("u{i}*du{j}"), n));
            }
        }
        for x in &gens {
            for y in &gens {
                let direct = classify(&x.wedge(y), &int(0)).unwrap();
                let via = class_product(&classify(x, &int(0)).unwrap(), &classify(y, &int(0)).unwrap()).unwrap();
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn top_primitive_examples() {
        let mu = mv("u1*dt^du1", 2);
        let eta = top_primitive(&mu).unwrap();
        assert_eq!(eta, mv("t*dt - u1*du1", 2));
        assert_eq!(eta.d_book(), mu);
        assert!(top_primitive(&PolyMultivector::zero(2, 2)).unwrap().is_zero());
        let mu = mv("u1*u2*dt^du1^du2", 3);
        assert_eq!(top_primitive(&mu).unwrap().d_book(), mu);
        let mu = mv("t^2*u1 *dt^du1^du2^du3 - 3*u3^2*u2*dt^du1^du2^du3", 4);
        assert_eq!(top_primitive(&mu).unwrap().d_book(), mu);
        assert!(matches!(top_primitive(&mv("dt", 3)), Err(Error::Domain(_))));
    }

    #[test]
    fn koszul_report() {
        for n in 2..=4 {
            let r = koszul_exactness(n, 4).unwrap();
            assert!(r.exact_off_top && r.diagonal_exact, "n = {n}");
        }
        let r = koszul_exactness(3, 2).unwrap();
        let diag: Vec<usize> = r.entries.iter().filter(|e| e.k == e.l).map(|e| e.dim).collect();
        assert_eq!(diag, [1, 4, 3]);
        let ranks: Vec<usize> = r.entries.iter().filter(|e| e.k == e.l && e.k > 0).map(|e| e.rank_in).collect();
        assert_eq!(ranks, [1, 3]);
        let top = r.entries.iter().find(|e| e.k == 2 && e.l == 0).unwrap();
        assert_eq!(top.homology, 1);
    }

    #[test]
    fn grade_split_round_trip() {
        let mu = mv("t*u1*du1 + u2^2*du1 + 3*du2", 3);
        let parts = mu.grade_parts(Grading::CoefficientDegree);
        let mut acc = PolyMultivector::zero(3, 1);
        for p in parts.values() {
            acc = &acc + p;
        }
        assert_eq!(acc, mu);
    }
}
