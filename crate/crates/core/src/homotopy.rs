//! Homotopy operators on polynomial multivector fields.
//!
//! Every integral operator acts diagonally on `u`-homogeneous parts, so each is
//! implemented by its closed form on monomials: `ĝ` scales degree `m` by
//! `1/(m+1)`, `Θ^k` scales it by `1/(m−k)` and kills `m = k`, and `Υ` divides
//! out `u_{n−1}` after dropping the `u_{n−1}`-free part.

use num_traits::One;

use crate::algebra::{Blade, PolyMultivector, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::indexing::IncreasingIndex;

/// Outcome of checking one operator identity on a concrete input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorReport {
    pub identity_name: String,
    pub lhs: PolyMultivector,
    pub rhs: PolyMultivector,
    pub equal: bool,
}

impl OperatorReport {
    pub fn new(identity_name: impl Into<String>, lhs: PolyMultivector, rhs: PolyMultivector) -> Self {
        let equal = (&lhs - &rhs).is_zero();
        OperatorReport { identity_name: identity_name.into(), lhs, rhs, equal }
    }
}

/// `T^l` on a polynomial: the `u`-degree `l` part, `t` retained.
pub fn taylor_poly(g: &Polynomial, l: i64) -> Polynomial {
    if l < 0 {
        return Polynomial::zero(g.dim());
    }
    g.filter(|m| i64::from(m.u_degree()) == l)
}

/// `T^l` applied coefficient-wise.
pub fn taylor_part(mu: &PolyMultivector, l: i64) -> PolyMultivector {
    mu.map_coefficients(|p| taylor_poly(p, l))
}

pub fn hat_poly(g: &Polynomial) -> Polynomial {
    g.map_scale(|m| Some(Rational::new(1.into(), (i64::from(m.u_degree()) + 1).into())))
}

/// `ĝ(t,u) = ∫₀¹ g(t,su) ds`, coefficient-wise.
pub fn hat(mu: &PolyMultivector) -> PolyMultivector {
    mu.map_coefficients(hat_poly)
}

pub fn theta_poly(g: &Polynomial, k: u32) -> Polynomial {
    g.map_scale(|m| {
        let d = i64::from(m.u_degree()) - i64::from(k);
        (d != 0).then(|| Rational::new(1.into(), d.into()))
    })
}

/// `Θ^k`, coefficient-wise.
pub fn theta(mu: &PolyMultivector, k: u32) -> PolyMultivector {
    mu.map_coefficients(|p| theta_poly(p, k))
}

/// `H(∂t∧a + b) = Θ^{k−1}(a)`.
pub fn homotopy_book(mu: &PolyMultivector) -> Result<PolyMultivector> {
    let k = mu.degree();
    if k == 0 {
        return Err(Error::Degree("the book homotopy needs degree at least 1".into()));
    }
    Ok(theta(&mu.dt_part(), (k - 1) as u32))
}

/// The part `ι∘𝒯(μ) = ∂t∧T^{k−1}a + T^k b` that the book homotopy leaves behind.
pub fn taylor_projection(mu: &PolyMultivector) -> PolyMultivector {
    let k = mu.degree() as i64;
    let a = taylor_part(&mu.dt_part(), k - 1);
    let b = taylor_part(&mu.plain_part(), k);
    (&a.dt_wedge().with_degree(mu.degree()) + &b).with_degree(mu.degree())
}

pub fn upsilon_poly(f: &Polynomial) -> Polynomial {
    let last = f.dim() - 1;
    if last == 0 {
        return Polynomial::zero(f.dim());
    }
    f.map_monomials(|m| {
        let e = m.exp(last);
        (e > 0).then(|| (m.with_exp(last, e - 1), Rational::one()))
    })
}

/// `Υ(f) = (f − f|_{u_{n−1}=0}) / u_{n−1}`, coefficient-wise.
pub fn upsilon(mu: &PolyMultivector) -> PolyMultivector {
    mu.map_coefficients(upsilon_poly)
}

/// Splits `c = ∂_{n−1}∧a + b`; returns `a`.
fn koszul_split(c: &PolyMultivector) -> PolyMultivector {
    let n = c.dim();
    let last = n - 1;
    let mut a = PolyMultivector::zero(n, c.degree().saturating_sub(1));
    for (b, p) in c.terms() {
        if let Some(rest) = b.j.without(last) {
            // ∂_{J'}∧∂_{n−1} = (−1)^{|J'|} ∂_{n−1}∧∂_{J'}
            let p = if rest.len() % 2 == 1 { -p } else { p.clone() };
            a.add_blade(Blade::new(false, rest), &p);
        }
    }
    a
}

/// The Koszul contraction: returns `(ℋc, 𝒜c, ℬ𝒜c)`.
pub fn koszul_homotopy(c: &PolyMultivector) -> Result<(PolyMultivector, PolyMultivector, PolyMultivector)> {
    if c.has_dt_part() {
        return Err(Error::Domain("the Koszul homotopy acts on fields without a dt-part".into()));
    }
    let n = c.dim();
    let last = n - 1;
    let a = koszul_split(c);
    let h = upsilon(&a);
    let ac = a.map_coefficients(|p| p.set_zero(last));
    let d_last = PolyMultivector::from_blade(
        Blade::new(false, IncreasingIndex::new(vec![last], n)?),
        Polynomial::constant(n, Rational::one()),
    );
    let bac = d_last.wedge(&ac);
    Ok((h, ac, bac))
}

/// `d H μ + H d μ = μ − ι∘𝒯(μ)`.
pub fn check_book_homotopy(mu: &PolyMultivector) -> Result<OperatorReport> {
    let k = mu.degree();
    let dmu = mu.d_book();
    let mut lhs = homotopy_book(&dmu)?;
    if k >= 1 {
        lhs = &lhs + &homotopy_book(mu)?.d_book().with_degree(k);
    }
    let rhs = mu - &taylor_projection(mu);
    Ok(OperatorReport::new("book homotopy", lhs.with_degree(k), rhs))
}

/// `c − ℬ𝒜c = E∧ℋc + ℋ(E∧c)`.
pub fn check_koszul_homotopy(c: &PolyMultivector) -> Result<OperatorReport> {
    let e = PolyMultivector::euler_field(c.dim());
    let (h, _, bac) = koszul_homotopy(c)?;
    let lhs = c - &bac;
    let (h2, _, _) = koszul_homotopy(&e.wedge(c))?;
    let rhs = (&e.wedge(&h).with_degree(c.degree()) + &h2.with_degree(c.degree())).with_degree(c.degree());
    Ok(OperatorReport::new("Koszul homotopy", lhs, rhs))
}

fn function_report(name: &str, lhs: Polynomial, rhs: Polynomial) -> OperatorReport {
    OperatorReport::new(name, PolyMultivector::function(lhs), PolyMultivector::function(rhs))
}

/// `(E − l)(Σ_{|I|=l+1} u_I ĝ_I) = Σ u_I g_I`; `family` pairs each `u_I` (as
/// exponent multiset) with its `g_I`.
pub fn check_hat_removal(l: u32, family: &[(crate::indexing::MultisetIndex, Polynomial)]) -> OperatorReport {
    let n = family.first().map_or(2, |(_, g)| g.dim());
    let mut lhs_inner = Polynomial::zero(n);
    let mut rhs = Polynomial::zero(n);
    for (idx, g) in family {
        assert_eq!(idx.len() as u32, l + 1, "family index has the wrong length");
        let mut ug = g.clone();
        let mut uh = hat_poly(g);
        for &i in idx.entries() {
            ug = ug.mul_var(i);
            uh = uh.mul_var(i);
        }
        rhs += &ug;
        lhs_inner += &uh;
    }
    let lhs = &lhs_inner.euler() - &lhs_inner.scale(&Rational::from_integer(l.into()));
    function_report("hat removal", lhs, rhs)
}

/// The six items of the `Θ` proposition, for a function `g`, level `k ≥ 1`
/// and a variable index `i ∈ 1..n`.
pub fn check_theta_items(g: &Polynomial, k: u32, i: usize) -> Vec<OperatorReport> {
    let kk = Rational::from_integer(k.into());
    let e_minus_k = |p: &Polynomial| &p.euler() - &p.scale(&kk);
    let mut out = vec![
        function_report("theta (a) commutes with dt", theta_poly(&g.partial(0), k), theta_poly(g, k).partial(0)),
        function_report("theta (b) u_i shift", theta_poly(&g.mul_var(i), k), theta_poly(g, k - 1).mul_var(i)),
        function_report("theta (c) d_i shift", theta_poly(g, k).partial(i), theta_poly(&g.partial(i), k - 1)),
        function_report("theta (d) commutes with E", theta_poly(g, k).euler(), theta_poly(&g.euler(), k)),
        function_report(
            "theta (e) left inverse",
            theta_poly(&e_minus_k(g), k),
            g - &taylor_poly(g, i64::from(k)),
        ),
        function_report(
            "theta (e) right inverse",
            e_minus_k(&theta_poly(g, k)),
            g - &taylor_poly(g, i64::from(k)),
        ),
    ];
    // (f): E g = l g exactly when g = T^l g
    let l = i64::from(k);
    let eigen = (&g.euler() - &g.scale(&kk)).is_zero();
    let fixed = (g - &taylor_poly(g, l)).is_zero();
    let f = if eigen == fixed { Polynomial::zero(g.dim()) } else { Polynomial::constant(g.dim(), Rational::one()) };
    out.push(function_report("theta (f) eigenvectors", f, Polynomial::zero(g.dim())));
    out
}

/// The Taylor-operator lemma items and the remainder formula.
pub fn check_taylor_items(g: &Polynomial, l: i64, i: usize) -> Vec<OperatorReport> {
    let n = g.dim();
    let mut out = vec![
        function_report("taylor (a) commutes with dt", taylor_poly(&g.partial(0), l), taylor_poly(g, l).partial(0)),
        function_report("taylor (b) u_i factor", taylor_poly(&g.mul_var(i), l), taylor_poly(g, l - 1).mul_var(i)),
        function_report("taylor (c) d_i shift", taylor_poly(g, l).partial(i), taylor_poly(&g.partial(i), l - 1)),
    ];
    let mut sum = Polynomial::zero(n);
    for j in 0..=l.max(-1) {
        sum += &taylor_poly(g, j);
    }
    out.push(function_report(
        "taylor remainder",
        sum,
        g.filter(|m| i64::from(m.u_degree()) <= l),
    ));
    out
}
