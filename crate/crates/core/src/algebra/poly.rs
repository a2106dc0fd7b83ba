//! Exact multivariate polynomials in `(t, u_1, …, u_{n-1})`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact scalar type used for every coefficient.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Exponent vector; slot 0 holds the power of `t`, slot `i` the power of `u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The coordinate monomial `x_var` (0 is `t`).
    pub fn var(n: usize, var: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[var] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn t_exp(&self) -> u32 {
        self.exps[0]
    }

    pub fn u_degree(&self) -> u32 {
        self.exps[1..].iter().sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.exps[var] = e;
        m
    }

    /// All monomials of total degree `d` in `n` variables, ascending.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial { exps: cur.clone() });
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    // t-power first, then the u-part compared as sorted index sequences
    // (u1 < u1^2 < u1*u2 < u2), which is the order multisets are enumerated in.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.exps.len().cmp(&other.exps.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.exps[0].cmp(&other.exps[0]) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = self.exps.len();
        for i in 1..n {
            let (a, b) = (self.exps[i], other.exps[i]);
            if a == b {
                continue;
            }
            // the side with more copies of u_i is smaller unless the other side
            // has already run out of larger variables
            let (fewer, ord) = if a > b {
                (other, Ordering::Less)
            } else {
                (self, Ordering::Greater)
            };
            let fewer_has_larger = fewer.exps[i + 1..].iter().any(|&e| e > 0);
            return if fewer_has_larger { ord } else { ord.reverse() };
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if i == 0 {
                write!(f, "t")?;
            } else {
                write!(f, "u{i}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Polynomial::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let n = m.dim();
        let mut p = Polynomial::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(n: usize, var: usize) -> Self {
        Polynomial::term(Monomial::var(n, var), Rational::one())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (mm, v) in &self.terms {
            out.terms.insert(mm.mul(m), v * c);
        }
        out
    }

    /// Multiplication by the coordinate `x_var`.
    pub fn mul_var(&self, var: usize) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.with_exp(var, m.exp(var) + 1), v.clone()))
                .collect(),
        }
    }

    pub fn partial(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, v) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.terms.insert(m.with_exp(var, e - 1), v * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// `∫_0^t g dt`: the `t`-antiderivative with zero constant term.
    pub fn t_antiderivative(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let e = m.t_exp() + 1;
                    (m.with_exp(0, e), v / Rational::from_integer(e.into()))
                })
                .collect(),
        }
    }

    /// Substitutes `t = t0`.
    pub fn eval_t(&self, t0: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, v) in &self.terms {
            let e = m.t_exp();
            let factor = if e == 0 { Rational::one() } else { num_traits::pow(t0.clone(), e as usize) };
            out.add_term(m.with_exp(0, 0), v * factor);
        }
        out
    }

    /// Keeps the monomials with `x_var` absent, i.e. substitutes `x_var = 0`.
    pub fn set_zero(&self, var: usize) -> Polynomial {
        self.filter(|m| m.exp(var) == 0)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    /// Rescales each term by `factor(m)`; `None` drops the term.
    pub fn map_scale(&self, factor: impl Fn(&Monomial) -> Option<Rational>) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, v) in &self.terms {
            if let Some(f) = factor(m) {
                out.add_term(m.clone(), v * f);
            }
        }
        out
    }

    /// Maps monomials through `f`, summing collisions.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Option<(Monomial, Rational)>) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, v) in &self.terms {
            if let Some((m2, c)) = f(m) {
                out.add_term(m2, v * c);
            }
        }
        out
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|m| m.t_exp() == 0)
    }

    /// `u`-Euler derivative `Σ u_j ∂g/∂u_j`: each monomial scaled by its `u`-degree.
    pub fn euler(&self) -> Polynomial {
        self.map_scale(|m| Some(Rational::from_integer(m.u_degree().into())))
    }

    /// Exact evaluation at a rational point `(t, u_1, …)`.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, v) in &self.terms {
            let mut term = v.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, v) in &rhs.terms {
            self.add_term(m.clone(), v.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), -v);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m1, v1) in &self.terms {
            for (m2, v2) in &rhs.terms {
                out.add_term(m1.mul(m2), v1 * v2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn monomial_order_follows_multiset_lex() {
        // n = 3: u1 < u1^2 < u1*u2 < u2 < u2^2
        let seq = [mono(&[0, 1, 0]), mono(&[0, 2, 0]), mono(&[0, 1, 1]), mono(&[0, 0, 1]), mono(&[0, 0, 2])];
        for w in seq.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
        assert!(mono(&[0, 0, 0]) < mono(&[0, 1, 0]));
        assert!(mono(&[0, 5, 0]) < mono(&[1, 0, 0]));
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(5, 8).len(), 495);
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::one(2)]);
    }

    #[test]
    fn product_and_derivatives() {
        let n = 3;
        let t = Polynomial::var(n, 0);
        let u1 = Polynomial::var(n, 1);
        let p = &(&t * &u1) + &(&u1 * &u1);
        assert_eq!(p.partial(1), &t + &u1.scale(&int(2)));
        assert_eq!(p.partial(0), u1);
        let anti = p.partial(0).t_antiderivative();
        assert_eq!(anti, &t * &Polynomial::var(n, 1));
        assert_eq!(p.eval_t(&int(2)), &u1.scale(&int(2)) + &(&u1 * &u1));
        assert_eq!(p.euler(), &(&t * &u1) + &(&u1 * &u1).scale(&int(2)));
    }

    #[test]
    fn evaluation_is_exact() {
        let n = 2;
        let p = &Polynomial::var(n, 0).mul_var(1) + &Polynomial::constant(n, rat(1, 3));
        assert_eq!(p.evaluate(&[rat(1, 2), rat(3, 1)]), rat(3, 2) + rat(1, 3));
    }

    #[test]
    fn display() {
        let n = 3;
        let p = &Polynomial::constant(n, int(1)) - &Polynomial::var(n, 2).scale(&rat(3, 2));
        assert_eq!(p.to_string(), "1 - 3/2*u2");
    }
}
