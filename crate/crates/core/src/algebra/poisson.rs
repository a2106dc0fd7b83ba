//! Linear Poisson structures built from Lie-algebra structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Deserialize;

use super::multivector::{Blade, PolyMultivector};
use super::poly::{Monomial, Rational};
use crate::error::{Error, Result};
use crate::indexing::check_dim;

/// One structure constant `c_{ab}^k = value`; coordinate 0 is `t`, `i ≥ 1` is `u_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstant {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub value: Rational,
}

impl StructureConstant {
    pub fn new(a: usize, b: usize, k: usize, value: Rational) -> Self {
        StructureConstant { a, b, k, value }
    }
}

/// A bivector `π = ½ Σ c_{ab}^k x_k ∂_a∧∂_b` with linear coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPoisson {
    bivector: PolyMultivector,
}

impl LinearPoisson {
    pub fn from_structure_constants(n: usize, constants: &[StructureConstant]) -> Result<Self> {
        check_dim(n)?;
        // keyed by (a, b, k) with a < b after antisymmetric completion
        let mut table: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for c in constants {
            for idx in [c.a, c.b, c.k] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            if c.a == c.b {
                if c.value.is_zero() {
                    continue;
                }
                return Err(Error::InvalidStructure(format!(
                    "c_{{{0}{0}}}^{1} must vanish by antisymmetry",
                    c.a, c.k
                )));
            }
            let (key, v) = if c.a < c.b {
                ((c.a, c.b, c.k), c.value.clone())
            } else {
                ((c.b, c.a, c.k), -c.value.clone())
            };
            match table.get(&key) {
                Some(prev) if *prev != v => {
                    return Err(Error::InvalidStructure(format!(
                        "conflicting entries for c_{{{}{}}}^{}",
                        key.0, key.1, key.2
                    )))
                }
                _ => {
                    table.insert(key, v);
                }
            }
        }
        let mut bivector = PolyMultivector::zero(n, 2);
        for ((a, b, k), v) in table {
            let blade = Blade::from_generators(vec![a, b]);
            bivector.add_blade_term(blade, Monomial::var(n, k), v);
        }
        Ok(LinearPoisson { bivector })
    }

    /// Structure constants of `[e_0, e_i] = e_i`, `[e_i, e_j] = 0`.
    pub fn book_constants(n: usize) -> Vec<StructureConstant> {
        (1..n).map(|i| StructureConstant::new(0, i, i, Rational::from_integer(1.into()))).collect()
    }

    pub fn book(n: usize) -> Result<Self> {
        Self::from_structure_constants(n, &Self::book_constants(n))
    }

    /// Wraps an arbitrary bivector, checking that it has linear coefficients.
    pub fn from_bivector(bivector: PolyMultivector) -> Result<Self> {
        if bivector.degree() != 2 && !bivector.is_zero() {
            return Err(Error::Degree(format!("expected a bivector, got degree {}", bivector.degree())));
        }
        if bivector.flat_terms().any(|(_, m, _)| m.total_degree() != 1) {
            return Err(Error::InvalidStructure("coefficients must be linear".into()));
        }
        Ok(LinearPoisson { bivector: bivector.with_degree(2) })
    }

    pub fn dim(&self) -> usize {
        self.bivector.dim()
    }

    pub fn bivector(&self) -> &PolyMultivector {
        &self.bivector
    }

    /// `[π, π] = 0`.
    pub fn jacobi_holds(&self) -> bool {
        self.bivector.schouten(&self.bivector).is_zero()
    }

    /// `true` when this is `Λ_book` in its dimension.
    pub fn is_book(&self) -> bool {
        self.bivector == PolyMultivector::book(self.dim())
    }

    /// The differential `[π, μ]`.
    pub fn differential(&self, mu: &PolyMultivector) -> PolyMultivector {
        self.bivector.schouten(mu).with_degree(mu.degree() + 1)
    }
}

/// The JSON document `{"dim": n, "c": [[a, b, k, "p/q"], …]}`; values may
/// also be plain integers.
#[derive(Debug, Clone, Deserialize)]
pub struct ConstantsDoc {
    pub dim: usize,
    pub c: Vec<(usize, usize, usize, ConstantValue)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ConstantValue {
    Int(i64),
    Text(String),
}

impl ConstantsDoc {
    pub fn constants(&self) -> Result<Vec<StructureConstant>> {
        self.c
            .iter()
            .map(|(a, b, k, v)| {
                let value = match v {
                    ConstantValue::Int(i) => Rational::from_integer((*i).into()),
                    ConstantValue::Text(s) => parse_rational(s)?,
                };
                Ok(StructureConstant::new(*a, *b, *k, value))
            })
            .collect()
    }

    pub fn build(&self) -> Result<LinearPoisson> {
        LinearPoisson::from_structure_constants(self.dim, &self.constants()?)
    }
}

/// Parses a rational written `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Syntax { pos: 0, msg: format!("invalid rational {s:?}") };
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
