//! Exact computer algebra for the Poisson cohomology of the book Poisson
//! structure `Λ = ∂t ∧ (u_1∂_{u_1} + ⋯ + u_{n-1}∂_{u_{n-1}})` on `ℝⁿ`.
//!
//! Everything is exact rational arithmetic on polynomial multivector fields.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod homotopy;
pub mod indexing;
pub mod linalg;
pub mod random;
pub mod verify;
pub mod text;

pub use algebra::{Blade, Grading, LinearPoisson, Monomial, PolyMultivector, Polynomial, Rational};
pub use error::{Error, Result};
pub use text::{format_multivector, parse_multivector};
