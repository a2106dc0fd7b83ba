//! Polynomial multivector calculus.

pub mod multivector;
pub mod poisson;
pub mod poly;

pub use multivector::{Blade, Grading, PolyMultivector};
pub use poisson::{ConstantsDoc, LinearPoisson, StructureConstant};
pub use poly::{int, rat, Monomial, Polynomial, Rational};
