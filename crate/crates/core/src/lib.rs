//! Exact decisions of the convex order between quadrature functionals.
//!
//! A quadrature functional on `[0,1]` is a convex combination of point
//! evaluations and the integral mean. [`ordering::decide`] answers whether
//! `A(f) ≤ B(f)` for every convex `f`, and returns a hinge or linear witness
//! when it does not. Everything is generic over [`Scalar`]; the exact
//! [`Rational`] instantiation is re-exported below under short names.

pub mod error;
pub mod functional;
pub mod json;
pub mod oracle;
pub mod ordering;
pub mod pl;
pub mod rational;
pub mod scalar;
pub mod theorems;

pub use error::Error;
pub use scalar::Scalar;

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;

pub type Functional = functional::Functional<Rational>;
pub type Atom = functional::Atom<Rational>;
pub type TestFunction = functional::TestFunction<Rational>;
pub type PlFunction = pl::PlFunction<Rational>;
pub type DiffFunction = ordering::DiffFunction<Rational>;
pub type CrossingProfile = ordering::CrossingProfile<Rational>;
pub type Verdict = ordering::Verdict<Rational>;
pub type Witness = ordering::Witness<Rational>;
pub type Decision = ordering::Decision<Rational>;
pub type OracleReport = oracle::OracleReport<Rational>;

/// Double-precision instantiation for fast approximate exploration.
pub type FunctionalF64 = functional::Functional<f64>;
