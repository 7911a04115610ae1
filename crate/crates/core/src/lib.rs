//! Riemann-Liouville fractional calculus on multivariate power expressions,
//! the fractional angular-momentum and gauge operators built on it, and the
//! fractional Zeeman mass formula with its fit to a hadron table.
//!
//! The numeric core is generic over [`scalar::Scalar`] (`f32` or `f64`).
//! Data handling, fitting and reports are `f64`. The aliases below fix the
//! scalar to `f64` for the common case.

pub mod dataset;
pub mod expr;
pub mod fit;
pub mod numeric;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use expr::{parse_expr, Axis, Point};
pub use scalar::Scalar;

pub type Poly = expr::PolyExpr<f64>;
pub type Term = expr::PowerTerm<f64>;
pub type Operator = operator::OperatorExpr<f64>;
pub type Complex = operator::ComplexPoly<f64>;
pub type Params = spectrum::FitParams<f64>;

pub type Poly32 = expr::PolyExpr<f32>;
pub type Params32 = spectrum::FitParams<f32>;
