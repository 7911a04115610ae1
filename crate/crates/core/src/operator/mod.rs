//! Symbolic fractional operators acting on complex power expressions.

mod builders;
mod cpoly;
mod gauge;
mod op;

pub use builders::*;
pub use cpoly::ComplexPoly;
pub use gauge::*;
pub use op::{commutator, OperatorExpr, OperatorTerm};
