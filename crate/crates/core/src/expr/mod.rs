//! Power expressions in x, y, z, t with real exponents and the closed-form
//! Riemann-Liouville derivative on them.

mod axis;
mod parse;
mod poly;

pub use axis::{Axis, UnknownAxis};
pub use parse::{parse_expr, ParseError};
pub use poly::{DomainError, EvalError, Point, PolyExpr, PowerTerm};
