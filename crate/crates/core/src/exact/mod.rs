//! Exact arithmetic in Q and Q(√5), plus the additive groups A and slope
//! groups P that parametrize piecewise-linear groups.

mod groups;
mod number;
mod parse;

pub use groups::{AdditiveGroupSpec, FactorError, SlopeGroupError, SlopeGroupSpec};
pub use number::ExactNumber;
pub use parse::parse_number_at;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}
