//! Exact arithmetic: Gaussian rationals, truncated Laurent series with
//! tracked precision, polynomials, and symmetric functions of the roots of
//! a monic polynomial.

mod dual;
mod poly;
mod ring;
mod roots;
mod scalar;
mod series;

pub use dual::Dual;
pub use poly::{Poly, RatFunc};
pub use ring::Coeff;
pub use roots::{product_over_roots, sum_over_roots, QElem, RootSystem};
pub use scalar::ExactScalar;
pub use series::{Series, Var, EXACT};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("series variables differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("coefficient of exponent {exponent} requested but series is only known below {order}")]
    PrecisionExhausted { exponent: i64, order: i64 },
    #[error("exact series {0} has an infinite inverse; truncate it first")]
    Unbounded(String),
    #[error("no square root in the coefficient ring: {0}")]
    NoSquareRoot(String),
    #[error("logarithm needs leading term 1: {0}")]
    LogPrecondition(String),
    #[error("composition needs an inner series of positive valuation")]
    CompositionPrecondition,
    #[error("series has non-vanishing odd part at exponent {0}")]
    OddPart(i64),
    #[error("{0}")]
    Domain(String),
}
