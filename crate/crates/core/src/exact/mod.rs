//! Exact rational scalars, binomial coefficients and dense rational polynomials.

mod binomial;
mod poly;
mod rational;
pub mod serde_str;

pub use binomial::binomial;
pub use poly::Poly;
pub(crate) use rational::{ceil_dyadic, floor_dyadic};
pub use rational::{
    from_int, half, parse_rational, pow2, pow2_inv, rat, to_decimal_string, ParseRationalError,
    Rational,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
}
