//! Exact scalars over Q and F_p, binomial coefficients, and dense exact
//! linear algebra (RREF, rank, kernel, determinant).

mod combinat;
mod matrix;
mod scalar;

use thiserror::Error;

pub use combinat::{
    binom_p_quotient, binomial, binomial_in, binomial_mod_p, p_adic_valuation_binomial,
};
pub use matrix::{Matrix, Rref};
pub use scalar::{is_prime, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("{value} has no image in {field}")]
    NotInvertible { value: String, field: Field },
    #[error("argument out of range")]
    OutOfRange,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}
