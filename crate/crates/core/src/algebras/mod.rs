//! Concrete algebras: structure-constant tables, windows of graded
//! algebras, and the constructions built on divided powers and Laurent
//! polynomials.

mod constructions;
mod element;
mod finite;
mod graded;
mod laurent;
pub mod spec;

use thiserror::Error;

use crate::exactnum::NumError;

pub use constructions::{
    derivation_novikov, derivation_symmetric, divided_power, gametic, osborn, osborn_bar_finite,
    osborn_bar_finite_span, osborn_plus_explicit, p2_product, square_product, standard_derivation,
};
pub use element::Element;
pub use finite::{FiniteAlgebra, Predicates};
pub use graded::GradedAlgebra;
pub use laurent::{
    abelian, integration_product, laurent_hole, nonabelian_lie2, osborn_bar_laurent_novikov,
    osborn_bar_laurent_plus, osborn_laurent, tensor_leibniz, LaurentVariant,
};
pub use spec::Built;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("characteristic {0} is too small for this construction")]
    CharTooSmall(u64),
    #[error("not a derivation: fails on ({left}, {right})")]
    NotADerivation { left: String, right: String },
    #[error("empty window [{lo}, {hi}]")]
    BadWindow { lo: i64, hi: i64 },
    #[error("parameter constraint violated: {0}")]
    ParamConstraintViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("prerequisite identity {identity} fails: {witness}")]
    PrereqIdentityFails { identity: String, witness: String },
    #[error("not closed under the product: {0}")]
    NotClosed(String),
    #[error("product {left} * {right} leaves the window")]
    OutOfWindow { left: String, right: String },
    #[error("degree drops {observed:?} exceed declared bounds {declared:?}")]
    ShiftBounds {
        declared: (i64, i64),
        observed: (i64, i64),
    },
    #[error("{path}: {message}")]
    Spec { path: String, message: String },
    #[error(transparent)]
    Num(#[from] NumError),
}
