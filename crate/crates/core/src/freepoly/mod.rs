//! Free nonassociative polynomials: monomials as binary trees, a small
//! expression language, the built-in identity catalog, multilinear
//! monomial enumeration and polarization.

mod catalog;
mod enumerate;
mod monomial;
mod parse;
mod poly;

use thiserror::Error;

pub use catalog::{catalog, lookup, Applicability, IdentityEntry};
pub use enumerate::{multilinear_monomials, deg4_ordered, MonomialBasis, MAX_ENUMERATION_DEGREE};
pub use monomial::Monomial;
pub use parse::{associator, parse, parse_with};
pub use poly::FreePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable '{name}' at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("ambiguous product at offset {pos}: parenthesize chains of three or more factors")]
    AmbiguousProduct { pos: usize },
    #[error("degree {0} outside the supported range 1..=6")]
    DegreeOutOfRange(usize),
    #[error("monomial {0} is not in the basis")]
    OutsideBasis(String),
}

pub fn is_multilinear(poly: &FreePoly) -> bool {
    poly.is_multilinear()
}

pub fn polarize(poly: &FreePoly) -> Vec<FreePoly> {
    poly.polarize()
}
