//! Exact computations with nonassociative algebras: structure constants,
//! free polynomials, identity checks, identity spaces and ideal closure.

pub mod algebras;
pub mod cli;
pub mod exactnum;
pub mod freepoly;
pub mod idealtool;
pub mod identcheck;
pub mod sweep;
mod table;
