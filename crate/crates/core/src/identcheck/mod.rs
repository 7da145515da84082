//! Evaluating free polynomials in concrete algebras: identity checks,
//! windowed checks on graded algebras, multilinear identity spaces and the
//! small linear systems behind the degree-4 analysis.

mod check;
mod deg4;
mod eval;
mod operators;
mod space;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebras::{AlgError, Element};
use crate::exactnum::NumError;
use crate::freepoly::FreePoly;
use crate::sweep::Strategy;

pub use check::{check_identity, check_identity_windowed, check_random, compatible_assignment};
pub use deg4::{
    deg4_setup, fundamental_relations, cyclic_coefficient_system, tortken_prime_relation,
    verify_fundamental_solutions, Deg4Setup, FundamentalChecks, CyclicSystem, TortkenPrimeReport,
    FREE_COLUMNS, FUNDAMENTAL_SOLUTIONS,
};
pub use eval::{evaluate, CompiledPoly};
pub use operators::{alternating_right_operator, operator_identity_check};
pub use space::{identity_space, identity_space_sweep, IdentitySpaceReport, Membership};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("variable {0} has no value in the assignment")]
    MissingVariable(String),
    #[error("assignment element does not live in the algebra: {0}")]
    FieldMismatch(String),
    #[error("product {left} * {right} leaves the window")]
    OutOfWindow { left: String, right: String },
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("range [{lo}, {hi}] is not inside the window [{wlo}, {whi}]")]
    RangeOutsideWindow { lo: i64, hi: i64, wlo: i64, whi: i64 },
    #[error("report does not match the expected setup: {0}")]
    ReportMismatch(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Alg(AlgError),
}

impl From<AlgError> for CheckError {
    fn from(e: AlgError) -> CheckError {
        match e {
            AlgError::OutOfWindow { left, right } => CheckError::OutOfWindow { left, right },
            AlgError::Num(n) => CheckError::Num(n),
            other => CheckError::Alg(other),
        }
    }
}

impl From<CheckError> for AlgError {
    fn from(e: CheckError) -> AlgError {
        match e {
            CheckError::Alg(a) => a,
            CheckError::Num(n) => AlgError::Num(n),
            CheckError::OutOfWindow { left, right } => AlgError::OutOfWindow { left, right },
            other => AlgError::InvalidParams(other.to_string()),
        }
    }
}

/// Options for [`check_identity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    /// Random dense assignments tried for non-multilinear polynomials.
    pub trials: usize,
    pub strategy: Strategy,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions {
            seed: 0,
            trials: 64,
            strategy: Strategy::default(),
        }
    }
}

/// A failing assignment, together with the polynomial it was evaluated on
/// (a polarization of the checked polynomial, in the non-multilinear case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub poly: FreePoly,
    pub assignment: Vec<Element>,
    pub value: Element,
}

impl Witness {
    pub fn describe(&self, labels: &[String]) -> String {
        let args: Vec<String> = self
            .poly
            .variables()
            .iter()
            .zip(&self.assignment)
            .map(|(v, e)| format!("{v}={}", e.format(labels)))
            .collect();
        format!("f({}) = {}", args.join(", "), self.value.format(labels))
    }

    pub fn to_json(&self, labels: &[String]) -> Value {
        let assignment: serde_json::Map<String, Value> = self
            .poly
            .variables()
            .iter()
            .zip(&self.assignment)
            .map(|(v, e)| (v.clone(), Value::String(e.format(labels))))
            .collect();
        json!({
            "polynomial": self.poly.to_string(),
            "assignment": assignment,
            "value": self.value.format(labels),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    /// Nothing could be evaluated; `skipped` assignments left the window.
    Inconclusive { skipped: u64 },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub evaluated: u64,
    pub skipped: u64,
    /// Skips of assignments whose degrees predicted an in-window result.
    pub unexpected_skips: u64,
    pub random_trials: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    pub stats: CheckStats,
    pub caveats: Vec<String>,
    /// The verdict only speaks about a finite window of a graded algebra.
    pub window_relative: bool,
}

impl CheckOutcome {
    pub fn to_json(&self, labels: &[String]) -> Value {
        let mut v = json!({
            "verdict": self.verdict.name(),
            "evaluated": self.stats.evaluated,
            "skipped": self.stats.skipped,
            "unexpected_skips": self.stats.unexpected_skips,
            "random_trials": self.stats.random_trials,
            "window_relative": self.window_relative,
            "caveats": self.caveats,
        });
        if let Verdict::Fails(w) = &self.verdict {
            v["witness"] = w.to_json(labels);
        }
        v
    }
}
