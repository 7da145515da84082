use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use super::check::describe_algebra;
use super::{header, json_header, parse_range, AlgebraArgs, OutputArgs, Report, UsageError};
use crate::algebras::{Element, FiniteAlgebra};
use crate::freepoly::MonomialBasis;
use crate::identcheck::{
    deg4_setup, identity_space, identity_space_sweep, verify_fundamental_solutions,
    IdentitySpaceReport,
};

/// Largest degree accepted by `idspace`.
pub const MAX_IDSPACE_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    /// All multilinear monomials
    Multilinear,
    /// One representative per commutative orbit
    Commutative,
    /// The fixed 15-monomial degree-4 order
    Deg4Ordered,
}

#[derive(Args, Debug)]
pub struct IdspaceArgs {
    #[arg(long)]
    pub degree: Option<usize>,
    /// The fixed degree-4 system: D(ab) on x^(0..5) with ten substitutions
    #[arg(long = "deg4-system", conflicts_with_all = ["degree", "substitutions"])]
    pub deg4_system: bool,
    /// Monomial basis (default: commutative for commutative algebras)
    #[arg(long, value_enum)]
    pub basis: Option<BasisKind>,
    /// JSON file `{"substitutions": [["x^(1)", {"x^(0)": "2"}, ...], ...]}`;
    /// without it every tuple of basis vectors is used
    #[arg(long, value_name = "FILE")]
    pub substitutions: Option<PathBuf>,
    /// Degree range `LO..HI` of basis vectors used for graded algebras
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub range: Option<(i64, i64)>,
    #[command(flatten)]
    pub alg: AlgebraArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_element(alg: &FiniteAlgebra, v: &Value, path: &str) -> Result<Element, UsageError> {
    let field = alg.field();
    let index = |label: &str| {
        alg.index_of_label(label)
            .ok_or_else(|| UsageError(format!("{path}: unknown basis label '{label}'")))
    };
    match v {
        Value::String(label) => Ok(alg.basis(index(label)?)),
        Value::Object(map) => {
            let mut e = Element::zero();
            for (label, c) in map {
                let c = match c {
                    Value::String(s) => field.parse_scalar(s),
                    Value::Number(n) => field.parse_scalar(&n.to_string()),
                    _ => return Err(UsageError(format!("{path}.{label}: expected a scalar"))),
                }
                .map_err(|e| UsageError(format!("{path}.{label}: {e}")))?;
                e.add_term(index(label)?, &c);
            }
            Ok(e)
        }
        _ => Err(UsageError(format!(
            "{path}: expected a basis label or a {{label: coefficient}} object"
        ))),
    }
}

fn read_substitutions(
    alg: &FiniteAlgebra,
    path: &PathBuf,
    n: usize,
) -> Result<Vec<Vec<Element>>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| UsageError(format!("$: {e}")))?;
    let subs = v
        .get("substitutions")
        .and_then(Value::as_array)
        .ok_or_else(|| UsageError("$.substitutions: expected an array".into()))?;
    subs.iter()
        .enumerate()
        .map(|(i, s)| {
            let path = format!("$.substitutions[{i}]");
            let items = s
                .as_array()
                .ok_or_else(|| UsageError(format!("{path}: expected an array")))?;
            if items.len() != n {
                return Err(UsageError(format!(
                    "{path}: {} values for degree {n}",
                    items.len()
                )));
            }
            items
                .iter()
                .enumerate()
                .map(|(j, x)| parse_element(alg, x, &format!("{path}[{j}]")))
                .collect()
        })
        .collect()
}

fn deg4_report(out: &OutputArgs) -> Result<Report, UsageError> {
    let setup = deg4_setup();
    let report = identity_space(4, &setup.algebra, &setup.basis, &setup.substitutions)?;
    let checks = verify_fundamental_solutions(&report)?;
    let mut text = header("idspace", out);
    text.push_str(&format!("algebra: {}\n", describe_algebra(&setup.algebra)));
    text.push_str(&report.to_text());
    text.push_str("checks:\n");
    for (what, ok) in checks.lines() {
        text.push_str(&format!("  {what}: {}\n", if ok { "yes" } else { "no" }));
    }
    let body = json!({
        "algebra": setup.algebra.name(),
        "report": report.to_json(),
        "checks": checks.lines().iter().map(|(w, ok)| json!({"check": w, "ok": ok})).collect::<Vec<_>>(),
    });
    Ok(Report {
        text,
        json: json_header("idspace", out, body),
        code: if checks.all() { super::EXIT_OK } else { super::EXIT_FAILS },
    })
}

pub fn run(args: &IdspaceArgs) -> Result<Report, UsageError> {
    if args.deg4_system {
        return deg4_report(&args.out);
    }
    let n = args
        .degree
        .ok_or_else(|| UsageError("give --degree N or --deg4-system".into()))?;
    if !(1..=MAX_IDSPACE_DEGREE).contains(&n) {
        return Err(UsageError(format!(
            "DegreeOutOfRange: degree {n} is outside 1..={MAX_IDSPACE_DEGREE}"
        )));
    }
    let built = args.alg.build(args.out.seed)?;
    let alg = built.algebra();
    let kind = args.basis.unwrap_or(if alg.is_commutative() {
        BasisKind::Commutative
    } else {
        BasisKind::Multilinear
    });
    let basis = match kind {
        BasisKind::Multilinear => MonomialBasis::multilinear(n, false)?,
        BasisKind::Commutative => MonomialBasis::multilinear(n, true)?,
        BasisKind::Deg4Ordered if n == 4 => MonomialBasis::deg4_ordered(),
        BasisKind::Deg4Ordered => {
            return Err(UsageError("the deg4-ordered basis needs --degree 4".into()))
        }
    };
    let report: IdentitySpaceReport = match &args.substitutions {
        Some(path) => identity_space(n, alg, &basis, &read_substitutions(alg, path, n)?)?,
        None => {
            let candidates: Vec<usize> = match (built.graded(), args.range) {
                (Some(g), Some((lo, hi))) => g.indices_in_range(lo, hi),
                (None, Some(_)) => {
                    return Err(UsageError("--range needs a graded algebra".into()))
                }
                _ => (0..alg.dim()).collect(),
            };
            identity_space_sweep(n, alg, &basis, &candidates)?
        }
    };
    let mut text = header("idspace", &args.out);
    text.push_str(&format!("algebra: {}\n", describe_algebra(alg)));
    text.push_str(&report.to_text());
    let body = json!({
        "algebra": alg.name(),
        "report": report.to_json(),
    });
    Ok(Report {
        text,
        json: json_header("idspace", &args.out, body),
        code: super::EXIT_OK,
    })
}
