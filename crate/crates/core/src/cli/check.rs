use clap::Args;
use serde_json::json;

use super::{
    header, json_header, parse_range, AlgebraArgs, OutputArgs, Report, UsageError, EXIT_FAILS,
    EXIT_INCONCLUSIVE, EXIT_OK,
};
use crate::algebras::{Built, FiniteAlgebra};
use crate::freepoly::{lookup, parse_with, FreePoly};
use crate::identcheck::{
    check_identity, check_identity_windowed, CheckOptions, CheckOutcome, Verdict,
};
use crate::sweep::Strategy;

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Catalog identity name
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    pub identity: Option<String>,
    /// Polynomial expression, e.g. "(a*b)*c - a*(b*c)"
    #[arg(long)]
    pub expr: Option<String>,
    /// Variable names for --expr, comma separated (default: letters in order
    /// of first appearance)
    #[arg(long, value_delimiter = ',', requires = "expr")]
    pub vars: Option<Vec<String>>,
    /// Degree range `LO..HI` for windowed algebras
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub range: Option<(i64, i64)>,
    /// Evaluate assignments on one thread
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub alg: AlgebraArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Identifier-like tokens of `expr` in order of first appearance, minus
/// the `assoc` keyword.
fn guess_variables(expr: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let mut chars = expr.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        if !c.is_ascii_alphabetic() {
            continue;
        }
        let mut end = start + c.len_utf8();
        while let Some(&(i, d)) = chars.peek() {
            if d.is_ascii_alphanumeric() || d == '_' {
                end = i + d.len_utf8();
                chars.next();
            } else {
                break;
            }
        }
        let word = &expr[start..end];
        if word != "assoc" && !vars.iter().any(|v| v == word) {
            vars.push(word.to_string());
        }
    }
    vars
}

/// The polynomial and its display name.
pub(crate) fn resolve_identity(
    identity: Option<&str>,
    expr: Option<&str>,
    vars: Option<&[String]>,
) -> Result<(String, FreePoly), UsageError> {
    if let Some(name) = identity {
        let entry =
            lookup(name).ok_or_else(|| UsageError(format!("unknown identity '{name}'")))?;
        return Ok((name.to_string(), entry.poly.clone()));
    }
    let expr = expr.ok_or_else(|| UsageError("give --identity or --expr".into()))?;
    let vars = vars.map_or_else(|| guess_variables(expr), <[String]>::to_vec);
    let poly = parse_with(expr, &vars)?;
    Ok((expr.to_string(), poly))
}

/// Caveats from the catalog's applicability record.
pub(crate) fn applicability_caveats(name: &str, alg: &FiniteAlgebra) -> Vec<String> {
    let Some(entry) = lookup(name) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let app = &entry.applicability;
    if app.commutative_only && !alg.is_commutative() {
        out.push("identity is only claimed for commutative algebras".to_string());
    }
    let p = alg.field().characteristic();
    if !entry.applies_in_characteristic(p) {
        out.push(format!("identity is not claimed in characteristic {p}"));
    }
    out
}

pub(crate) fn describe_algebra(alg: &FiniteAlgebra) -> String {
    format!("{} over {}, dim {}", alg.name(), alg.field(), alg.dim())
}

/// Runs a check on a built algebra: exhaustive on a finite one, windowed
/// over `range` (default: the whole window) on a graded one.
pub(crate) fn run_check(
    poly: &FreePoly,
    built: &Built,
    range: Option<(i64, i64)>,
    opts: &CheckOptions,
) -> Result<CheckOutcome, UsageError> {
    match built {
        Built::Graded(g) => {
            Ok(check_identity_windowed(poly, g, range.unwrap_or(g.window()))?)
        }
        Built::Finite(a) if !a.is_windowed() => {
            if range.is_some() {
                return Err(UsageError(
                    "--range needs a windowed (graded) algebra".into(),
                ));
            }
            Ok(check_identity(poly, a, opts))
        }
        Built::Finite(a) => Err(UsageError(format!(
            "{} has products outside its window but no grading; give a graded spec",
            a.name()
        ))),
    }
}

pub(crate) fn exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_OK,
        Verdict::Fails(_) => EXIT_FAILS,
        Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

pub fn run(args: &CheckArgs) -> Result<Report, UsageError> {
    let (name, poly) = resolve_identity(
        args.identity.as_deref(),
        args.expr.as_deref(),
        args.vars.as_deref(),
    )?;
    let built = args.alg.build(args.out.seed)?;
    let alg = built.algebra();
    let opts = CheckOptions {
        seed: args.out.seed,
        trials: args.out.trials,
        strategy: if args.sequential {
            Strategy::Sequential
        } else {
            Strategy::default()
        },
    };
    let mut outcome = run_check(&poly, &built, args.range, &opts)?;
    let mut caveats = applicability_caveats(&name, alg);
    caveats.append(&mut outcome.caveats);
    outcome.caveats = caveats;

    let labels = alg.labels();
    let mut text = header("check", &args.out);
    text.push_str(&format!("identity: {name}\n"));
    text.push_str(&format!("polynomial: {poly}\n"));
    text.push_str(&format!("algebra: {}\n", describe_algebra(alg)));
    if let Some(g) = built.graded() {
        let (lo, hi) = args.range.unwrap_or(g.window());
        text.push_str(&format!(
            "window: {}..{}  range: {lo}..{hi}  (verdict is window-relative)\n",
            g.window().0,
            g.window().1
        ));
    }
    text.push_str(&format!("verdict: {}\n", outcome.verdict.name()));
    if let Verdict::Fails(w) = &outcome.verdict {
        text.push_str(&format!("witness: {}\n", w.describe(labels)));
    }
    text.push_str(&format!(
        "evaluated {}  skipped {}  unexpected skips {}  random trials {}\n",
        outcome.stats.evaluated,
        outcome.stats.skipped,
        outcome.stats.unexpected_skips,
        outcome.stats.random_trials
    ));
    for c in &outcome.caveats {
        text.push_str(&format!("caveat: {c}\n"));
    }

    let mut body = json!({
        "identity": name,
        "polynomial": poly.to_string(),
        "algebra": alg.name(),
        "field": alg.field().to_string(),
        "dim": alg.dim(),
        "outcome": outcome.to_json(labels),
    });
    if let Some(g) = built.graded() {
        let (lo, hi) = args.range.unwrap_or(g.window());
        body["window"] = json!([g.window().0, g.window().1]);
        body["range"] = json!([lo, hi]);
    }
    Ok(Report {
        text,
        json: json_header("check", &args.out, body),
        code: exit_code(&outcome.verdict),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variables_in_order() {
        assert_eq!(
            guess_variables("assoc(b,a,c) - x1*(b*a)"),
            vec!["b", "a", "c", "x1"]
        );
    }
}
