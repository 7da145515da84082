use serde_json::{json, Value};

use super::check::{describe_algebra, run_check};
use super::{header, json_header, AlgebraAction, AlgebraArgs, OutputArgs, Report, UsageError};
use crate::algebras::{spec, Built, FiniteAlgebra};
use crate::freepoly::{lookup, parse, FreePoly};
use crate::idealtool::{certify_simplicity, SimplicityVerdict};
use crate::identcheck::{CheckOptions, Verdict};
use crate::sweep::Strategy;
use crate::table::push_aligned;

/// Tables larger than this are not printed.
const MAX_TABLE_DIM: usize = 16;

/// Identities a construction is expected to satisfy, grouped under a tag.
/// `on_plus` means the identities are checked on the plus algebra.
struct Tag {
    name: &'static str,
    identities: &'static [&'static str],
    on_plus: bool,
}

const fn tag(name: &'static str, identities: &'static [&'static str]) -> Tag {
    Tag {
        name,
        identities,
        on_plus: false,
    }
}

fn tags_for(kind: &str, built: &Built) -> Vec<Tag> {
    let commutative = built.algebra().is_commutative();
    match kind {
        "osborn" | "novikov" => vec![
            tag("novikov", &["right_symmetric", "left_commutative"]),
            Tag {
                name: "plus-tortken",
                identities: &["tortken", "commutativity"],
                on_plus: true,
            },
        ],
        "osborn-laurent" if !commutative => {
            vec![tag("novikov", &["right_symmetric", "left_commutative"])]
        }
        "osborn-plus" | "osborn-plus-explicit" | "osborn-bar" | "osborn-laurent" | "symmetric"
        | "square" | "p2"
            if commutative =>
        {
            vec![tag("tortken", &["tortken", "commutativity"])]
        }
        "osborn-bar" => vec![tag("novikov", &["right_symmetric", "left_commutative"])],
        "gametic" => vec![Tag {
                name: "plus-tortken",
                identities: &["tortken"],
            on_plus: true,
        }],
        "divided-power" => vec![tag("commutative-associative", &["commutativity", "associativity"])],
        "integration" => vec![tag(
            "leibniz-dual",
            &["leibniz_dual_left", "right_commutative"],
        )],
        "tensor-leibniz" => vec![tag("right-symmetric", &["right_symmetric"])],
        "lie2" => vec![tag("lie", &["anticommutativity", "jacobi"])],
        "random-commutative" => vec![tag("commutative", &["commutativity"])],
        _ => Vec::new(),
    }
}

fn tag_poly(id: &str) -> FreePoly {
    match id {
        "associativity" => parse("assoc(a,b,c)", &["a", "b", "c"]).expect("associator"),
        _ => lookup(id).expect("catalog entry").poly.clone(),
    }
}

fn table_rows(alg: &FiniteAlgebra) -> Vec<Vec<String>> {
    let labels = alg.labels();
    let mut rows = vec![std::iter::once("*".to_string())
        .chain(labels.iter().cloned())
        .collect::<Vec<_>>()];
    for i in 0..alg.dim() {
        let mut row = vec![labels[i].clone()];
        for j in 0..alg.dim() {
            row.push(match alg.basis_product_element(i, j) {
                Some(e) => e.format(labels),
                None => "~".to_string(),
            });
        }
        rows.push(row);
    }
    rows
}

fn show(alg: &FiniteAlgebra, built: &Built, out: &OutputArgs) -> Report {
    let labels = alg.labels();
    let preds = alg.predicates();
    let fmt_unit = |u: &Option<crate::algebras::Element>| {
        u.as_ref().map_or("none".to_string(), |e| e.format(labels))
    };
    let mut text = header("algebra show", out);
    text.push_str(&format!("algebra: {}\n", describe_algebra(alg)));
    if let Some(g) = built.graded() {
        text.push_str(&format!(
            "window: {}..{}  drop bounds {}..{}\n",
            g.window().0,
            g.window().1,
            g.drop_bounds().0,
            g.drop_bounds().1
        ));
    }
    if alg.dim() <= MAX_TABLE_DIM {
        push_aligned(&mut text, &table_rows(alg));
    } else {
        text.push_str(&format!("table omitted (dim > {MAX_TABLE_DIM})\n"));
    }
    text.push_str(&format!("commutative: {}\n", preds.is_commutative));
    text.push_str(&format!("associative: {}\n", preds.is_associative));
    if preds.windowed {
        text.push_str("units: not searched (products leave the window)\n");
    } else {
        text.push_str(&format!("unit: {}\n", fmt_unit(&preds.unit)));
        text.push_str(&format!("left unit: {}\n", fmt_unit(&preds.left_unit)));
        text.push_str(&format!("right unit: {}\n", fmt_unit(&preds.right_unit)));
    }

    let mut body = json!({
        "algebra": spec::to_json(alg),
        "predicates": {
            "commutative": preds.is_commutative,
            "associative": preds.is_associative,
            "windowed": preds.windowed,
            "unit": preds.unit.as_ref().map(|e| e.format(labels)),
            "left_unit": preds.left_unit.as_ref().map(|e| e.format(labels)),
            "right_unit": preds.right_unit.as_ref().map(|e| e.format(labels)),
        },
    });
    if let Some(g) = built.graded() {
        body["degrees"] = json!(g.degrees());
        body["window"] = json!([g.window().0, g.window().1]);
    }
    Report {
        text,
        json: json_header("algebra show", out, body),
        code: super::EXIT_OK,
    }
}

fn validate(
    alg_args: &AlgebraArgs,
    built: &Built,
    out: &OutputArgs,
) -> Result<Report, UsageError> {
    let alg = built.algebra();
    let kind = alg_args.kind()?;
    let tags = kind.as_deref().map_or_else(Vec::new, |k| tags_for(k, built));
    let opts = CheckOptions {
        seed: out.seed,
        trials: out.trials,
        strategy: Strategy::default(),
    };
    let mut text = header("algebra validate", out);
    text.push_str(&format!("algebra: {}\n", describe_algebra(alg)));
    let mut results = Vec::new();
    let mut failed = false;
    if tags.is_empty() {
        text.push_str("table: OK\n");
    }
    for t in &tags {
        let target = if t.on_plus { built.plus() } else { built.clone() };
        let mut problems = Vec::new();
        let mut checks = Vec::new();
        for id in t.identities {
            let outcome = run_check(&tag_poly(id), &target, None, &opts)?;
            let labels = target.algebra().labels();
            match &outcome.verdict {
                Verdict::Holds => {}
                Verdict::Fails(w) => problems.push(format!("{id}: {}", w.describe(labels))),
                Verdict::Inconclusive { .. } => problems.push(format!("{id}: inconclusive")),
            }
            checks.push(json!({"identity": id, "verdict": outcome.verdict.name()}));
        }
        let ok = problems.is_empty();
        failed |= !ok;
        if ok {
            text.push_str(&format!("{}: OK\n", t.name));
        } else {
            text.push_str(&format!("{}: FAILED ({})\n", t.name, problems.join("; ")));
        }
        results.push(json!({"tag": t.name, "ok": ok, "checks": checks}));
    }
    let body = json!({
        "algebra": alg.name(),
        "field": alg.field().to_string(),
        "dim": alg.dim(),
        "tags": results,
        "ok": !failed,
    });
    Ok(Report {
        text,
        json: json_header("algebra validate", out, body),
        code: if failed { super::EXIT_FAILS } else { super::EXIT_OK },
    })
}

pub fn run(
    action: AlgebraAction,
    alg_args: &AlgebraArgs,
    out: &OutputArgs,
) -> Result<Report, UsageError> {
    let built = alg_args.build(out.seed)?;
    match action {
        AlgebraAction::Show => Ok(show(built.algebra(), &built, out)),
        AlgebraAction::Validate => validate(alg_args, &built, out),
    }
}

fn simplicity_text(cert: &crate::idealtool::SimplicityCertificate, labels: &[String]) -> String {
    let mut text = format!("verdict: {}\n", cert.verdict.name());
    match &cert.verdict {
        SimplicityVerdict::NotSimple(s) => {
            text.push_str(&format!("proper ideal of dimension {}:\n", s.dim()));
            for v in s.format_basis(labels) {
                text.push_str(&format!("  {v}\n"));
            }
        }
        SimplicityVerdict::Degenerate(why) => text.push_str(&format!("reason: {why}\n")),
        SimplicityVerdict::Simple => {}
    }
    text.push_str(&format!(
        "complete: {}  points checked {}\n",
        if cert.complete { "yes" } else { "no" },
        cert.points_checked
    ));
    text.push_str("basis closures:\n");
    let rows: Vec<Vec<String>> = cert
        .audit
        .iter()
        .map(|a| vec![format!("  {}", a.generator), a.closure_dim.to_string()])
        .collect();
    push_aligned(&mut text, &rows);
    text
}

pub fn simplicity(alg_args: &AlgebraArgs, out: &OutputArgs) -> Result<Report, UsageError> {
    let built = alg_args.build(out.seed)?;
    let alg = built.algebra();
    let cert = certify_simplicity(alg, Strategy::default())?;
    let mut text = header("simplicity", out);
    text.push_str(&format!("algebra: {}\n", describe_algebra(alg)));
    text.push_str(&simplicity_text(&cert, alg.labels()));
    let body: Value = json!({ "certificate": cert.to_json(alg.labels()) });
    Ok(Report {
        text,
        json: json_header("simplicity", out, body),
        code: super::EXIT_OK,
    })
}
