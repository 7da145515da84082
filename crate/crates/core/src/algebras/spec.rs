//! JSON algebra specifications.
//!
//! Built-ins: `{"kind": "osborn-plus", "params": {"p": 3, "m": 1, "alpha": 1}}`.
//! Custom algebras: `{"kind": "structure_constants", "field": {"char": 5},
//! "dim": 2, "labels": ["a", "b"], "table": [[0, 1, 1, "2"], ...]}` with
//! optional `"overflow": [[i, j], ...]` for products outside a window.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::*;
use crate::exactnum::{Field, Scalar};

/// A constructed algebra, finite or a window of a graded one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Finite(FiniteAlgebra),
    Graded(GradedAlgebra),
}

impl Built {
    pub fn algebra(&self) -> &FiniteAlgebra {
        match self {
            Built::Finite(a) => a,
            Built::Graded(g) => g.algebra(),
        }
    }

    pub fn graded(&self) -> Option<&GradedAlgebra> {
        match self {
            Built::Graded(g) => Some(g),
            Built::Finite(_) => None,
        }
    }

    pub fn plus(&self) -> Built {
        match self {
            Built::Finite(a) => Built::Finite(a.plus()),
            Built::Graded(g) => Built::Graded(g.plus()),
        }
    }

    pub fn minus(&self) -> Built {
        match self {
            Built::Finite(a) => Built::Finite(a.minus()),
            Built::Graded(g) => Built::Graded(g.minus()),
        }
    }

    pub fn opposite(&self) -> Built {
        match self {
            Built::Finite(a) => Built::Finite(a.opposite()),
            Built::Graded(g) => Built::Graded(g.opposite()),
        }
    }
}

/// A scalar given as a JSON integer or as text `"n"` / `"n/d"`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn to_scalar(&self, field: Field) -> Result<Scalar, AlgError> {
        Ok(match self {
            ScalarText::Int(n) => field.from_i64(*n),
            ScalarText::Text(t) => field.parse_scalar(t)?,
        })
    }
}

/// Parameters shared by the built-in constructions. Each kind reads only
/// the fields it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ScalarText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<ScalarText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Field characteristic for kinds that accept any field (0 = Q).
    #[serde(rename = "char", skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
    /// Optional `plus`, `minus` or `opposite` applied after construction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<String>,
}

pub const BUILTIN_KINDS: &[&str] = &[
    "divided-power",
    "gametic",
    "novikov",
    "symmetric",
    "osborn",
    "osborn-plus",
    "osborn-plus-explicit",
    "osborn-bar",
    "osborn-laurent",
    "integration",
    "square",
    "p2",
    "random-commutative",
    "lie2",
    "tensor-leibniz",
];

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, AlgError> {
    v.clone().ok_or_else(|| AlgError::Spec {
        path: format!("$.params.{name}"),
        message: "required parameter missing".into(),
    })
}

fn field_for(characteristic: u64) -> Result<Field, AlgError> {
    Ok(if characteristic == 0 {
        Field::Rationals
    } else {
        Field::prime(characteristic)?
    })
}

fn scalar_or_zero(v: &Option<ScalarText>, field: Field) -> Result<Scalar, AlgError> {
    v.as_ref()
        .map_or(Ok(field.zero()), |s| s.to_scalar(field))
}

/// Builds a named construction.
pub fn build_builtin(kind: &str, params: &BuiltinParams) -> Result<Built, AlgError> {
    let p = &params;
    let built = match kind {
        "divided-power" => Built::Finite(divided_power(need(&p.p, "p")?, need(&p.m, "m")?)?),
        "gametic" => Built::Finite(gametic(
            need(&p.dim, "dim")?,
            field_for(p.characteristic.unwrap_or(0))?,
        )?),
        "novikov" | "symmetric" => {
            let o = divided_power(need(&p.p, "p")?, need(&p.m, "m")?)?;
            let d = standard_derivation(o.field(), o.dim());
            Built::Finite(if kind == "novikov" {
                derivation_novikov(&o, &d)?
            } else {
                derivation_symmetric(&o, &d)?
            })
        }
        "osborn" | "osborn-plus" | "osborn-plus-explicit" => {
            let prime = need(&p.p, "p")?;
            let field = field_for(prime)?;
            let (a, b) = (
                scalar_or_zero(&p.alpha, field)?,
                scalar_or_zero(&p.beta, field)?,
            );
            let m = need(&p.m, "m")?;
            Built::Finite(match kind {
                "osborn" => osborn(&a, &b, prime, m)?,
                "osborn-plus" => osborn(&a, &b, prime, m)?.plus(),
                _ => osborn_plus_explicit(&a, &b, prime, m)?,
            })
        }
        "osborn-bar" => {
            let variant = p.variant.as_deref().unwrap_or(if p.p.is_some() {
                "finite"
            } else {
                "laurent-plus"
            });
            match variant {
                "finite" => {
                    let prime = need(&p.p, "p")?;
                    let b = scalar_or_zero(&p.beta, field_for(prime)?)?;
                    Built::Finite(osborn_bar_finite(&b, prime, need(&p.m, "m")?)?)
                }
                "laurent-plus" => Built::Graded(osborn_bar_laurent_plus(
                    &scalar_or_zero(&p.alpha, Field::Rationals)?,
                    need(&p.window, "window")?,
                )?),
                "laurent" => Built::Graded(osborn_bar_laurent_novikov(
                    &scalar_or_zero(&p.beta, Field::Rationals)?,
                    need(&p.window, "window")?,
                )?),
                other => {
                    return Err(AlgError::Spec {
                        path: "$.params.variant".into(),
                        message: format!(
                            "unknown variant '{other}' (finite, laurent-plus, laurent)"
                        ),
                    })
                }
            }
        }
        "osborn-laurent" => {
            let variant = match p.variant.as_deref().unwrap_or("jordan") {
                "jordan" => LaurentVariant::Jordan,
                "novikov" => LaurentVariant::Novikov,
                other => {
                    return Err(AlgError::Spec {
                        path: "$.params.variant".into(),
                        message: format!("unknown variant '{other}' (jordan, novikov)"),
                    })
                }
            };
            Built::Graded(osborn_laurent(
                variant,
                &scalar_or_zero(&p.alpha, Field::Rationals)?,
                &scalar_or_zero(&p.beta, Field::Rationals)?,
                need(&p.window, "window")?,
            )?)
        }
        "integration" => Built::Graded(integration_product(need(&p.n, "N")?)?),
        "square" => Built::Finite(square_product(
            need(&p.p, "p")?,
            need(&p.k, "k")?,
            need(&p.l, "l")?,
            need(&p.m, "m")?,
        )?),
        "p2" => Built::Finite(p2_product(need(&p.k, "k")?, need(&p.m, "m")?)?),
        "random-commutative" => Built::Finite(FiniteAlgebra::random_commutative(
            need(&p.dim, "dim")?,
            field_for(need(&p.p, "p")?)?,
            p.seed.unwrap_or(0),
        )),
        "lie2" => Built::Finite(nonabelian_lie2(field_for(p.characteristic.unwrap_or(0))?)),
        "tensor-leibniz" => {
            let r = integration_product(need(&p.n, "N")?)?;
            Built::Graded(tensor_leibniz(&nonabelian_lie2(Field::Rationals), &r)?)
        }
        other => {
            return Err(AlgError::Spec {
                path: "$.kind".into(),
                message: format!("unknown algebra kind '{other}'"),
            })
        }
    };
    match p.transform.as_deref() {
        None => Ok(built),
        Some("plus") => Ok(built.plus()),
        Some("minus") => Ok(built.minus()),
        Some("opposite") => Ok(built.opposite()),
        Some(other) => Err(AlgError::Spec {
            path: "$.params.transform".into(),
            message: format!("unknown transform '{other}' (plus, minus, opposite)"),
        }),
    }
}

fn spec_err(path: &str, message: impl Into<String>) -> AlgError {
    AlgError::Spec {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses a JSON algebra specification.
pub fn from_json(text: &str) -> Result<Built, AlgError> {
    let v: Value = serde_json::from_str(text).map_err(|e| spec_err("$", e.to_string()))?;
    from_value(&v)
}

pub fn from_value(v: &Value) -> Result<Built, AlgError> {
    let obj = v.as_object().ok_or_else(|| spec_err("$", "expected an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| spec_err("$.kind", "missing or not a string"))?;
    if kind == "structure_constants" {
        return Ok(Built::Finite(structure_constants_from_value(v)?));
    }
    let params: BuiltinParams = match obj.get("params") {
        None => BuiltinParams::default(),
        Some(p) => serde_json::from_value(p.clone()).map_err(|e| spec_err("$.params", e.to_string()))?,
    };
    build_builtin(kind, &params)
}

fn structure_constants_from_value(v: &Value) -> Result<FiniteAlgebra, AlgError> {
    let characteristic = v
        .pointer("/field/char")
        .and_then(Value::as_u64)
        .ok_or_else(|| spec_err("$.field.char", "missing or not a non-negative integer"))?;
    let field = field_for(characteristic).map_err(|e| spec_err("$.field.char", e.to_string()))?;
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| spec_err("$.dim", "missing or not a non-negative integer"))? as usize;
    let labels: Vec<String> = match v.get("labels") {
        None => (1..=dim).map(|i| format!("e{i}")).collect(),
        Some(l) => {
            let arr = l.as_array().ok_or_else(|| spec_err("$.labels", "expected an array"))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| spec_err(&format!("$.labels[{i}]"), "expected a string"))
                })
                .collect::<Result<_, _>>()?
        }
    };
    if labels.len() != dim {
        return Err(spec_err("$.labels", format!("expected {dim} labels, got {}", labels.len())));
    }
    let mut table: Vec<Option<Vec<(usize, Scalar)>>> = vec![Some(vec![]); dim * dim];
    let rows = v
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| spec_err("$.table", "missing or not an array"))?;
    for (r, row) in rows.iter().enumerate() {
        let path = format!("$.table[{r}]");
        let cells = row
            .as_array()
            .filter(|c| c.len() == 4)
            .ok_or_else(|| spec_err(&path, "expected [i, j, k, coefficient]"))?;
        let mut idx = [0usize; 3];
        for (slot, cell) in idx.iter_mut().zip(cells) {
            let n = cell
                .as_u64()
                .filter(|&n| (n as usize) < dim)
                .ok_or_else(|| spec_err(&path, format!("index must be an integer below {dim}")))?;
            *slot = n as usize;
        }
        let coeff: ScalarText = serde_json::from_value(cells[3].clone())
            .map_err(|e| spec_err(&format!("{path}[3]"), e.to_string()))?;
        let c = coeff
            .to_scalar(field)
            .map_err(|e| spec_err(&format!("{path}[3]"), e.to_string()))?;
        table[idx[0] * dim + idx[1]]
            .as_mut()
            .expect("overflow entries are applied afterwards")
            .push((idx[2], c));
    }
    if let Some(over) = v.get("overflow") {
        let arr = over.as_array().ok_or_else(|| spec_err("$.overflow", "expected an array"))?;
        for (r, pair) in arr.iter().enumerate() {
            let path = format!("$.overflow[{r}]");
            let ij: Vec<usize> = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| a.iter().map(|x| x.as_u64().map(|n| n as usize)).collect())
                .filter(|ij: &Vec<usize>| ij.iter().all(|&n| n < dim))
                .ok_or_else(|| spec_err(&path, "expected [i, j] with indices below dim"))?;
            table[ij[0] * dim + ij[1]] = None;
        }
    }
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("custom")
        .to_string();
    FiniteAlgebra::new(name, field, labels, table)
}

/// Structure-constant JSON for any finite algebra; [`from_json`] reads it
/// back to an equal algebra.
pub fn to_json(a: &FiniteAlgebra) -> Value {
    let table: Vec<Value> = a
        .structure_constants()
        .map(|(i, j, k, c)| json!([i, j, k, c.to_string()]))
        .collect();
    let mut v = json!({
        "kind": "structure_constants",
        "name": a.name(),
        "field": {"char": a.field().characteristic()},
        "dim": a.dim(),
        "labels": a.labels(),
        "table": table,
    });
    let overflow: Vec<Value> = a.overflow_pairs().map(|(i, j)| json!([i, j])).collect();
    if !overflow.is_empty() {
        v["overflow"] = Value::Array(overflow);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_from_json() {
        let b = from_json(r#"{"kind":"osborn-plus","params":{"p":3,"m":1,"alpha":1,"beta":"0"}}"#)
            .unwrap();
        assert_eq!(b.algebra().dim(), 3);
        assert!(b.algebra().is_commutative());
        let g = from_json(r#"{"kind":"osborn-laurent","params":{"alpha":"1/2","window":[-8,8]}}"#)
            .unwrap();
        assert!(g.graded().is_some());
    }

    #[test]
    fn round_trip() {
        for b in [
            build_builtin("gametic", &BuiltinParams { dim: Some(3), ..Default::default() }).unwrap(),
            build_builtin(
                "osborn",
                &BuiltinParams {
                    p: Some(3),
                    m: Some(2),
                    alpha: Some(ScalarText::Int(1)),
                    beta: Some(ScalarText::Int(1)),
                    ..Default::default()
                },
            )
            .unwrap(),
            build_builtin("divided-power", &BuiltinParams { p: Some(0), m: Some(4), ..Default::default() })
                .unwrap(),
            build_builtin("integration", &BuiltinParams { n: Some(5), ..Default::default() }).unwrap(),
        ] {
            let a = b.algebra();
            let text = to_json(a).to_string();
            let back = from_json(&text).unwrap();
            assert_eq!(back.algebra(), a);
        }
    }

    #[test]
    fn errors_carry_paths() {
        let e = from_json(r#"{"kind":"structure_constants","field":{"char":5},"dim":2,"table":[[0,0,7,"1"]]}"#)
            .unwrap_err();
        assert!(e.to_string().starts_with("$.table[0]"), "{e}");
        let e = from_json(r#"{"kind":"osborn","params":{"p":3}}"#).unwrap_err();
        assert!(e.to_string().starts_with("$.params.m"), "{e}");
        let e = from_json(r#"{"kind":"osborn","params":{"q":3}}"#).unwrap_err();
        assert!(e.to_string().starts_with("$.params"), "{e}");
        let e = from_json("{not json").unwrap_err();
        assert!(e.to_string().starts_with('$'), "{e}");
    }
}
