use std::collections::{BTreeSet, HashSet};

use num_traits::One;
use serde_json::{json, Value};

use super::eval::{validate_args, CompiledPoly};
use super::CheckError;
use crate::algebras::{Element, FiniteAlgebra};
use crate::exactnum::{Field, Matrix, Scalar};
use crate::freepoly::{catalog, FreePoly, MonomialBasis};
use crate::sweep::{decode, tuple_count};
use crate::table::push_aligned;

/// Whether a catalog identity's coefficient vector lies in the nullspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub name: String,
    pub coordinates: Vec<Scalar>,
    pub in_nullspace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpaceReport {
    pub degree: usize,
    pub basis_name: String,
    /// Basis monomials in `t1..tn`, compact notation.
    pub monomials: Vec<String>,
    pub field: Field,
    /// One label per matrix row.
    pub row_labels: Vec<String>,
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub nullspace: Vec<Vec<Scalar>>,
    pub memberships: Vec<Membership>,
    /// Substitutions dropped because an intermediate product left the window.
    pub skipped_substitutions: u64,
}

fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

fn compiled_basis(basis: &MonomialBasis, field: Field) -> Result<Vec<CompiledPoly>, CheckError> {
    let vars = variable_names(basis.degree());
    basis
        .monomials
        .iter()
        .map(|m| {
            let p = FreePoly::monomial(vars.clone(), m.clone(), One::one());
            CompiledPoly::new(&p, field)
        })
        .collect()
}

fn tuple_label(alg: &FiniteAlgebra, args: &[Element]) -> String {
    let parts: Vec<String> = args.iter().map(|e| e.format(alg.labels())).collect();
    format!("({})", parts.join(","))
}

/// Matrix rows contributed by one substitution: one row if every monomial
/// value is a multiple of the same basis vector, else one per support index.
fn rows_for(
    alg: &FiniteAlgebra,
    values: &[Element],
    label: &str,
) -> Vec<(String, Vec<Scalar>)> {
    let support: BTreeSet<usize> = values.iter().flat_map(|v| v.support()).collect();
    let field = alg.field();
    let row = |k: Option<usize>| -> Vec<Scalar> {
        values
            .iter()
            .map(|v| {
                k.and_then(|k| v.get(k).cloned())
                    .unwrap_or_else(|| field.zero())
            })
            .collect()
    };
    if support.len() <= 1 {
        return vec![(label.to_string(), row(support.first().copied()))];
    }
    support
        .iter()
        .map(|&k| (format!("{label}@{}", alg.label(k)), row(Some(k))))
        .collect()
}

fn check_basis(n: usize, basis: &MonomialBasis) -> Result<(), CheckError> {
    if basis.degree() != n {
        return Err(CheckError::InvalidSubstitution(format!(
            "basis {} has degree {}, not {n}",
            basis.name,
            basis.degree()
        )));
    }
    Ok(())
}

/// The substitution matrix of `basis` under the given assignments, with its
/// rank, canonical nullspace and catalog memberships.
pub fn identity_space(
    n: usize,
    alg: &FiniteAlgebra,
    basis: &MonomialBasis,
    substitutions: &[Vec<Element>],
) -> Result<IdentitySpaceReport, CheckError> {
    check_basis(n, basis)?;
    let monos = compiled_basis(basis, alg.field())?;
    let mut rows = Vec::new();
    for args in substitutions {
        if args.len() != n {
            return Err(CheckError::InvalidSubstitution(format!(
                "{} values for degree {n}",
                args.len()
            )));
        }
        if let Some(m) = monos.first() {
            validate_args(alg, &m.poly, args)?;
        }
        let values = monos
            .iter()
            .map(|m| m.eval(alg, args))
            .collect::<Result<Vec<_>, _>>()?;
        rows.extend(rows_for(alg, &values, &tuple_label(alg, args)));
    }
    finish(n, alg, basis, rows, 0)
}

/// Like [`identity_space`] over every tuple of basis vectors drawn from
/// `candidates`. Tuples leaving the window are skipped; duplicate and zero
/// rows are dropped.
pub fn identity_space_sweep(
    n: usize,
    alg: &FiniteAlgebra,
    basis: &MonomialBasis,
    candidates: &[usize],
) -> Result<IdentitySpaceReport, CheckError> {
    check_basis(n, basis)?;
    let monos = compiled_basis(basis, alg.field())?;
    let field = alg.field();
    let mut seen: HashSet<Vec<Scalar>> = HashSet::new();
    let mut rows = Vec::new();
    let mut skipped = 0;
    let mut digits = vec![0; n];
    for index in 0..tuple_count(candidates.len(), n) {
        decode(index, candidates.len(), n, &mut digits);
        let args: Vec<Element> = digits
            .iter()
            .map(|&d| Element::basis(field, candidates[d]))
            .collect();
        let Ok(values) = monos
            .iter()
            .map(|m| m.eval(alg, &args))
            .collect::<Result<Vec<_>, _>>()
        else {
            skipped += 1;
            continue;
        };
        for (label, row) in rows_for(alg, &values, &tuple_label(alg, &args)) {
            if row.iter().any(|c| !c.is_zero()) && seen.insert(row.clone()) {
                rows.push((label, row));
            }
        }
    }
    finish(n, alg, basis, rows, skipped)
}

fn finish(
    n: usize,
    alg: &FiniteAlgebra,
    basis: &MonomialBasis,
    rows: Vec<(String, Vec<Scalar>)>,
    skipped: u64,
) -> Result<IdentitySpaceReport, CheckError> {
    let field = alg.field();
    let (row_labels, rows): (Vec<String>, Vec<Vec<Scalar>>) = rows.into_iter().unzip();
    let matrix = if rows.is_empty() {
        Matrix::zeros(field, 0, basis.len())
    } else {
        Matrix::from_rows(field, rows)?
    };
    let rref = matrix.rref();
    let nullspace = matrix.nullspace();
    let memberships = memberships(n, basis, &matrix)?;
    let vars = variable_names(n);
    Ok(IdentitySpaceReport {
        degree: n,
        basis_name: basis.name.clone(),
        monomials: basis
            .monomials
            .iter()
            .map(|m| m.format_compact(&vars))
            .collect(),
        field,
        row_labels,
        rank: rref.rank,
        pivot_columns: rref.pivot_cols,
        matrix,
        nullspace,
        memberships,
        skipped_substitutions: skipped,
    })
}

/// Coordinates of `poly` in `basis`, mapped into `field`; `None` if the
/// polynomial is not a combination of basis monomials.
pub(crate) fn field_coordinates(
    poly: &FreePoly,
    basis: &MonomialBasis,
    field: Field,
) -> Option<Vec<Scalar>> {
    if poly.variables().len() != basis.degree() || !poly.is_multilinear() {
        return None;
    }
    let coords = basis.coordinates(poly).ok()?;
    coords.iter().map(|c| field.from_rational(c).ok()).collect()
}

pub(crate) fn in_nullspace(matrix: &Matrix, v: &[Scalar]) -> Result<bool, CheckError> {
    Ok(matrix.mul_vec(v)?.iter().all(Scalar::is_zero))
}

fn memberships(
    n: usize,
    basis: &MonomialBasis,
    matrix: &Matrix,
) -> Result<Vec<Membership>, CheckError> {
    let mut out = Vec::new();
    for entry in catalog().iter().filter(|e| e.degree == n) {
        let Some(coordinates) = field_coordinates(&entry.poly, basis, matrix.field()) else {
            continue;
        };
        out.push(Membership {
            name: entry.name.to_string(),
            in_nullspace: in_nullspace(matrix, &coordinates)?,
            coordinates,
        });
    }
    Ok(out)
}

fn mu(i: usize) -> String {
    format!("mu{}", i + 1)
}

impl IdentitySpaceReport {
    pub fn nullity(&self) -> usize {
        self.nullspace.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.matrix.cols())
            .filter(|c| !self.pivot_columns.contains(c))
            .collect()
    }

    /// Plain-text report with aligned columns.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "identity space: degree {}, basis {}, field {}\n",
            self.degree, self.basis_name, self.field
        ));
        out.push_str("monomials:\n");
        let mrows: Vec<Vec<String>> = self
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| vec![format!("  {}", mu(i)), m.clone()])
            .collect();
        push_aligned(&mut out, &mrows);
        out.push_str(&format!(
            "matrix ({} x {}):\n",
            self.matrix.rows(),
            self.matrix.cols()
        ));
        let mut table = vec![std::iter::once("  substitution".to_string())
            .chain((0..self.matrix.cols()).map(mu))
            .collect::<Vec<_>>()];
        for (label, row) in self.row_labels.iter().zip(self.matrix.to_string_rows()) {
            table.push(std::iter::once(format!("  {label}")).chain(row).collect());
        }
        push_aligned(&mut out, &table);
        if self.skipped_substitutions > 0 {
            out.push_str(&format!(
                "skipped substitutions {}\n",
                self.skipped_substitutions
            ));
        }
        out.push_str(&format!("rank {}\n", self.rank));
        out.push_str(&format!("nullspace dimension {}\n", self.nullity()));
        if !self.nullspace.is_empty() {
            out.push_str("nullspace basis:\n");
            let rows: Vec<Vec<String>> = self
                .nullspace
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    std::iter::once(format!("  v{}", i + 1))
                        .chain(v.iter().map(Scalar::to_string))
                        .collect()
                })
                .collect();
            push_aligned(&mut out, &rows);
        }
        if !self.memberships.is_empty() {
            out.push_str("catalog identities in the nullspace:\n");
            let rows: Vec<Vec<String>> = self
                .memberships
                .iter()
                .map(|m| {
                    vec![
                        format!("  {}", m.name),
                        if m.in_nullspace { "yes" } else { "no" }.to_string(),
                    ]
                })
                .collect();
            push_aligned(&mut out, &rows);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let strings = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>();
        json!({
            "degree": self.degree,
            "basis": self.basis_name,
            "field": self.field.to_string(),
            "monomials": self.monomials,
            "rows": self.row_labels,
            "matrix": self.matrix.to_string_rows(),
            "rank": self.rank,
            "pivot_columns": self.pivot_columns,
            "nullspace": self.nullspace.iter().map(|v| strings(v)).collect::<Vec<_>>(),
            "memberships": self.memberships.iter().map(|m| json!({
                "name": m.name,
                "coordinates": strings(&m.coordinates),
                "in_nullspace": m.in_nullspace,
            })).collect::<Vec<_>>(),
            "skipped_substitutions": self.skipped_substitutions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::divided_power;

    #[test]
    fn commutative_associative_degree_three() {
        // In an associative commutative algebra all three commutative
        // degree-3 monomials agree, so the identity space has dimension 2.
        let a = divided_power(5, 1).unwrap();
        let basis = MonomialBasis::multilinear(3, true).unwrap();
        let all: Vec<usize> = (0..a.dim()).collect();
        let r = identity_space_sweep(3, &a, &basis, &all).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.nullity(), 2);
        assert!(r.memberships.iter().all(|m| m.name != "commutativity"));
    }

    #[test]
    fn multi_support_substitution_splits() {
        let a = divided_power(3, 1).unwrap();
        let basis = MonomialBasis::multilinear(2, false).unwrap();
        let one_plus_x = a.basis(0).add(&a.basis(1));
        let r = identity_space(2, &a, &basis, &[vec![one_plus_x, a.basis(0)]]).unwrap();
        assert_eq!(r.matrix.rows(), 2);
        assert!(identity_space(2, &a, &basis, &[vec![a.basis(0)]]).is_err());
    }
}
