use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AlgError, Element};
use crate::exactnum::{Field, Matrix, Scalar};

/// An algebra on a finite basis given by structure constants.
///
/// `table[i * dim + j]` lists `(k, c)` with `b_i b_j = sum c b_k`. A `None`
/// entry marks a product that leaves the materialized window of an
/// infinite algebra; multiplying through it is an error, never a silent
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    field: Field,
    labels: Vec<String>,
    table: Vec<Option<Vec<(usize, Scalar)>>>,
}

/// Basic structural facts about a [`FiniteAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub is_commutative: bool,
    pub is_associative: bool,
    pub has_left_unit: bool,
    pub has_right_unit: bool,
    /// A two-sided unit, when one exists.
    pub unit: Option<Element>,
    pub left_unit: Option<Element>,
    pub right_unit: Option<Element>,
    /// Some products leave the window; the flags above only cover
    /// defined products and no unit search is attempted.
    pub windowed: bool,
}

impl FiniteAlgebra {
    /// Builds an algebra from an explicit table, merging duplicate terms and
    /// dropping zeros.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        table: Vec<Option<Vec<(usize, Scalar)>>>,
    ) -> Result<FiniteAlgebra, AlgError> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(AlgError::DimensionMismatch {
                expected: dim * dim,
                found: table.len(),
            });
        }
        let mut clean = Vec::with_capacity(table.len());
        for entry in table {
            clean.push(match entry {
                None => None,
                Some(terms) => {
                    let mut e = Element::zero();
                    for (k, c) in terms {
                        if k >= dim {
                            return Err(AlgError::InvalidParams(format!(
                                "basis index {k} out of range for dimension {dim}"
                            )));
                        }
                        e.add_term(k, &field.coerce(&c)?);
                    }
                    Some(e.iter().map(|(k, c)| (k, c.clone())).collect())
                }
            });
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            field,
            labels,
            table: clean,
        })
    }

    /// Builds the table by calling `f(i, j)` for every basis pair; `None`
    /// marks an out-of-window product.
    pub fn from_fn(
        name: impl Into<String>,
        field: Field,
        labels: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Result<Option<Element>, AlgError>,
    ) -> Result<FiniteAlgebra, AlgError> {
        let dim = labels.len();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(
                    f(i, j)?.map(|e| e.iter().map(|(k, c)| (k, c.clone())).collect::<Vec<_>>()),
                );
            }
        }
        FiniteAlgebra::new(name, field, labels, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteAlgebra {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.field, i)
    }

    /// `b_i b_j`, or `None` if it leaves the window.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<&[(usize, Scalar)]> {
        self.table[i * self.dim() + j].as_deref()
    }

    pub fn basis_product_element(&self, i: usize, j: usize) -> Option<Element> {
        self.basis_product(i, j)
            .map(|t| Element::from_pairs(t.iter().cloned()))
    }

    /// True if some product leaves the window.
    pub fn is_windowed(&self) -> bool {
        self.table.iter().any(Option::is_none)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgError> {
        let mut out = Element::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let Some(terms) = self.basis_product(i, j) else {
                    return Err(AlgError::OutOfWindow {
                        left: self.labels[i].clone(),
                        right: self.labels[j].clone(),
                    });
                };
                if terms.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in terms {
                    out.add_term(*k, &(&ab * c));
                }
            }
        }
        Ok(out)
    }

    /// Every defined structure constant as `(i, j, k, c)`, in index order.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let dim = self.dim();
        self.table.iter().enumerate().flat_map(move |(ij, entry)| {
            entry
                .iter()
                .flatten()
                .map(move |(k, c)| (ij / dim, ij % dim, *k, c))
        })
    }

    /// Pairs `(i, j)` whose product leaves the window.
    pub fn overflow_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let dim = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_none())
            .map(move |(ij, _)| (ij / dim, ij % dim))
    }

    fn derive(
        &self,
        name: String,
        f: impl Fn(usize, usize) -> Option<Element>,
    ) -> FiniteAlgebra {
        FiniteAlgebra::from_fn(name, self.field, self.labels.clone(), |i, j| Ok(f(i, j)))
            .expect("derived table is well formed")
    }

    /// Jordan product `a b + b a`.
    pub fn plus(&self) -> FiniteAlgebra {
        self.derive(format!("plus({})", self.name), |i, j| {
            Some(self.basis_product_element(i, j)?.add(&self.basis_product_element(j, i)?))
        })
    }

    /// Commutator `a b - b a`.
    pub fn minus(&self) -> FiniteAlgebra {
        self.derive(format!("minus({})", self.name), |i, j| {
            Some(self.basis_product_element(i, j)?.sub(&self.basis_product_element(j, i)?))
        })
    }

    /// Opposite product `b a`.
    pub fn opposite(&self) -> FiniteAlgebra {
        self.derive(format!("opposite({})", self.name), |i, j| {
            self.basis_product_element(j, i)
        })
    }

    /// Image of `e` under the linear map whose column `j` is the image of
    /// basis vector `j`.
    pub fn apply_linear(&self, map: &Matrix, e: &Element) -> Element {
        let mut out = Element::zero();
        for (j, c) in e.iter() {
            for k in 0..map.rows() {
                let m = &map[(k, j)];
                if !m.is_zero() {
                    out.add_term(k, &(m * c));
                }
            }
        }
        out
    }

    fn check_square(&self, map: &Matrix) -> Result<(), AlgError> {
        if map.rows() != self.dim() || map.cols() != self.dim() {
            return Err(AlgError::DimensionMismatch {
                expected: self.dim(),
                found: if map.rows() != self.dim() {
                    map.rows()
                } else {
                    map.cols()
                },
            });
        }
        if map.field() != self.field {
            return Err(AlgError::FieldMismatch);
        }
        Ok(())
    }

    /// Twisted product `a f(b)`.
    pub fn twist(&self, f: &Matrix) -> Result<FiniteAlgebra, AlgError> {
        self.check_square(f)?;
        FiniteAlgebra::from_fn(
            format!("twist({})", self.name),
            self.field,
            self.labels.clone(),
            |i, j| {
                let fb = self.apply_linear(f, &self.basis(j));
                match self.multiply(&self.basis(i), &fb) {
                    Ok(e) => Ok(Some(e)),
                    Err(AlgError::OutOfWindow { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            },
        )
    }

    /// Checks `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)` on all pairs with
    /// defined products; returns the first failing pair.
    pub fn check_derivation(&self, d: &Matrix) -> Result<(), AlgError> {
        self.check_square(d)?;
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let Some(prod) = self.basis_product_element(i, j) else {
                    continue;
                };
                let lhs = self.apply_linear(d, &prod);
                let l = self.multiply(&self.apply_linear(d, &self.basis(i)), &self.basis(j));
                let r = self.multiply(&self.basis(i), &self.apply_linear(d, &self.basis(j)));
                let (Ok(l), Ok(r)) = (l, r) else {
                    continue;
                };
                if lhs != l.add(&r) {
                    return Err(AlgError::NotADerivation {
                        left: self.labels[i].clone(),
                        right: self.labels[j].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The subalgebra spanned by `basis` (given in this algebra's
    /// coordinates), with products re-expressed in that basis.
    pub fn subalgebra(
        &self,
        name: impl Into<String>,
        basis: &[Element],
        labels: Vec<String>,
    ) -> Result<FiniteAlgebra, AlgError> {
        assert_eq!(basis.len(), labels.len());
        let dim = self.dim();
        // columns are the spanning vectors
        let mut cols = Matrix::zeros(self.field, dim, basis.len());
        for (c, v) in basis.iter().enumerate() {
            for (r, x) in v.iter() {
                cols[(r, c)] = x.clone();
            }
        }
        if cols.rank() != basis.len() {
            return Err(AlgError::InvalidParams("spanning vectors are dependent".into()));
        }
        let name = name.into();
        FiniteAlgebra::from_fn(name.clone(), self.field, labels, |i, j| {
            let prod = match self.multiply(&basis[i], &basis[j]) {
                Ok(p) => p,
                Err(AlgError::OutOfWindow { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let rhs = prod.to_dense(self.field, dim);
            match cols.solve(&rhs)? {
                Some(x) => Ok(Some(Element::from_dense(&x))),
                None => Err(AlgError::NotClosed(format!(
                    "{name}: product of spanning vectors {i} and {j} leaves the span"
                ))),
            }
        })
    }

    pub fn is_commutative(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| (i + 1..dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Associativity on all basis triples whose products are defined.
    pub fn is_associative(&self) -> bool {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let Some(ij) = self.basis_product_element(i, j) else {
                    continue;
                };
                for k in 0..dim {
                    let Some(jk) = self.basis_product_element(j, k) else {
                        continue;
                    };
                    let l = self.multiply(&ij, &self.basis(k));
                    let r = self.multiply(&self.basis(i), &jk);
                    if let (Ok(l), Ok(r)) = (l, r) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Solves `e b_i = b_i` (left) and/or `b_i e = b_i` (right) for all `i`
    /// as one exact linear system in the coordinates of `e`.
    fn solve_unit(&self, left: bool, right: bool) -> Option<Element> {
        let dim = self.dim();
        let f = self.field;
        let mut sides = Vec::new();
        if left {
            sides.push(true);
        }
        if right {
            sides.push(false);
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..dim {
            for t in 0..dim {
                for &on_left in &sides {
                    let mut row = vec![f.zero(); dim];
                    for (k, slot) in row.iter_mut().enumerate() {
                        let prod = if on_left {
                            self.basis_product(k, i)
                        } else {
                            self.basis_product(i, k)
                        };
                        let prod = prod.expect("no overflow");
                        if let Some((_, c)) = prod.iter().find(|(idx, _)| *idx == t) {
                            *slot = c.clone();
                        }
                    }
                    rows.push(row);
                    rhs.push(if i == t { f.one() } else { f.zero() });
                }
            }
        }
        let m = Matrix::from_rows(f, rows).expect("rows share the algebra field");
        m.solve(&rhs)
            .expect("shapes agree")
            .map(|x| Element::from_dense(&x))
    }

    pub fn predicates(&self) -> Predicates {
        let windowed = self.is_windowed();
        let (left_unit, right_unit, unit) = if windowed {
            (None, None, None)
        } else {
            (
                self.solve_unit(true, false),
                self.solve_unit(false, true),
                self.solve_unit(true, true),
            )
        };
        Predicates {
            is_commutative: self.is_commutative(),
            is_associative: self.is_associative(),
            has_left_unit: left_unit.is_some(),
            has_right_unit: right_unit.is_some(),
            unit,
            left_unit,
            right_unit,
            windowed,
        }
    }

    /// Commutative algebra with uniformly random structure constants.
    pub fn random_commutative(dim: usize, field: Field, seed: u64) -> FiniteAlgebra {
        let p = match field {
            Field::Prime(p) => p,
            Field::Rationals => 7,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut table = vec![None; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let terms: Vec<(usize, Scalar)> = (0..dim)
                    .map(|k| (k, field.from_i64(rng.gen_range(0..p) as i64)))
                    .collect();
                table[i * dim + j] = Some(terms.clone());
                table[j * dim + i] = Some(terms);
            }
        }
        let labels = (1..=dim).map(|i| format!("e{i}")).collect();
        FiniteAlgebra::new(
            format!("random_commutative(dim={dim},{field},seed={seed})"),
            field,
            labels,
            table,
        )
        .expect("random table is well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_dim() -> FiniteAlgebra {
        // e1 e1 = e1, e1 e2 = e2, e2 e1 = 0, e2 e2 = 0
        let f = Field::Rationals;
        let one = f.one();
        FiniteAlgebra::new(
            "t",
            f,
            vec!["e1".into(), "e2".into()],
            vec![
                Some(vec![(0, one.clone())]),
                Some(vec![(1, one)]),
                Some(vec![]),
                Some(vec![]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn transforms() {
        let a = two_dim();
        assert!(!a.is_commutative());
        assert_eq!(a.opposite().opposite(), a.clone().with_name("opposite(opposite(t))"));
        assert!(a.plus().is_commutative());
        let m = a.minus();
        assert_eq!(m.basis_product(0, 0), Some(&[][..]));
        let id = Matrix::identity(Field::Rationals, 2);
        assert_eq!(a.twist(&id).unwrap().with_name("t"), a);
        let zero = Matrix::zeros(Field::Rationals, 2, 2);
        assert!(a.twist(&zero).unwrap().structure_constants().next().is_none());
    }

    #[test]
    fn units() {
        let p = two_dim().predicates();
        assert!(p.has_left_unit);
        assert_eq!(p.left_unit, Some(Element::basis(Field::Rationals, 0)));
        assert!(!p.has_right_unit);
        assert!(p.is_associative);
    }

    #[test]
    fn random_is_commutative_and_deterministic() {
        let a = FiniteAlgebra::random_commutative(3, Field::Prime(5), 1);
        assert!(a.is_commutative());
        assert_eq!(a, FiniteAlgebra::random_commutative(3, Field::Prime(5), 1));
    }
}
