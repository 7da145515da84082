use crate::algebras::Element;
use crate::exactnum::{Field, Scalar};

/// A subspace of `field^ambient`, kept as the rows of its reduced row
/// echelon form (sorted by pivot, pivots normalized to one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: Field, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(|i| Element::basis(field, i)))
    }

    pub fn span(field: Field, ambient: usize, elems: impl IntoIterator<Item = Element>) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for e in elems {
            s.insert(&e);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Vec<Element> {
        self.rows.iter().map(|r| Element::from_dense(r)).collect()
    }

    fn reduce(&self, e: &Element) -> Vec<Scalar> {
        let mut v = e.to_dense(self.field, self.ambient);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.reduce(e).iter().all(Scalar::is_zero)
    }

    /// Adds `e`; returns false if it was already in the span.
    pub fn insert(&mut self, e: &Element) -> bool {
        let mut v = self.reduce(e);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|e| other.contains(e))
    }

    pub fn format_basis(&self, labels: &[String]) -> Vec<String> {
        self.basis().iter().map(|e| e.format(labels)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_keeps_rref() {
        let q = Field::Rationals;
        let mut s = Subspace::zero(q, 3);
        let e = |v: [i64; 3]| Element::from_dense(&v.map(|x| q.from_i64(x)));
        assert!(s.insert(&e([0, 2, 4])));
        assert!(s.insert(&e([1, 1, 0])));
        assert!(!s.insert(&e([2, 3, 2])));
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.basis(), vec![e([1, 0, -2]), e([0, 1, 2])]);
        assert!(s.contains(&e([1, 2, 2])));
        assert!(!s.contains(&e([0, 0, 1])));
    }
}
