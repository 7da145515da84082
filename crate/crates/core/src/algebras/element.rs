use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactnum::{Field, Scalar};

/// Sparse vector over an algebra's basis. Zero coordinates are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Element {
    coords: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(field: Field, i: usize) -> Element {
        Element::from_pairs([(i, field.one())])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Element {
        let mut e = Element::zero();
        for (i, c) in pairs {
            e.add_term(i, &c);
        }
        e
    }

    /// Element with coordinates `coeffs[i]` on basis vector `i`.
    pub fn from_dense(coeffs: &[Scalar]) -> Element {
        Element::from_pairs(coeffs.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, field: Field, dim: usize) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (&i, c) in &self.coords {
            out[i] = c.clone();
        }
        out
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coords.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.coords.remove(&i);
                }
            }
            None => {
                self.coords.insert(i, c.clone());
            }
        }
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.coords.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (&i, c) in &other.coords {
            self.add_term(i, c);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (&i, c) in &other.coords {
            self.add_term(i, &(c * s));
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.coords {
            out.add_term(i, &-c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element {
            coords: self.coords.iter().map(|(&i, c)| (i, c * s)).collect(),
        }
    }

    /// Text form `c*label + ...` using the given labels.
    pub fn format(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (&i, c)) in self.coords.iter().enumerate() {
            let (neg, mag) = c.sign_and_magnitude();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                s.push_str(&mag);
                s.push('*');
            }
            s.push_str(&labels[i]);
        }
        s
    }
}
