use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Monomial;

/// A formal linear combination of nonassociative monomials with rational
/// coefficients over an ordered list of named variables.
///
/// Coefficients are kept over Q and mapped into an algebra's field at
/// evaluation time. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePoly {
    variables: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl FreePoly {
    pub fn zero(variables: Vec<String>) -> FreePoly {
        FreePoly {
            variables,
            terms: BTreeMap::new(),
        }
    }

    pub fn variable(variables: Vec<String>, index: usize) -> FreePoly {
        assert!(index < variables.len(), "variable index out of range");
        FreePoly::monomial(variables, Monomial::Var(index), BigRational::one())
    }

    pub fn monomial(variables: Vec<String>, m: Monomial, coeff: BigRational) -> FreePoly {
        let mut p = FreePoly::zero(variables);
        p.add_term(m, coeff);
        p
    }

    pub fn from_terms(
        variables: Vec<String>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> FreePoly {
        let mut p = FreePoly::zero(variables);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigRational) {
        debug_assert!(m.leaves().iter().all(|&v| v < self.variables.len()));
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest monomial degree; `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True iff every monomial contains each declared variable exactly once.
    pub fn is_multilinear(&self) -> bool {
        let n = self.variables.len();
        self.terms
            .keys()
            .all(|m| m.var_counts(n).iter().all(|&c| c == 1))
    }

    fn assert_compatible(&self, other: &FreePoly) {
        assert_eq!(
            self.variables, other.variables,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> FreePoly {
        if s.is_zero() {
            return FreePoly::zero(self.variables.clone());
        }
        FreePoly {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// The bilinear extension of the free product.
    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        self.assert_compatible(other);
        let mut out = FreePoly::zero(self.variables.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(Monomial::mul(a.clone(), b.clone()), ca * cb);
            }
        }
        out
    }

    /// Substitutes variable `i` by variable `targets[i]` of `new_vars`.
    pub fn substitute_vars(&self, targets: &[usize], new_vars: Vec<String>) -> FreePoly {
        assert_eq!(targets.len(), self.variables.len());
        FreePoly::from_terms(
            new_vars,
            self.terms
                .iter()
                .map(|(m, c)| (m.map_vars(&|v| targets[v]), c.clone())),
        )
    }

    /// Same polynomial with renamed variables.
    pub fn with_variable_names(&self, names: Vec<String>) -> FreePoly {
        assert_eq!(names.len(), self.variables.len());
        FreePoly {
            variables: names,
            terms: self.terms.clone(),
        }
    }

    /// Image in the free commutative magma: every monomial replaced by its
    /// commutative representative, coefficients merged.
    pub fn commutative_image(&self) -> FreePoly {
        FreePoly::from_terms(
            self.variables.clone(),
            self.terms
                .iter()
                .map(|(m, c)| (m.canonical_commutative(), c.clone())),
        )
    }

    /// Full linearization. Each homogeneous component is linearized
    /// separately: a variable of degree `d` is replaced by `d` fresh
    /// variables and only the part multilinear in them is kept. Output
    /// variables are named `t1..tN`. A multilinear input is returned as is.
    pub fn polarize(&self) -> Vec<FreePoly> {
        if self.is_multilinear() {
            return vec![self.clone()];
        }
        let n = self.variables.len();
        let mut components: BTreeMap<Vec<usize>, Vec<(&Monomial, &BigRational)>> =
            BTreeMap::new();
        for (m, c) in &self.terms {
            components.entry(m.var_counts(n)).or_default().push((m, c));
        }
        let mut out = Vec::new();
        for (counts, terms) in components {
            // fresh variable ranges per original variable
            let mut offsets = Vec::with_capacity(n);
            let mut total = 0;
            for &c in &counts {
                offsets.push(total);
                total += c;
            }
            let names: Vec<String> = (1..=total).map(|i| format!("t{i}")).collect();
            let mut poly = FreePoly::zero(names);
            for (m, c) in terms {
                let leaves = m.leaves();
                for assignment in fresh_assignments(&leaves, &counts, &offsets) {
                    poly.add_term(m.with_leaves(&assignment), c.clone());
                }
            }
            if !poly.is_zero() {
                out.push(poly);
            }
        }
        out
    }

    pub fn format(&self) -> String {
        self.to_string()
    }
}

/// All ways to give the occurrences of each variable distinct fresh
/// variables from that variable's range.
fn fresh_assignments(leaves: &[usize], counts: &[usize], offsets: &[usize]) -> Vec<Vec<usize>> {
    let mut results = Vec::new();
    let mut used = vec![false; counts.iter().sum()];
    let mut current = Vec::with_capacity(leaves.len());
    fn rec(
        pos: usize,
        leaves: &[usize],
        counts: &[usize],
        offsets: &[usize],
        used: &mut Vec<bool>,
        current: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
    ) {
        if pos == leaves.len() {
            results.push(current.clone());
            return;
        }
        let v = leaves[pos];
        for fresh in offsets[v]..offsets[v] + counts[v] {
            if !used[fresh] {
                used[fresh] = true;
                current.push(fresh);
                rec(pos + 1, leaves, counts, offsets, used, current, results);
                current.pop();
                used[fresh] = false;
            }
        }
    }
    rec(0, leaves, counts, offsets, &mut used, &mut current, &mut results);
    results
}

pub(crate) fn rational_to_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FreePoly {
    /// Canonical text form; `parse` reads it back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", rational_to_text(&mag))?;
            }
            write!(f, "{}", m.format(&self.variables))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn polarize_square() {
        let x = FreePoly::variable(vars(&["x"]), 0);
        let sq = x.mul(&x);
        assert!(!sq.is_multilinear());
        let pol = sq.polarize();
        assert_eq!(pol.len(), 1);
        assert_eq!(pol[0].to_string(), "t1*t2 + t2*t1");
        assert!(pol[0].is_multilinear());
    }

    #[test]
    fn multilinear_polarizes_to_itself() {
        let v = vars(&["a", "b"]);
        let p = FreePoly::variable(v.clone(), 0).mul(&FreePoly::variable(v, 1));
        assert_eq!(p.polarize(), vec![p.clone()]);
    }

    #[test]
    fn cancellation_removes_terms() {
        let v = vars(&["a", "b"]);
        let ab = FreePoly::variable(v.clone(), 0).mul(&FreePoly::variable(v, 1));
        assert!(ab.sub(&ab).is_zero());
        assert_eq!(ab.sub(&ab).to_string(), "0");
    }
}
