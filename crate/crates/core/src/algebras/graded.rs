use std::collections::BTreeMap;
use std::ops::Deref;

use super::{AlgError, FiniteAlgebra};

/// A finite window of an infinite Z-graded algebra.
///
/// The basis is a set of `(degree, component)` pairs with degrees in
/// `[lo, hi]` (some degrees may be missing, e.g. a removed hole). Every
/// product term satisfies `deg(i) + deg(j) - deg(k)` within the declared
/// drop bounds; this is verified when the algebra is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    base: FiniteAlgebra,
    degrees: Vec<i64>,
    components: Vec<usize>,
    window: (i64, i64),
    drop: (i64, i64),
    lookup: BTreeMap<(i64, usize), usize>,
}

impl GradedAlgebra {
    pub fn new(
        base: FiniteAlgebra,
        degrees: Vec<i64>,
        components: Vec<usize>,
        window: (i64, i64),
        drop: (i64, i64),
    ) -> Result<GradedAlgebra, AlgError> {
        if window.0 > window.1 {
            return Err(AlgError::BadWindow {
                lo: window.0,
                hi: window.1,
            });
        }
        if degrees.len() != base.dim() || components.len() != base.dim() {
            return Err(AlgError::DimensionMismatch {
                expected: base.dim(),
                found: degrees.len(),
            });
        }
        let mut lookup = BTreeMap::new();
        for (i, (&d, &c)) in degrees.iter().zip(&components).enumerate() {
            if d < window.0 || d > window.1 {
                return Err(AlgError::InvalidParams(format!(
                    "basis degree {d} outside window [{}, {}]",
                    window.0, window.1
                )));
            }
            lookup.insert((d, c), i);
        }
        let g = GradedAlgebra {
            base,
            degrees,
            components,
            window,
            drop,
            lookup,
        };
        if let Some((lo, hi)) = g.observed_drop() {
            if lo < drop.0 || hi > drop.1 {
                return Err(AlgError::ShiftBounds {
                    declared: drop,
                    observed: (lo, hi),
                });
            }
        }
        Ok(g)
    }

    /// Single-component algebra on degrees `lo..=hi` minus `holes`.
    pub fn degree_labels(lo: i64, hi: i64, holes: &[i64]) -> (Vec<i64>, Vec<String>) {
        let degrees: Vec<i64> = (lo..=hi).filter(|d| !holes.contains(d)).collect();
        let labels = degrees.iter().map(|d| format!("x^{d}")).collect();
        (degrees, labels)
    }

    /// Smallest and largest degree drop over all nonzero product terms.
    pub fn observed_drop(&self) -> Option<(i64, i64)> {
        self.base
            .structure_constants()
            .map(|(i, j, k, _)| self.degrees[i] + self.degrees[j] - self.degrees[k])
            .fold(None, |acc, d| match acc {
                None => Some((d, d)),
                Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
            })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn into_algebra(self) -> FiniteAlgebra {
        self.base
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn component(&self, i: usize) -> usize {
        self.components[i]
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Declared `(min, max)` degree drop per product.
    pub fn drop_bounds(&self) -> (i64, i64) {
        self.drop
    }

    pub fn index_of(&self, degree: i64, component: usize) -> Option<usize> {
        self.lookup.get(&(degree, component)).copied()
    }

    /// Basis indices with degree in `[lo, hi]`, in index order.
    pub fn indices_in_range(&self, lo: i64, hi: i64) -> Vec<usize> {
        (0..self.base.dim())
            .filter(|&i| (lo..=hi).contains(&self.degrees[i]))
            .collect()
    }

    /// Same grading with a transformed product table.
    pub fn map_algebra(&self, f: impl FnOnce(&FiniteAlgebra) -> FiniteAlgebra) -> GradedAlgebra {
        GradedAlgebra::new(
            f(&self.base),
            self.degrees.clone(),
            self.components.clone(),
            self.window,
            self.drop,
        )
        .expect("transform keeps the grading")
    }

    pub fn plus(&self) -> GradedAlgebra {
        self.map_algebra(FiniteAlgebra::plus)
    }

    pub fn minus(&self) -> GradedAlgebra {
        self.map_algebra(FiniteAlgebra::minus)
    }

    pub fn opposite(&self) -> GradedAlgebra {
        self.map_algebra(FiniteAlgebra::opposite)
    }
}

impl Deref for GradedAlgebra {
    type Target = FiniteAlgebra;

    fn deref(&self) -> &FiniteAlgebra {
        &self.base
    }
}
