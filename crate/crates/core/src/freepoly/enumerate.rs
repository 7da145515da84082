use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::{FreePoly, Monomial, PolyError};

pub const MAX_ENUMERATION_DEGREE: usize = 6;

/// Tree shapes with `n` leaves, ordered by size of the left factor, then
/// recursively.
fn shapes(n: usize) -> Vec<Monomial> {
    if n == 1 {
        return vec![Monomial::Var(0)];
    }
    let mut out = Vec::new();
    for k in 1..n {
        let lefts = shapes(k);
        let rights = shapes(n - k);
        for l in &lefts {
            for r in &rights {
                out.push(Monomial::mul(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// Multilinear monomials in `t1..tn`. Without commutativity the list has
/// `Catalan(n-1) * n!` entries ordered by shape, then by leaf permutation.
/// With commutativity it holds one canonical representative per orbit,
/// sorted by [`Monomial::commutative_cmp`].
pub fn multilinear_monomials(n: usize, commutative: bool) -> Result<Vec<Monomial>, PolyError> {
    if n == 0 || n > MAX_ENUMERATION_DEGREE {
        return Err(PolyError::DegreeOutOfRange(n));
    }
    let perms = permutations(n);
    let mut all = Vec::new();
    for s in shapes(n) {
        for p in &perms {
            all.push(s.with_leaves(p));
        }
    }
    if !commutative {
        return Ok(all);
    }
    let set: BTreeSet<Monomial> = all.iter().map(Monomial::canonical_commutative).collect();
    let mut reps: Vec<Monomial> = set.into_iter().collect();
    reps.sort_by(|a, b| a.commutative_cmp(b));
    Ok(reps)
}

/// The fifteen commutative degree-4 monomials in the order
/// `(t1t2)(t3t4), (t1t3)(t2t4), (t1t4)(t2t3), ((t1t2)t3)t4, ..., ((t3t4)t2)t1`.
pub fn deg4_ordered() -> Vec<Monomial> {
    let v = Monomial::Var;
    let mut out = Vec::with_capacity(15);
    for (i, j, k, l) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        out.push(Monomial::mul(Monomial::mul(v(i), v(j)), Monomial::mul(v(k), v(l))));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&r| r != i && r != j).collect();
            for (k, l) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                out.push(Monomial::mul(
                    Monomial::mul(Monomial::mul(v(i), v(j)), v(k)),
                    v(l),
                ));
            }
        }
    }
    out
}

/// An ordered list of monomials used as coordinates for multilinear
/// polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub name: String,
    pub monomials: Vec<Monomial>,
    /// Monomials are commutative representatives; polynomials are mapped to
    /// their commutative image before taking coordinates.
    pub commutative: bool,
}

impl MonomialBasis {
    pub fn multilinear(n: usize, commutative: bool) -> Result<MonomialBasis, PolyError> {
        Ok(MonomialBasis {
            name: format!(
                "multilinear-{n}{}",
                if commutative { "-commutative" } else { "" }
            ),
            monomials: multilinear_monomials(n, commutative)?,
            commutative,
        })
    }

    pub fn deg4_ordered() -> MonomialBasis {
        MonomialBasis {
            name: "deg4-ordered".into(),
            monomials: deg4_ordered(),
            commutative: true,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials.first().map(Monomial::degree).unwrap_or(0)
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        if self.commutative {
            let c = m.canonical_commutative();
            self.monomials.iter().position(|x| *x == c)
        } else {
            self.monomials.iter().position(|x| x == m)
        }
    }

    /// Coefficient vector of `poly` in this basis.
    pub fn coordinates(&self, poly: &FreePoly) -> Result<Vec<BigRational>, PolyError> {
        let mut out = vec![BigRational::zero(); self.monomials.len()];
        for (m, c) in poly.terms() {
            let i = self
                .position(m)
                .ok_or_else(|| PolyError::OutsideBasis(m.format(poly.variables())))?;
            out[i] += c;
        }
        Ok(out)
    }

    /// The polynomial `sum coeffs[i] * monomials[i]` over `variables`.
    pub fn combination(&self, coeffs: &[BigRational], variables: Vec<String>) -> FreePoly {
        assert_eq!(coeffs.len(), self.monomials.len());
        FreePoly::from_terms(
            variables,
            self.monomials
                .iter()
                .cloned()
                .zip(coeffs.iter().cloned()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("t{i}")).collect()
    }

    #[test]
    fn counts() {
        let catalan = [1, 1, 2, 5, 14, 42];
        let fact = [1, 1, 2, 6, 24, 120, 720];
        for n in 1..=5 {
            assert_eq!(
                multilinear_monomials(n, false).unwrap().len(),
                catalan[n - 1] * fact[n]
            );
        }
        assert_eq!(multilinear_monomials(3, false).unwrap().len(), 12);
        assert_eq!(multilinear_monomials(4, true).unwrap().len(), 15);
        assert_eq!(multilinear_monomials(0, false), Err(PolyError::DegreeOutOfRange(0)));
        assert_eq!(multilinear_monomials(7, true), Err(PolyError::DegreeOutOfRange(7)));
    }

    #[test]
    fn degree_two() {
        let ms = multilinear_monomials(2, false).unwrap();
        let text: Vec<String> = ms.iter().map(|m| m.format(&names(2))).collect();
        assert_eq!(text, ["t1*t2", "t2*t1"]);
    }

    #[test]
    fn deg4_order_is_a_permutation_of_canonical() {
        let ordered = deg4_ordered();
        let text: Vec<String> = ordered.iter().map(|m| m.format_compact(&names(4))).collect();
        assert_eq!(text[0], "(t1t2)(t3t4)");
        assert_eq!(text[3], "((t1t2)t3)t4");
        assert_eq!(text[8], "((t1t4)t3)t2");
        assert_eq!(text[14], "((t3t4)t2)t1");
        let mut a = ordered.clone();
        let mut b = multilinear_monomials(4, true).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
