use super::IdealError;
use crate::algebras::{laurent_hole, osborn_laurent, Element, GradedAlgebra, LaurentVariant};
use crate::exactnum::{binom_p_quotient, Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiVariant {
    /// `psi(x^i, x^j) = [i + j = 0]` on Laurent polynomials over Q.
    Char0,
    /// `psi(x^(i), x^(j)) = C(p^m, i) / p * [i + j = p^m]` over `F_p`.
    CharP { p: u64, m: u32 },
}

pub fn psi_form(variant: PsiVariant, i: i64, j: i64) -> Result<Scalar, IdealError> {
    match variant {
        PsiVariant::Char0 => Ok(Field::Rationals.from_i64((i + j == 0) as i64)),
        PsiVariant::CharP { p, m } => {
            let n = p
                .checked_pow(m)
                .ok_or_else(|| IdealError::OutOfRange(format!("{p}^{m}")))? as i64;
            if i <= 0 || i >= n || j < 0 || j >= n {
                return Err(IdealError::OutOfRange(format!(
                    "psi(x^({i}), x^({j})) needs 0 < i < {n} and 0 <= j < {n}"
                )));
            }
            let field = Field::prime(p)?;
            if i + j != n {
                return Ok(field.zero());
            }
            Ok(binom_p_quotient(p, m, i as u64)?)
        }
    }
}

/// Bilinear extension of the char-0 form to elements of a Laurent window.
fn psi_elements(g: &GradedAlgebra, x: &Element, y: &Element) -> Scalar {
    let mut out = Field::Rationals.zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            if g.degree(a) + g.degree(b) == 0 {
                out += &(ca * cb);
            }
        }
    }
    out
}

/// `psi({x^i,x^j},x^s) + psi({x^j,x^s},x^i) + psi({x^s,x^i},x^j)` with the
/// products taken in `g` (a window of the Laurent Jordan product).
pub fn cyclic_sum(g: &GradedAlgebra, i: i64, j: i64, s: i64) -> Result<Scalar, IdealError> {
    let basis = |d: i64| {
        g.index_of(d, 0)
            .map(|k| g.basis(k))
            .ok_or_else(|| IdealError::OutOfRange(format!("x^{d} is not in the window")))
    };
    let (xi, xj, xs) = (basis(i)?, basis(j)?, basis(s)?);
    let mut total = Field::Rationals.zero();
    for (a, b, c) in [(&xi, &xj, &xs), (&xj, &xs, &xi), (&xs, &xi, &xj)] {
        total += &psi_elements(g, &g.multiply(a, b)?, c);
    }
    Ok(total)
}

/// Outcome of [`hole_coefficient_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleCheck {
    pub hole: i64,
    pub pairs_checked: u64,
    /// `(i, j)` with `x^j` off the hole and `x^i * x^j` hitting it.
    pub violations: Vec<(i64, i64)>,
}

/// For the Jordan Osborn product with `beta = 0` and `2 alpha` integral,
/// checks on a window that `x^i * x^j` has no component along the hole
/// `x^{-2 alpha - 1}` whenever `j` is not the hole.
pub fn hole_coefficient_check(alpha: &Scalar, window: (i64, i64)) -> Result<HoleCheck, IdealError> {
    let hole = laurent_hole(alpha)?;
    let zero = Field::Rationals.zero();
    let g = osborn_laurent(LaurentVariant::Jordan, alpha, &zero, window)?;
    let target = g.index_of(hole, 0);
    let mut out = HoleCheck {
        hole,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            if g.degree(b) == hole {
                continue;
            }
            let Some(prod) = g.basis_product_element(a, b) else {
                continue;
            };
            out.pairs_checked += 1;
            if target.is_some_and(|t| prod.get(t).is_some()) {
                out.violations.push((g.degree(a), g.degree(b)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert!(psi_form(PsiVariant::Char0, 3, -3).unwrap().is_one());
        assert!(psi_form(PsiVariant::Char0, 3, -2).unwrap().is_zero());
        let v = psi_form(PsiVariant::CharP { p: 3, m: 2 }, 3, 6).unwrap();
        assert_eq!(v, Field::prime(3).unwrap().from_i64(1));
        assert!(psi_form(PsiVariant::CharP { p: 3, m: 2 }, 0, 9).is_err());
    }

    #[test]
    fn hole_is_avoided() {
        let h = hole_coefficient_check(&Field::Rationals.from_i64(1), (-6, 6)).unwrap();
        assert_eq!(h.hole, -3);
        assert!(h.violations.is_empty());
        assert!(h.pairs_checked > 0);
    }
}
