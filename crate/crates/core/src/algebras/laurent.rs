use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{AlgError, Element, FiniteAlgebra, GradedAlgebra};
use crate::exactnum::{Field, Scalar};
use crate::freepoly;
use crate::identcheck::{check_identity, check_identity_windowed, Verdict};

/// Which Osborn product on Laurent polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentVariant {
    /// `x^i o x^j = (i + alpha) x^{i+j-1} + beta x^{i+j-2}`.
    Novikov,
    /// `x^i * x^j = (i + j + 2 alpha) x^{i+j-1} + 2 beta x^{i+j-2}`.
    Jordan,
}

const Q: Field = Field::Rationals;

fn check_window(window: (i64, i64)) -> Result<(), AlgError> {
    if window.0 > window.1 {
        return Err(AlgError::BadWindow {
            lo: window.0,
            hi: window.1,
        });
    }
    Ok(())
}

/// Laurent coefficients of `x^i (op) x^j`, as `(degree, coefficient)`.
fn laurent_terms(
    variant: LaurentVariant,
    alpha: &Scalar,
    beta: &Scalar,
    i: i64,
    j: i64,
) -> [(i64, Scalar); 2] {
    match variant {
        LaurentVariant::Novikov => [
            (i + j - 1, &Q.from_i64(i) + alpha),
            (i + j - 2, beta.clone()),
        ],
        LaurentVariant::Jordan => {
            let two = Q.from_i64(2);
            [
                (i + j - 1, &Q.from_i64(i + j) + &(&two * alpha)),
                (i + j - 2, &two * beta),
            ]
        }
    }
}

/// Places Laurent terms on the basis, `None` if a nonzero term leaves it.
fn place(
    terms: impl IntoIterator<Item = (i64, Scalar)>,
    index: &BTreeMap<i64, usize>,
) -> Option<Element> {
    let mut e = Element::zero();
    for (d, c) in terms {
        if c.is_zero() {
            continue;
        }
        e.add_term(*index.get(&d)?, &c);
    }
    Some(e)
}

fn single_component(
    name: String,
    degrees: Vec<i64>,
    labels: Vec<String>,
    window: (i64, i64),
    drop: (i64, i64),
    product: impl Fn(i64, i64) -> Result<Option<Element>, AlgError>,
) -> Result<GradedAlgebra, AlgError> {
    let base = FiniteAlgebra::from_fn(name, Q, labels, |i, j| product(degrees[i], degrees[j]))?;
    let n = degrees.len();
    GradedAlgebra::new(base, degrees, vec![0; n], window, drop)
}

/// Osborn algebra on the Laurent window `x^lo..x^hi` over Q.
pub fn osborn_laurent(
    variant: LaurentVariant,
    alpha: &Scalar,
    beta: &Scalar,
    window: (i64, i64),
) -> Result<GradedAlgebra, AlgError> {
    check_window(window)?;
    let (alpha, beta) = (Q.coerce(alpha)?, Q.coerce(beta)?);
    let (degrees, labels) = GradedAlgebra::degree_labels(window.0, window.1, &[]);
    let index: BTreeMap<i64, usize> = degrees.iter().enumerate().map(|(k, &d)| (d, k)).collect();
    let drop = if beta.is_zero() { (1, 1) } else { (1, 2) };
    let tag = match variant {
        LaurentVariant::Novikov => "novikov",
        LaurentVariant::Jordan => "jordan",
    };
    single_component(
        format!("osborn_laurent({tag},{alpha},{beta},[{},{}])", window.0, window.1),
        degrees,
        labels,
        window,
        drop,
        |i, j| Ok(place(laurent_terms(variant, &alpha, &beta, i, j), &index)),
    )
}

/// Degree of the removed basis vector `x^{-2 alpha - 1}`, when `2 alpha` is
/// an integer.
pub fn laurent_hole(alpha: &Scalar) -> Result<i64, AlgError> {
    let a = Q.coerce(alpha)?;
    let twice = a.as_rational().expect("rational") * num_rational::BigRational::from_integer(2.into());
    if !twice.is_integer() {
        return Err(AlgError::ParamConstraintViolated(format!(
            "alpha = {a} is not in (1/2)Z"
        )));
    }
    let t = twice.to_integer().to_i64().ok_or_else(|| {
        AlgError::ParamConstraintViolated("alpha too large".into())
    })?;
    Ok(-t - 1)
}

/// Jordan Osborn algebra with `beta = 0` on the window with `x^{-2 alpha - 1}`
/// removed. Construction fails if a product had a nonzero coefficient on the
/// removed vector.
pub fn osborn_bar_laurent_plus(alpha: &Scalar, window: (i64, i64)) -> Result<GradedAlgebra, AlgError> {
    check_window(window)?;
    let alpha = Q.coerce(alpha)?;
    let hole = laurent_hole(&alpha)?;
    let (degrees, labels) = GradedAlgebra::degree_labels(window.0, window.1, &[hole]);
    let index: BTreeMap<i64, usize> = degrees.iter().enumerate().map(|(k, &d)| (d, k)).collect();
    let zero = Q.zero();
    single_component(
        format!("osborn_bar_plus({alpha},0,[{},{}])", window.0, window.1),
        degrees,
        labels,
        window,
        (1, 1),
        |i, j| {
            let terms = laurent_terms(LaurentVariant::Jordan, &alpha, &zero, i, j);
            if terms.iter().any(|(d, c)| *d == hole && !c.is_zero()) {
                return Err(AlgError::NotClosed(format!(
                    "x^{i} * x^{j} has a nonzero x^{hole} coefficient"
                )));
            }
            Ok(place(terms, &index))
        },
    )
}

/// Laurent expansion of the modified basis vector: `x^i` for `i < -1`,
/// `x^i + 2 beta / (i + 1) x^{i-1}` for `i > -1`.
fn bar_vector(beta: &Scalar, i: i64) -> Vec<(i64, Scalar)> {
    let mut v = vec![(i, Q.one())];
    if i > -1 {
        let c = (&Q.from_i64(2) * beta)
            .checked_div(&Q.from_i64(i + 1))
            .expect("i + 1 > 0");
        v.push((i - 1, c));
    }
    v
}

/// Jordan Osborn algebra with `alpha = 0` in the basis `x̄^i, i != -1`, for
/// the product `D(ab) + 2 beta x^{-2} ab`. Products are re-expressed by
/// descending through leading terms; reaching `x^{-1}` is a closure
/// failure and leaving the window is an overflow.
pub fn osborn_bar_laurent_novikov(
    beta: &Scalar,
    window: (i64, i64),
) -> Result<GradedAlgebra, AlgError> {
    check_window(window)?;
    let beta = Q.coerce(beta)?;
    let (degrees, _) = GradedAlgebra::degree_labels(window.0, window.1, &[-1]);
    let labels = degrees.iter().map(|d| format!("xbar^{d}")).collect();
    let index: BTreeMap<i64, usize> = degrees.iter().enumerate().map(|(k, &d)| (d, k)).collect();
    let zero = Q.zero();
    single_component(
        format!("osborn_bar(0,{beta},[{},{}])", window.0, window.1),
        degrees,
        labels,
        window,
        // the descent can push terms arbitrarily low, so only the trivial
        // bound from the window is known
        (1, (2 * window.1 - window.0).max(1)),
        |i, j| {
            let mut laurent: BTreeMap<i64, Scalar> = BTreeMap::new();
            for (a, ca) in bar_vector(&beta, i) {
                for (b, cb) in bar_vector(&beta, j) {
                    for (d, c) in laurent_terms(LaurentVariant::Jordan, &zero, &beta, a, b) {
                        let entry = laurent.entry(d).or_insert_with(|| Q.zero());
                        *entry += &(&(&ca * &cb) * &c);
                    }
                }
            }
            laurent.retain(|_, c| !c.is_zero());
            let mut out = Element::zero();
            while let Some((&top, c)) = laurent.iter().next_back() {
                let c = c.clone();
                if top == -1 {
                    return Err(AlgError::NotClosed(format!(
                        "xbar^{i} * xbar^{j} has a component along x^-1"
                    )));
                }
                let Some(&k) = index.get(&top) else {
                    return Ok(None);
                };
                out.add_term(k, &c);
                for (d, v) in bar_vector(&beta, top) {
                    let entry = laurent.entry(d).or_insert_with(|| Q.zero());
                    *entry -= &(&c * &v);
                }
                laurent.retain(|_, c| !c.is_zero());
            }
            Ok(Some(out))
        },
    )
}

/// `x^i * x^j = x^{i+j+1} / (j + 1)` on `x^0..x^n` over Q, the product
/// `a * integral_0^x b`.
pub fn integration_product(n: u32) -> Result<GradedAlgebra, AlgError> {
    let hi = n as i64;
    let (degrees, labels) = GradedAlgebra::degree_labels(0, hi, &[]);
    single_component(
        format!("integration({n})"),
        degrees,
        labels,
        (0, hi),
        (-1, -1),
        |i, j| {
            if i + j + 1 > hi {
                return Ok(None);
            }
            let c = Q.one().checked_div(&Q.from_i64(j + 1))?;
            Ok(Some(Element::from_pairs([((i + j + 1) as usize, c)])))
        },
    )
}

fn prereq(
    name: &str,
    outcome: crate::identcheck::CheckOutcome,
    labels: &[String],
) -> Result<(), AlgError> {
    if let Verdict::Fails(w) = outcome.verdict {
        return Err(AlgError::PrereqIdentityFails {
            identity: name.into(),
            witness: w.describe(labels),
        });
    }
    Ok(())
}

/// `(x ⊗ r) o (y ⊗ s) = [x, y] ⊗ rs` for a right Leibniz algebra `g` and a
/// left Leibniz dual algebra `r` (checked on its window).
pub fn tensor_leibniz(g: &FiniteAlgebra, r: &GradedAlgebra) -> Result<GradedAlgebra, AlgError> {
    if g.field() != r.field() {
        return Err(AlgError::FieldMismatch);
    }
    let lr = freepoly::lookup("leibniz_right").expect("catalog entry");
    prereq("leibniz_right", check_identity(&lr.poly, g, &Default::default()), g.labels())?;
    let ld = freepoly::lookup("leibniz_dual_left").expect("catalog entry");
    let (lo, hi) = r.window();
    prereq(
        "leibniz_dual_left",
        check_identity_windowed(&ld.poly, r, (lo, hi))?,
        r.labels(),
    )?;
    let (dg, dr) = (g.dim(), r.dim());
    let ncomp = (0..dr).map(|i| r.component(i)).max().unwrap_or(0) + 1;
    let mut labels = Vec::with_capacity(dg * dr);
    let mut degrees = Vec::with_capacity(dg * dr);
    let mut comps = Vec::with_capacity(dg * dr);
    for x in 0..dg {
        for s in 0..dr {
            labels.push(format!("{}⊗{}", g.label(x), r.label(s)));
            degrees.push(r.degree(s));
            comps.push(x * ncomp + r.component(s));
        }
    }
    let base = FiniteAlgebra::from_fn(
        format!("tensor_leibniz({},{})", g.name(), r.name()),
        g.field(),
        labels,
        |a, b| {
            let (x, rr) = (a / dr, a % dr);
            let (y, s) = (b / dr, b % dr);
            let bracket = g.basis_product_element(x, y).unwrap_or_default();
            if bracket.is_zero() {
                return Ok(Some(Element::zero()));
            }
            let Some(rs) = r.basis_product_element(rr, s) else {
                return Ok(None);
            };
            let mut out = Element::zero();
            for (z, c) in bracket.iter() {
                for (t, d) in rs.iter() {
                    out.add_term(z * dr + t, &(c * d));
                }
            }
            Ok(Some(out))
        },
    )?;
    GradedAlgebra::new(base, degrees, comps, r.window(), r.drop_bounds())
}

/// Two-dimensional nonabelian Lie algebra `[e, f] = e`, `[f, e] = -e`.
pub fn nonabelian_lie2(field: Field) -> FiniteAlgebra {
    FiniteAlgebra::new(
        "lie2",
        field,
        vec!["e".into(), "f".into()],
        vec![
            Some(vec![]),
            Some(vec![(0, field.one())]),
            Some(vec![(0, -field.one())]),
            Some(vec![]),
        ],
    )
    .expect("valid table")
}

/// Abelian (zero-product) algebra of the given dimension.
pub fn abelian(dim: usize, field: Field) -> FiniteAlgebra {
    FiniteAlgebra::new(
        format!("abelian({dim})"),
        field,
        (1..=dim).map(|i| format!("e{i}")).collect(),
        vec![Some(vec![]); dim * dim],
    )
    .expect("valid table")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Q.from_i64(n)
    }

    fn half(n: i64) -> Scalar {
        q(n).checked_div(&q(2)).unwrap()
    }

    #[test]
    fn laurent_specializations() {
        let a = osborn_laurent(LaurentVariant::Jordan, &q(0), &q(0), (-4, 8)).unwrap();
        let i2 = a.index_of(2, 0).unwrap();
        let i3 = a.index_of(3, 0).unwrap();
        let i4 = a.index_of(4, 0).unwrap();
        assert_eq!(
            a.basis_product_element(i2, i3),
            Some(Element::from_pairs([(i4, q(5))]))
        );
        assert_eq!(a.observed_drop(), Some((1, 1)));
        let b = osborn_laurent(LaurentVariant::Jordan, &q(1), &q(1), (-4, 8)).unwrap();
        assert_eq!(b.drop_bounds(), (1, 2));
        assert_eq!(a.basis_product(i4, a.index_of(8, 0).unwrap()), None);
        assert!(osborn_laurent(LaurentVariant::Novikov, &q(0), &q(0), (3, 1)).is_err());
    }

    #[test]
    fn novikov_plus_is_jordan() {
        for (a, b) in [(q(0), q(0)), (half(1), q(0)), (q(2), q(3))] {
            let n = osborn_laurent(LaurentVariant::Novikov, &a, &b, (-5, 5)).unwrap();
            let j = osborn_laurent(LaurentVariant::Jordan, &a, &b, (-5, 5)).unwrap();
            assert_eq!(n.plus().algebra().clone().with_name(""), j.algebra().clone().with_name(""));
        }
    }

    #[test]
    fn hole_removed() {
        let a = osborn_bar_laurent_plus(&half(1), (-8, 8)).unwrap();
        assert_eq!(a.index_of(-2, 0), None);
        assert_eq!(a.dim(), 16);
        assert!(osborn_bar_laurent_plus(&Q.from_i64(1).checked_div(&q(3)).unwrap(), (-3, 3)).is_err());
    }

    #[test]
    fn bar_novikov_closes_and_reduces() {
        for beta in [q(1), q(2), half(1)] {
            let a = osborn_bar_laurent_novikov(&beta, (-6, 6)).unwrap();
            assert_eq!(a.dim(), 12);
        }
        let zero = osborn_bar_laurent_novikov(&q(0), (-5, 5)).unwrap();
        let plain = osborn_bar_laurent_plus(&q(0), (-5, 5)).unwrap();
        let relabel = |a: &FiniteAlgebra| {
            a.structure_constants()
                .map(|(i, j, k, c)| (i, j, k, c.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(relabel(zero.algebra()), relabel(plain.algebra()));
    }

    #[test]
    fn integration_values() {
        let a = integration_product(12).unwrap();
        assert_eq!(a.basis_product_element(0, 0), Some(a.basis(1)));
        assert_eq!(
            a.basis_product_element(1, 1),
            Some(Element::from_pairs([(3, half(1))]))
        );
        assert_eq!(a.basis_product(6, 6), None);
        assert_eq!(a.drop_bounds(), (-1, -1));
    }

    #[test]
    fn tensor_with_abelian_is_zero() {
        let r = integration_product(6).unwrap();
        let t = tensor_leibniz(&abelian(2, Q), &r).unwrap();
        assert!(t.structure_constants().next().is_none());
        let t = tensor_leibniz(&nonabelian_lie2(Q), &r).unwrap();
        assert_eq!(t.dim(), 14);
    }
}
