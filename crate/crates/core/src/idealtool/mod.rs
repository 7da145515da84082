//! Ideal closure, simplicity certificates for finite algebras, and the
//! central-extension form on divided powers and Laurent polynomials.

mod psi;
mod subspace;

use serde_json::{json, Value};
use thiserror::Error;

use crate::algebras::{AlgError, Element, FiniteAlgebra};
use crate::exactnum::NumError;
use crate::sweep::{decode, sweep, Probe, Strategy};

pub use psi::{cyclic_sum, hole_coefficient_check, psi_form, HoleCheck, PsiVariant};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("{0} has products outside its window; simplicity is not certified for windows")]
    Windowed(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Largest number of projective points enumerated for a complete
/// simplicity certificate.
pub const MAX_PROJECTIVE_POINTS: u64 = 1 << 20;

/// Smallest subspace containing `generators` and closed under left and
/// right multiplication by every basis vector.
///
/// Breadth first: each round multiplies the vectors added in the previous
/// round by every basis vector, left then right.
pub fn ideal_closure(alg: &FiniteAlgebra, generators: &[Element]) -> Result<Subspace, IdealError> {
    let mut s = Subspace::zero(alg.field(), alg.dim());
    let mut frontier: Vec<Element> = generators
        .iter()
        .filter(|g| s.insert(g))
        .cloned()
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for i in 0..alg.dim() {
                let b = alg.basis(i);
                for prod in [alg.multiply(g, &b)?, alg.multiply(&b, g)?] {
                    if s.insert(&prod) {
                        next.push(prod);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(s)
}

pub fn is_ideal(alg: &FiniteAlgebra, s: &Subspace) -> Result<bool, IdealError> {
    for v in s.basis() {
        for i in 0..alg.dim() {
            let b = alg.basis(i);
            if !s.contains(&alg.multiply(&v, &b)?) || !s.contains(&alg.multiply(&b, &v)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Span of all products `b_i b_j`.
pub fn product_space(alg: &FiniteAlgebra) -> Result<Subspace, IdealError> {
    let mut s = Subspace::zero(alg.field(), alg.dim());
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let Some(e) = alg.basis_product_element(i, j) else {
                return Err(IdealError::Windowed(alg.name().to_string()));
            };
            s.insert(&e);
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    /// A nonzero proper ideal.
    NotSimple(Subspace),
    /// The product is identically zero.
    Degenerate(String),
}

impl SimplicityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            SimplicityVerdict::Simple => "simple",
            SimplicityVerdict::NotSimple(_) => "not simple",
            SimplicityVerdict::Degenerate(_) => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub generator: String,
    pub closure_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub algebra: String,
    pub dim: usize,
    pub verdict: SimplicityVerdict,
    /// Closures of the basis vectors.
    pub audit: Vec<AuditEntry>,
    /// Number of projective points whose closure was computed.
    pub points_checked: u64,
    /// Every nonzero element was covered (up to scaling), so `Simple` is
    /// a proof rather than evidence.
    pub complete: bool,
}

impl SimplicityCertificate {
    pub fn to_json(&self, labels: &[String]) -> Value {
        let mut v = json!({
            "algebra": self.algebra,
            "dim": self.dim,
            "verdict": self.verdict.name(),
            "complete": self.complete,
            "points_checked": self.points_checked,
            "audit": self.audit.iter().map(|a| json!({
                "generator": a.generator,
                "closure_dim": a.closure_dim,
            })).collect::<Vec<_>>(),
        });
        match &self.verdict {
            SimplicityVerdict::NotSimple(s) => {
                v["ideal"] = json!(s.format_basis(labels));
            }
            SimplicityVerdict::Degenerate(why) => v["reason"] = json!(why),
            SimplicityVerdict::Simple => {}
        }
        v
    }
}

/// Number of points of the projective space over `F_p^n`, if small enough
/// to enumerate.
fn projective_points(p: u64, n: usize) -> Option<u64> {
    let mut total: u64 = 0;
    for k in 0..n {
        total = total.checked_add(p.checked_pow((n - 1 - k) as u32)?)?;
    }
    (total <= MAX_PROJECTIVE_POINTS).then_some(total)
}

/// The `index`-th projective point: the leading nonzero coordinate is one,
/// points ordered by leading position then lexicographically.
fn projective_point(alg: &FiniteAlgebra, p: u64, mut index: u64) -> Element {
    let n = alg.dim();
    let field = alg.field();
    for k in 0..n {
        let count = p.pow((n - 1 - k) as u32);
        if index < count {
            let mut digits = vec![0; n - 1 - k];
            decode(index, p as usize, digits.len(), &mut digits);
            let mut e = Element::basis(field, k);
            for (t, &d) in digits.iter().enumerate() {
                e.add_term(k + 1 + t, &field.from_i64(d as i64));
            }
            return e;
        }
        index -= count;
    }
    unreachable!("index past the last projective point")
}

/// Decides simplicity of a finite algebra.
///
/// The closure of every basis vector is computed first. Over a small
/// prime field every nonzero element (up to scaling) is then tried, which
/// makes a `Simple` verdict complete; over Q only the basis closures are
/// available and the certificate is marked incomplete.
pub fn certify_simplicity(
    alg: &FiniteAlgebra,
    strategy: Strategy,
) -> Result<SimplicityCertificate, IdealError> {
    if alg.is_windowed() {
        return Err(IdealError::Windowed(alg.name().to_string()));
    }
    let n = alg.dim();
    let mut cert = SimplicityCertificate {
        algebra: alg.name().to_string(),
        dim: n,
        verdict: SimplicityVerdict::Simple,
        audit: Vec::new(),
        points_checked: 0,
        complete: false,
    };
    if n == 0 || product_space(alg)?.is_zero() {
        cert.verdict = SimplicityVerdict::Degenerate("the product is zero".into());
        cert.complete = true;
        return Ok(cert);
    }
    for i in 0..n {
        let c = ideal_closure(alg, &[alg.basis(i)])?;
        cert.audit.push(AuditEntry {
            generator: alg.label(i).to_string(),
            closure_dim: c.dim(),
        });
        if !c.is_whole() {
            cert.verdict = SimplicityVerdict::NotSimple(c);
            cert.complete = true;
            return Ok(cert);
        }
    }
    let p = alg.field().characteristic();
    let Some(total) = (p != 0).then(|| projective_points(p, n)).flatten() else {
        return Ok(cert);
    };
    let summary = sweep(total, strategy, |index| {
        let e = projective_point(alg, p, index);
        match ideal_closure(alg, &[e]) {
            Ok(c) if c.is_whole() => Probe::Pass,
            Ok(c) => Probe::Fail(c),
            Err(_) => Probe::Skip { expected: false },
        }
    });
    cert.points_checked = summary.evaluated;
    cert.complete = summary.skipped == 0;
    if let Some((_, c)) = summary.first_failure {
        cert.verdict = SimplicityVerdict::NotSimple(c);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{divided_power, osborn, osborn_bar_finite, osborn_bar_finite_span};
    use crate::exactnum::Field;

    fn os_plus(alpha: i64, beta: i64, p: u64, m: u32) -> FiniteAlgebra {
        let q = Field::Rationals;
        osborn(&q.from_i64(alpha), &q.from_i64(beta), p, m).unwrap().plus()
    }

    #[test]
    fn closure_basics() {
        let a = divided_power(3, 1).unwrap();
        assert!(ideal_closure(&a, &[a.basis(0)]).unwrap().is_whole());
        assert!(ideal_closure(&a, &[Element::zero()]).unwrap().is_zero());
        let c = ideal_closure(&a, &[a.basis(1)]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(is_ideal(&a, &c).unwrap());
    }

    #[test]
    fn alpha_zero_ideal() {
        let a = os_plus(0, 1, 3, 1);
        let c = ideal_closure(&a, &[a.basis(1)]).unwrap();
        assert_eq!(c.dim(), 2);
        let q = Field::Rationals;
        let span = osborn_bar_finite_span(&q.one(), 3, 1).unwrap();
        assert_eq!(c, Subspace::span(a.field(), a.dim(), span));
        assert!(is_ideal(&a, &c).unwrap());
    }

    #[test]
    fn certificates() {
        let s = certify_simplicity(&os_plus(1, 0, 3, 1), Strategy::default()).unwrap();
        assert_eq!(s.verdict, SimplicityVerdict::Simple);
        assert!(s.complete);
        assert_eq!(s.points_checked, 13);
        let ns = certify_simplicity(&os_plus(0, 1, 3, 1), Strategy::default()).unwrap();
        let SimplicityVerdict::NotSimple(w) = &ns.verdict else {
            panic!("expected a proper ideal");
        };
        assert_eq!(w.dim(), 2);
        let bar = osborn_bar_finite(&Field::Rationals.one(), 3, 1).unwrap();
        let b = certify_simplicity(&bar, Strategy::default()).unwrap();
        assert_eq!(b.verdict, SimplicityVerdict::Simple);
    }

    #[test]
    fn projective_enumeration_covers_each_line_once() {
        let a = divided_power(3, 1).unwrap();
        let total = projective_points(3, 3).unwrap();
        assert_eq!(total, 13);
        let pts: Vec<Element> = (0..total).map(|i| projective_point(&a, 3, i)).collect();
        for (i, x) in pts.iter().enumerate() {
            for y in &pts[i + 1..] {
                let s = Subspace::span(a.field(), 3, [x.clone()]);
                assert!(!s.contains(y));
            }
        }
    }
}
