use std::collections::HashMap;

use super::CheckError;
use crate::algebras::{Element, FiniteAlgebra};
use crate::exactnum::{Field, Scalar};
use crate::freepoly::{FreePoly, Monomial};

/// A polynomial with coefficients already mapped into a field.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    pub poly: FreePoly,
    pub terms: Vec<(Monomial, Scalar)>,
}

impl CompiledPoly {
    pub fn new(poly: &FreePoly, field: Field) -> Result<CompiledPoly, CheckError> {
        let mut terms = Vec::with_capacity(poly.num_terms());
        for (m, c) in poly.terms() {
            let c = field.from_rational(c)?;
            if !c.is_zero() {
                terms.push((m.clone(), c));
            }
        }
        Ok(CompiledPoly {
            poly: poly.clone(),
            terms,
        })
    }

    pub fn arity(&self) -> usize {
        self.poly.variables().len()
    }

    /// Evaluates every monomial, sharing equal subtrees.
    pub fn eval(&self, alg: &FiniteAlgebra, args: &[Element]) -> Result<Element, CheckError> {
        let mut cache: HashMap<&Monomial, Element> = HashMap::new();
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let v = eval_monomial(m, alg, args, &mut cache)?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }
}

fn eval_monomial<'m>(
    m: &'m Monomial,
    alg: &FiniteAlgebra,
    args: &[Element],
    cache: &mut HashMap<&'m Monomial, Element>,
) -> Result<Element, CheckError> {
    match m {
        Monomial::Var(i) => Ok(args[*i].clone()),
        Monomial::Mul(l, r) => {
            if let Some(v) = cache.get(m) {
                return Ok(v.clone());
            }
            let a = eval_monomial(l, alg, args, cache)?;
            let b = eval_monomial(r, alg, args, cache)?;
            let v = if a.is_zero() || b.is_zero() {
                Element::zero()
            } else {
                alg.multiply(&a, &b)?
            };
            cache.insert(m, v.clone());
            Ok(v)
        }
    }
}

pub(crate) fn validate_args(
    alg: &FiniteAlgebra,
    poly: &FreePoly,
    args: &[Element],
) -> Result<(), CheckError> {
    if args.len() < poly.variables().len() {
        return Err(CheckError::MissingVariable(
            poly.variables()[args.len()].clone(),
        ));
    }
    if args.len() > poly.variables().len() {
        return Err(CheckError::InvalidSubstitution(format!(
            "{} values for {} variables",
            args.len(),
            poly.variables().len()
        )));
    }
    for e in args {
        for (i, c) in e.iter() {
            if i >= alg.dim() {
                return Err(CheckError::FieldMismatch(format!(
                    "basis index {i} but dimension is {}",
                    alg.dim()
                )));
            }
            if c.field() != alg.field() {
                return Err(CheckError::FieldMismatch(format!(
                    "coefficient {c} is not in {}",
                    alg.field()
                )));
            }
        }
    }
    Ok(())
}

/// Value of `poly` at `args` (one element per variable, in order).
pub fn evaluate(
    poly: &FreePoly,
    alg: &FiniteAlgebra,
    args: &[Element],
) -> Result<Element, CheckError> {
    validate_args(alg, poly, args)?;
    CompiledPoly::new(poly, alg.field())?.eval(alg, args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::divided_power;
    use crate::freepoly::{lookup, parse};

    #[test]
    fn product_law() {
        let a = divided_power(3, 1).unwrap();
        let f = parse("t1*t2", &["t1", "t2"]).unwrap();
        let x1 = a.basis(1);
        let v = evaluate(&f, &a, &[x1.clone(), x1]).unwrap();
        assert_eq!(v, a.basis(2).scale(&Field::prime(3).unwrap().from_i64(2)));
    }

    #[test]
    fn commutativity_vanishes() {
        let a = divided_power(5, 1).unwrap();
        let f = &lookup("commutativity").unwrap().poly;
        let v = evaluate(f, &a, &[a.basis(1), a.basis(3)]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn argument_errors() {
        let a = divided_power(3, 1).unwrap();
        let f = parse("t1*t2", &["t1", "t2"]).unwrap();
        assert!(matches!(
            evaluate(&f, &a, &[a.basis(0)]),
            Err(CheckError::MissingVariable(_))
        ));
        let q = Element::basis(Field::Rationals, 0);
        assert!(matches!(
            evaluate(&f, &a, &[q.clone(), q]),
            Err(CheckError::FieldMismatch(_))
        ));
    }
}
