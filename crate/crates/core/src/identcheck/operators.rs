use super::CheckError;
use crate::algebras::{Element, FiniteAlgebra};
use crate::exactnum::Matrix;

const SIGNED_PERMUTATIONS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([0, 2, 1], -1),
    ([1, 0, 2], -1),
    ([2, 1, 0], -1),
];

/// Matrix of `sum sign(s) r_{a_s(1)} r_{a_s(2)} r_{a_s(3)}`, where
/// `(b) r_a = b a` and operators compose left to right. Column `j` is the
/// image of basis vector `j`.
pub fn alternating_right_operator(
    alg: &FiniteAlgebra,
    a: [&Element; 3],
) -> Result<Matrix, CheckError> {
    let field = alg.field();
    let dim = alg.dim();
    let mut m = Matrix::zeros(field, dim, dim);
    for j in 0..dim {
        let mut col = Element::zero();
        for (perm, sign) in SIGNED_PERMUTATIONS {
            let mut b = alg.basis(j);
            for &k in &perm {
                b = alg.multiply(&b, a[k])?;
            }
            col.add_scaled(&b, &field.from_i64(sign));
        }
        for (i, c) in col.iter() {
            m[(i, j)] = c.clone();
        }
    }
    Ok(m)
}

/// True iff the alternating sum of composed right multiplications by
/// `a1, a2, a3` is the zero operator.
pub fn operator_identity_check(
    alg: &FiniteAlgebra,
    a1: &Element,
    a2: &Element,
    a3: &Element,
) -> Result<bool, CheckError> {
    Ok(alternating_right_operator(alg, [a1, a2, a3])?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::osborn;
    use crate::exactnum::Field;

    #[test]
    fn novikov_right_operators_alternate_to_zero() {
        let q = Field::Rationals;
        let a = osborn(&q.one(), &q.zero(), 3, 1).unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                    assert!(operator_identity_check(&a, &x, &y, &z).unwrap());
                }
            }
        }
    }
}
