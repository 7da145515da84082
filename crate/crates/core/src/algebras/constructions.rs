use super::{AlgError, Element, FiniteAlgebra};
use crate::exactnum::{binomial_in, binomial_mod_p, is_prime, Field, Matrix, Scalar};

fn dp_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x^({i})")).collect()
}

fn prime_power(p: u64, m: u32) -> Result<usize, AlgError> {
    p.checked_pow(m)
        .filter(|&q| q <= 1 << 12)
        .map(|q| q as usize)
        .ok_or_else(|| AlgError::InvalidParams(format!("{p}^{m} is too large")))
}

/// Divided power algebra `x^(i) x^(j) = C(i+j, j) x^(i+j)`.
///
/// For a prime `p` this is the `p^m`-dimensional algebra O_1(m); products
/// past `x^(p^m - 1)` vanish, which is checked against Lucas' theorem
/// rather than assumed. For `p = 0` it is the window `x^(0)..x^(m)` of the
/// infinite algebra over Q and products past the window are flagged.
pub fn divided_power(p: u64, m: u32) -> Result<FiniteAlgebra, AlgError> {
    if p == 0 {
        let n = m as usize + 1;
        return FiniteAlgebra::from_fn(
            format!("divided_power(0,N={m})"),
            Field::Rationals,
            dp_labels(n),
            |i, j| {
                if i + j >= n {
                    return Ok(None);
                }
                let c = binomial_in(Field::Rationals, (i + j) as u64, j as i64);
                Ok(Some(Element::from_pairs([(i + j, c)])))
            },
        );
    }
    if !is_prime(p) {
        return Err(AlgError::InvalidPrime(p));
    }
    if m == 0 {
        return Err(AlgError::InvalidParams("m must be positive".into()));
    }
    let field = Field::prime(p)?;
    let n = prime_power(p, m)?;
    FiniteAlgebra::from_fn(
        format!("divided_power({p},{m})"),
        field,
        dp_labels(n),
        |i, j| {
            let c = binomial_mod_p((i + j) as u64, j as u64, p);
            if i + j >= n {
                if c != 0 {
                    return Err(AlgError::InvalidParams(format!(
                        "C({}, {j}) is nonzero mod {p} past the truncation",
                        i + j
                    )));
                }
                return Ok(Some(Element::zero()));
            }
            Ok(Some(Element::from_pairs([(i + j, field.from_i64(c as i64))])))
        },
    )
}

/// Matrix of `D x^(i) = x^(i-1)`, `D x^(0) = 0`; column `j` is `D(b_j)`.
pub fn standard_derivation(field: Field, dim: usize) -> Matrix {
    let mut d = Matrix::zeros(field, dim, dim);
    for j in 1..dim {
        d[(j - 1, j)] = field.one();
    }
    d
}

/// Novikov product `a o b = D(a) b` for a derivation `D` of `a`.
pub fn derivation_novikov(a: &FiniteAlgebra, d: &Matrix) -> Result<FiniteAlgebra, AlgError> {
    a.check_derivation(d)?;
    FiniteAlgebra::from_fn(
        format!("novikov({})", a.name()),
        a.field(),
        a.labels().to_vec(),
        |i, j| {
            let da = a.apply_linear(d, &a.basis(i));
            window_product(a.multiply(&da, &a.basis(j)))
        },
    )
}

/// Symmetric product `a * b = D(a b)`, computed as `D(a) b + a D(b)` so
/// that on a window it is defined exactly where the plus algebra of
/// [`derivation_novikov`] is.
pub fn derivation_symmetric(a: &FiniteAlgebra, d: &Matrix) -> Result<FiniteAlgebra, AlgError> {
    a.check_derivation(d)?;
    FiniteAlgebra::from_fn(
        format!("symmetric({})", a.name()),
        a.field(),
        a.labels().to_vec(),
        |i, j| {
            let (x, y) = (a.basis(i), a.basis(j));
            let left = window_product(a.multiply(&a.apply_linear(d, &x), &y))?;
            let right = window_product(a.multiply(&x, &a.apply_linear(d, &y)))?;
            Ok(left.zip(right).map(|(l, r)| l.add(&r)))
        },
    )
}

fn window_product(r: Result<Element, AlgError>) -> Result<Option<Element>, AlgError> {
    match r {
        Ok(e) => Ok(Some(e)),
        Err(AlgError::OutOfWindow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn odd_prime_field(p: u64) -> Result<Field, AlgError> {
    if !is_prime(p) {
        return Err(AlgError::InvalidPrime(p));
    }
    if p <= 2 {
        return Err(AlgError::CharTooSmall(p));
    }
    Ok(Field::prime(p)?)
}

/// Novikov algebra `D(a) b + alpha x^(N) a b + beta x^(N-1) a b` on
/// O_1(m), `N = p^m - 1`.
pub fn osborn(alpha: &Scalar, beta: &Scalar, p: u64, m: u32) -> Result<FiniteAlgebra, AlgError> {
    let field = odd_prime_field(p)?;
    let (alpha, beta) = (field.coerce(alpha)?, field.coerce(beta)?);
    let o = divided_power(p, m)?;
    let n = o.dim() - 1;
    let d = standard_derivation(field, o.dim());
    let top = o.basis(n).scale(&alpha).add(&o.basis(n - 1).scale(&beta));
    FiniteAlgebra::from_fn(
        format!("osborn({alpha},{beta},{p},{m})"),
        field,
        o.labels().to_vec(),
        |i, j| {
            let (a, b) = (o.basis(i), o.basis(j));
            let mut out = o.multiply(&o.apply_linear(&d, &a), &b)?;
            out.add_assign(&o.multiply(&o.multiply(&top, &a)?, &b)?);
            Ok(Some(out))
        },
    )
}

/// The Jordan product of [`osborn`] written out coefficient by coefficient:
/// `C(i+j, j) x^(i+j-1) + 2 beta [i=j=0] x^(N-1)
///  + 2 (alpha [i=j=0] - beta [{i,j}={0,1}]) x^(N)`.
pub fn osborn_plus_explicit(
    alpha: &Scalar,
    beta: &Scalar,
    p: u64,
    m: u32,
) -> Result<FiniteAlgebra, AlgError> {
    let field = odd_prime_field(p)?;
    let (alpha, beta) = (field.coerce(alpha)?, field.coerce(beta)?);
    let dim = prime_power(p, m)?;
    let n = dim - 1;
    let two = field.from_i64(2);
    FiniteAlgebra::from_fn(
        format!("osborn_plus_explicit({alpha},{beta},{p},{m})"),
        field,
        dp_labels(dim),
        |i, j| {
            let mut e = Element::zero();
            if i + j >= 1 {
                let c = field.from_i64(binomial_mod_p((i + j) as u64, j as u64, p) as i64);
                if i + j - 1 < dim {
                    e.add_term(i + j - 1, &c);
                } else if !c.is_zero() {
                    return Err(AlgError::InvalidParams("binomial past truncation".into()));
                }
            }
            if i == 0 && j == 0 {
                e.add_term(n - 1, &(&two * &beta));
                e.add_term(n, &(&two * &alpha));
            }
            if i + j == 1 {
                e.add_term(n, &-(&two * &beta));
            }
            Ok(Some(e))
        },
    )
}

/// The codimension-one ideal `span{1 - 2 beta x^(N), x^(i) : 0 < i < N}`
/// of `plus(osborn(0, beta, p, m))`, as an algebra in that basis.
pub fn osborn_bar_finite(beta: &Scalar, p: u64, m: u32) -> Result<FiniteAlgebra, AlgError> {
    let field = odd_prime_field(p)?;
    let beta = field.coerce(beta)?;
    let parent = osborn(&field.zero(), &beta, p, m)?.plus();
    let n = parent.dim() - 1;
    let mut basis = vec![parent.basis(0).sub(&parent.basis(n).scale(&(&field.from_i64(2) * &beta)))];
    let mut labels = vec![format!("1-2*{beta}*x^({n})")];
    for i in 1..n {
        basis.push(parent.basis(i));
        labels.push(format!("x^({i})"));
    }
    parent.subalgebra(
        format!("osborn_bar_plus(0,{beta},{p},{m})"),
        &basis,
        labels,
    )
}

/// Spanning vectors of the ideal used by [`osborn_bar_finite`], in the
/// coordinates of `plus(osborn(0, beta, p, m))`.
pub fn osborn_bar_finite_span(beta: &Scalar, p: u64, m: u32) -> Result<Vec<Element>, AlgError> {
    let field = odd_prime_field(p)?;
    let beta = field.coerce(beta)?;
    let dim = prime_power(p, m)?;
    let n = dim - 1;
    let mut out = vec![Element::from_pairs([
        (0, field.one()),
        (n, -(&field.from_i64(2) * &beta)),
    ])];
    for i in 1..n {
        out.push(Element::basis(field, i));
    }
    Ok(out)
}

/// `e_i o e_j = e_j`.
pub fn gametic(n: usize, field: Field) -> Result<FiniteAlgebra, AlgError> {
    if n == 0 {
        return Err(AlgError::InvalidParams("dimension must be positive".into()));
    }
    FiniteAlgebra::from_fn(
        format!("gametic({n})"),
        field,
        (1..=n).map(|i| format!("e{i}")).collect(),
        |_, j| Ok(Some(Element::basis(field, j))),
    )
}

/// Basis image of `D^r x^(i)`.
fn lower(i: usize, r: usize) -> Option<usize> {
    i.checked_sub(r)
}

/// `D(x^(u) x^(v))` in O_1(m), as at most one term.
fn d_of_product(o: &FiniteAlgebra, u: usize, v: usize, times: usize) -> Element {
    let prod = o.basis_product_element(u, v).expect("O_1(m) has no overflow");
    let mut out = Element::zero();
    for (k, c) in prod.iter() {
        if let Some(t) = lower(k, times) {
            out.add_term(t, c);
        }
    }
    out
}

/// `a [] b = D(D^{p^k-1} a . D^{p^l-1} b + D^{p^l-1} a . D^{p^k-1} b)`
/// on O_1(m); for `k = l` the single term `D(D^{p^k-1} a . D^{p^k-1} b)`.
pub fn square_product(p: u64, k: u32, l: u32, m: u32) -> Result<FiniteAlgebra, AlgError> {
    if !is_prime(p) {
        return Err(AlgError::InvalidPrime(p));
    }
    if k > l || l >= m {
        return Err(AlgError::InvalidParams(format!(
            "need 0 <= k <= l < m, got k={k} l={l} m={m}"
        )));
    }
    let o = divided_power(p, m)?;
    let sk = prime_power(p, k)? - 1;
    let sl = prime_power(p, l)? - 1;
    FiniteAlgebra::from_fn(
        format!("square_product({p},{k},{l},{m})"),
        o.field(),
        o.labels().to_vec(),
        |i, j| {
            let mut out = Element::zero();
            if let (Some(u), Some(v)) = (lower(i, sk), lower(j, sl)) {
                out.add_assign(&d_of_product(&o, u, v, 1));
            }
            if k != l {
                if let (Some(u), Some(v)) = (lower(i, sl), lower(j, sk)) {
                    out.add_assign(&d_of_product(&o, u, v, 1));
                }
            }
            Ok(Some(out))
        },
    )
}

/// `a * b = D^{2^k+1}(D^{2^k-1} a . D^{2^k-1} b)` on O_1(m) over F_2.
pub fn p2_product(k: u32, m: u32) -> Result<FiniteAlgebra, AlgError> {
    if k == 0 || k >= m {
        return Err(AlgError::InvalidParams(format!(
            "need 0 < k < m, got k={k} m={m}"
        )));
    }
    let o = divided_power(2, m)?;
    let s = (1usize << k) - 1;
    FiniteAlgebra::from_fn(
        format!("p2_product({k},{m})"),
        o.field(),
        o.labels().to_vec(),
        |i, j| {
            let out = match (lower(i, s), lower(j, s)) {
                (Some(u), Some(v)) => d_of_product(&o, u, v, (1 << k) + 1),
                _ => Element::zero(),
            };
            Ok(Some(out))
        },
    )
}
