use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, NumError, Scalar};

/// Exact binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k) mod p` by Lucas' theorem, as a residue in `[0, p)`.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let c = binomial(nd, kd as i64) % BigInt::from(p);
        let c: u64 = c.try_into().expect("digit binomial residue fits in u64");
        acc = ((acc as u128 * c as u128) % p as u128) as u64;
        n /= p;
        k /= p;
    }
    acc
}

/// `C(n, k)` as an element of `field`: exact over Q, via Lucas over F_p.
pub fn binomial_in(field: Field, n: u64, k: i64) -> Scalar {
    match field {
        Field::Rationals => field.from_bigint(&binomial(n, k)),
        Field::Prime(p) => {
            if k < 0 || k as u64 > n {
                field.zero()
            } else {
                field.from_i64(binomial_mod_p(n, k as u64, p) as i64)
            }
        }
    }
}

/// Exponent of `p` in `C(n, k)`: the number of borrows when subtracting
/// `k` from `n` in base `p` (Kummer).
pub fn p_adic_valuation_binomial(n: u64, k: u64, p: u64) -> u32 {
    assert!(k <= n);
    let (mut a, mut b) = (n, k);
    let mut borrow = 0u64;
    let mut count = 0;
    while a > 0 || b > 0 {
        let da = a % p;
        let db = b % p + borrow;
        if db > da {
            borrow = 1;
            count += 1;
        } else {
            borrow = 0;
        }
        a /= p;
        b /= p;
    }
    count
}

/// `C(p^m, i) / p` reduced mod `p`, for `0 < i < p^m`.
pub fn binom_p_quotient(p: u64, m: u32, i: u64) -> Result<Scalar, NumError> {
    let field = Field::prime(p)?;
    let top = p.checked_pow(m).ok_or(NumError::OutOfRange)?;
    if m == 0 || i == 0 || i >= top {
        return Err(NumError::OutOfRange);
    }
    if p_adic_valuation_binomial(top, i, p) == 0 {
        return Err(NumError::OutOfRange);
    }
    let (quot, rem) = binomial(top, i as i64).div_rem(&BigInt::from(p));
    debug_assert!(rem.is_zero());
    Ok(field.from_bigint(&quot))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(2, 1), BigInt::from(2));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(binomial_mod_p(6, 3, 3), 2);
    }

    #[test]
    fn p_quotients() {
        let f3 = Field::Prime(3);
        let f2 = Field::Prime(2);
        assert_eq!(binom_p_quotient(3, 1, 1).unwrap(), f3.from_i64(1));
        // C(9,3) = 84, 84 / 3 = 28
        assert_eq!(binom_p_quotient(3, 2, 3).unwrap(), f3.from_i64(1));
        // C(4,2) = 6, 6 / 2 = 3
        assert_eq!(binom_p_quotient(2, 2, 2).unwrap(), f2.from_i64(1));
        assert_eq!(binom_p_quotient(3, 2, 0), Err(NumError::OutOfRange));
        assert_eq!(binom_p_quotient(3, 2, 9), Err(NumError::OutOfRange));
        assert!(binom_p_quotient(4, 1, 1).is_err());
    }

    #[test]
    fn kummer_matches_direct_valuation() {
        for p in [2u64, 3, 5] {
            for n in 0..60u64 {
                for k in 0..=n {
                    let mut c = binomial(n, k as i64);
                    let mut v = 0;
                    while !c.is_zero() && (&c % BigInt::from(p)).is_zero() {
                        c /= BigInt::from(p);
                        v += 1;
                    }
                    assert_eq!(p_adic_valuation_binomial(n, k, p), v, "p={p} n={n} k={k}");
                }
            }
        }
    }
}
