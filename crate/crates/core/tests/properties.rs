use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use tortken::algebras::{osborn, Element, FiniteAlgebra};
use tortken::exactnum::{binomial, binomial_mod_p, Field, Matrix, Scalar};
use tortken::freepoly::{lookup, FreePoly, Monomial};
use tortken::idealtool::{ideal_closure, is_ideal};
use tortken::identcheck::{check_identity, CheckOptions};
use tortken::sweep::{sweep, Probe, Strategy as SweepStrategy};

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        proptest::sample::select(&PRIMES[..]).prop_map(|p| Field::prime(p).unwrap()),
    ]
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (field(), 1usize..5, 1usize..6).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r).prop_map(
            move |rows| {
                let rows: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|row| row.iter().map(|&x| f.from_i64(x)).collect())
                    .collect();
                Matrix::from_rows(f, rows).unwrap()
            },
        )
    })
}

fn monomial(max_var: usize) -> impl Strategy<Value = Monomial> {
    let leaf = (0..max_var).prop_map(Monomial::var);
    leaf.prop_recursive(4, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Monomial::mul(l, r))
    })
}

fn swap_everywhere(m: &Monomial) -> Monomial {
    match m {
        Monomial::Var(_) => m.clone(),
        Monomial::Mul(l, r) => Monomial::mul(swap_everywhere(r), swap_everywhere(l)),
    }
}

/// Small Jordan Osborn algebras over F_3 or F_5.
fn osborn_plus() -> impl Strategy<Value = FiniteAlgebra> {
    (0i64..3, 0i64..3, prop_oneof![Just(3u64), Just(5u64)]).prop_map(|(a, b, p)| {
        let q = Field::Rationals;
        osborn(&q.from_i64(a), &q.from_i64(b), p, 1).unwrap().plus()
    })
}

fn element(alg: &FiniteAlgebra, coeffs: &[i64]) -> Element {
    let f = alg.field();
    let dense: Vec<Scalar> = (0..alg.dim())
        .map(|i| f.from_i64(coeffs.get(i).copied().unwrap_or(0)))
        .collect();
    Element::from_dense(&dense)
}

proptest! {
    #[test]
    fn pascal_rule(n in 1u64..60, k in 1i64..60) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    #[test]
    fn lucas_agrees_with_big_integers(n in 0u64..400, k in 0u64..400, p in proptest::sample::select(&PRIMES[..])) {
        let exact = binomial(n, k as i64) % BigInt::from(p);
        prop_assert_eq!(BigInt::from(binomial_mod_p(n, k, p)), exact);
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let r = m.rref();
        let again = r.matrix.rref();
        prop_assert_eq!(&again.matrix, &r.matrix);
        prop_assert_eq!(again.rank, r.rank);
    }

    #[test]
    fn nullspace_is_annihilated(m in matrix()) {
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.len(), m.cols());
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn scalars_round_trip_through_text(f in field(), n in -1000i64..1000, d in 1i64..50) {
        let q = BigRational::new(n.into(), d.into());
        if let Ok(s) = f.from_rational(&q) {
            prop_assert_eq!(f.parse_scalar(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn matrices_round_trip_through_json(m in matrix()) {
        let back = Matrix::from_json(m.field(), &m.to_json()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn canonical_form_picks_one_orbit_representative(m in monomial(4)) {
        let c = m.canonical_commutative();
        prop_assert_eq!(c.canonical_commutative(), c.clone());
        prop_assert_eq!(swap_everywhere(&m).canonical_commutative(), c.clone());
        prop_assert_eq!(c.degree(), m.degree());
    }

    #[test]
    fn polarizations_are_multilinear(m in monomial(3)) {
        let vars = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let p = FreePoly::monomial(vars, m.clone(), BigRational::one());
        for part in p.polarize() {
            prop_assert!(part.is_multilinear());
            prop_assert_eq!(part.degree(), m.degree());
        }
    }

    #[test]
    fn closure_is_monotone_and_idempotent(
        alg in osborn_plus(),
        x in proptest::collection::vec(-2i64..3, 5),
        y in proptest::collection::vec(-2i64..3, 5),
    ) {
        let (ex, ey) = (element(&alg, &x), element(&alg, &y));
        let cx = ideal_closure(&alg, std::slice::from_ref(&ex)).unwrap();
        let cxy = ideal_closure(&alg, &[ex, ey]).unwrap();
        prop_assert!(cx.is_subspace_of(&cxy));
        prop_assert!(is_ideal(&alg, &cx).unwrap());
        prop_assert_eq!(ideal_closure(&alg, &cx.basis()).unwrap(), cx);
    }

    #[test]
    fn strategies_agree(total in 0u64..5000, modulus in 1u64..200, skip in 1u64..50) {
        let probe = |i: u64| {
            if i % skip == 0 {
                Probe::Skip { expected: i % 2 == 0 }
            } else if i % modulus == modulus - 1 {
                Probe::Fail(i * 3)
            } else {
                Probe::Pass
            }
        };
        let s = sweep(total, SweepStrategy::Sequential, probe);
        let p = sweep(total, SweepStrategy::Parallel, probe);
        prop_assert_eq!(s.evaluated, p.evaluated);
        prop_assert_eq!(s.skipped, p.skipped);
        prop_assert_eq!(s.unexpected_skips, p.unexpected_skips);
        prop_assert_eq!(s.failures, p.failures);
        prop_assert_eq!(s.first_failure, p.first_failure);
    }

    /// A Tortken algebra with a left unit is commutative and associative;
    /// one with a right unit satisfies the right unit law.
    #[test]
    fn unit_implications_on_random_commutative(seed in 0u64..400, p in prop_oneof![Just(2u64), Just(3u64)]) {
        let alg = FiniteAlgebra::random_commutative(2, Field::prime(p).unwrap(), seed);
        let opts = CheckOptions::default();
        let tortken = &lookup("tortken").unwrap().poly;
        if check_identity(tortken, &alg, &opts).verdict.holds() {
            let preds = alg.predicates();
            if preds.has_left_unit {
                prop_assert!(preds.is_associative && preds.is_commutative);
            }
            if preds.has_right_unit {
                let law = &lookup("right_unit_law").unwrap().poly;
                prop_assert!(check_identity(law, &alg, &opts).verdict.holds());
            }
        }
    }
}

#[test]
fn binomial_edge_values() {
    assert_eq!(binomial(10, -1), BigInt::from(0));
    assert_eq!(binomial(10, 11), BigInt::from(0));
    assert_eq!(binomial(60, 30).to_u64(), Some(118264581564861424));
}
