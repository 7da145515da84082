//! The degree-4 analysis of the Jordan product `D(ab)` on divided powers:
//! the substitution matrix, its fundamental solutions, the small 3x3
//! system, and the `Tortken'` relation in characteristic 3.

use num_bigint::BigInt;
use num_traits::Signed;

use super::space::{field_coordinates, in_nullspace};
use super::{
    check_identity, CheckError, CheckOptions, CheckOutcome, CheckStats, IdentitySpaceReport,
    Verdict, Witness,
};
use crate::algebras::{
    derivation_symmetric, divided_power, standard_derivation, Element, FiniteAlgebra,
};
use crate::exactnum::{Field, Matrix, Scalar};
use crate::freepoly::{lookup, MonomialBasis};
use crate::identcheck::eval::CompiledPoly;
use crate::sweep::{decode, sweep, tuple_count, Probe, Strategy};

/// Degree bound of the char-0 divided power window used for the matrix.
const WINDOW: u64 = 5;

/// The published basis of solutions of the 10x15 system, in `mu` order.
pub const FUNDAMENTAL_SOLUTIONS: [[i64; 15]; 5] = [
    [1, 0, -1, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0, 1],
    [1, 0, -1, 0, 1, 1, -1, -1, 0, -1, 0, 0, 0, 1, 0],
    [0, 1, -1, -1, 1, 1, 0, -1, 0, 0, -1, 0, 1, 0, 0],
    [0, 1, -1, 0, 0, 1, 0, -1, 0, -1, 0, 1, 0, 0, 0],
    [0, 0, 0, -1, 1, 1, -1, -1, 1, 0, 0, 0, 0, 0, 0],
];

/// Free parameters `mu9, mu12, mu13, mu14, mu15` (0-based columns).
pub const FREE_COLUMNS: [usize; 5] = [8, 11, 12, 13, 14];

/// Catalog polynomials matching the free parameters, in order.
const F_NAMES: [&str; 5] = ["f1", "f2", "f3", "f4", "f5"];

/// The full `mu` vector determined by the free parameters.
pub fn fundamental_relations(free: &[Scalar; 5]) -> Vec<Scalar> {
    let [m9, m12, m13, m14, m15] = free;
    let sum = |xs: &[&Scalar]| {
        xs.iter()
            .skip(1)
            .fold(xs[0].clone(), |acc, x| &acc + *x)
    };
    let neg = |s: Scalar| -&s;
    vec![
        sum(&[m14, m15]),
        sum(&[m12, m13]),
        neg(sum(&[m12, m13, m14, m15])),
        neg(sum(&[m13, m9])),
        sum(&[m13, m14, m15, m9]),
        sum(&[m12, m13, m14, m9]),
        neg(sum(&[m14, m9])),
        neg(sum(&[m12, m13, m14, m15, m9])),
        m9.clone(),
        neg(sum(&[m12, m14])),
        neg(sum(&[m13, m15])),
        m12.clone(),
        m13.clone(),
        m14.clone(),
        m15.clone(),
    ]
}

/// The algebra, monomial basis and substitutions of the degree-4 system.
#[derive(Clone, Debug)]
pub struct Deg4Setup {
    pub algebra: FiniteAlgebra,
    pub basis: MonomialBasis,
    pub substitutions: Vec<Vec<Element>>,
}

/// `a * b = D(ab)` on the char-0 divided powers `x^(0..5)`, the ordered
/// 15-monomial commutative basis, and the ten graded substitutions.
pub fn deg4_setup() -> Deg4Setup {
    let o = divided_power(0, WINDOW as u32).expect("char 0 window");
    let d = standard_derivation(Field::Rationals, o.dim());
    let algebra = derivation_symmetric(&o, &d)
        .expect("standard derivation")
        .with_name("D(ab) on x^(0..5)");
    let (one, x, x2, x3) = (0, 1, 2, 3);
    let raw: [[usize; 4]; 10] = [
        [x, x, x, one],
        [x, x, one, x],
        [x, one, x, x],
        [one, x, x, x],
        [one, one, x, x2],
        [one, one, x2, x],
        [one, x2, x, one],
        [x, one, one, x2],
        [x2, one, one, x],
        [one, one, one, x3],
    ];
    let substitutions = raw
        .iter()
        .map(|t| t.iter().map(|&i| algebra.basis(i)).collect())
        .collect();
    Deg4Setup {
        algebra,
        basis: MonomialBasis::deg4_ordered(),
        substitutions,
    }
}

/// The individual checks behind [`verify_fundamental_solutions`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalChecks {
    pub solutions_in_nullspace: bool,
    pub nullity_is_five: bool,
    pub relations_hold: bool,
    pub f_in_nullspace: bool,
    pub f2_is_renamed_tortken: bool,
}

impl FundamentalChecks {
    pub fn all(&self) -> bool {
        self.solutions_in_nullspace
            && self.nullity_is_five
            && self.relations_hold
            && self.f_in_nullspace
            && self.f2_is_renamed_tortken
    }

    pub fn lines(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("published solutions lie in the nullspace", self.solutions_in_nullspace),
            ("nullspace dimension is 5", self.nullity_is_five),
            ("relations hold for the canonical basis", self.relations_hold),
            ("f1..f5 lie in the nullspace", self.f_in_nullspace),
            ("f2 = tortken(t1,t3,t2,t4)", self.f2_is_renamed_tortken),
        ]
    }
}

pub fn verify_fundamental_solutions(
    report: &IdentitySpaceReport,
) -> Result<FundamentalChecks, CheckError> {
    let basis = MonomialBasis::deg4_ordered();
    if report.basis_name != basis.name || report.matrix.cols() != basis.len() {
        return Err(CheckError::ReportMismatch(format!(
            "expected basis {} with {} columns, found {} with {}",
            basis.name,
            basis.len(),
            report.basis_name,
            report.matrix.cols()
        )));
    }
    let field = report.field;
    let m = &report.matrix;
    let mut solutions_in_nullspace = true;
    for s in &FUNDAMENTAL_SOLUTIONS {
        let v: Vec<Scalar> = s.iter().map(|&c| field.from_i64(c)).collect();
        solutions_in_nullspace &= in_nullspace(m, &v)?;
    }
    let nullity_is_five = report.nullspace.len() == 5;

    let relations_hold = report.free_columns() == FREE_COLUMNS
        && report.nullspace.iter().all(|v| {
            let free = FREE_COLUMNS.map(|c| v[c].clone());
            fundamental_relations(&free) == *v
        });

    let mut f_in_nullspace = true;
    for name in F_NAMES {
        let entry = lookup(name).expect("catalog entry");
        match field_coordinates(&entry.poly, &basis, field) {
            Some(v) => f_in_nullspace &= in_nullspace(m, &v)?,
            None => f_in_nullspace = false,
        }
    }

    let tortken = &lookup("tortken").expect("catalog entry").poly;
    let f2 = &lookup("f2").expect("catalog entry").poly;
    let renamed = tortken.substitute_vars(&[0, 2, 1, 3], f2.variables().to_vec());
    let f2_is_renamed_tortken = matches!(
        (basis.coordinates(&renamed), basis.coordinates(f2)),
        (Ok(a), Ok(b)) if a == b
    );

    Ok(FundamentalChecks {
        solutions_in_nullspace,
        nullity_is_five,
        relations_hold,
        f_in_nullspace,
        f2_is_renamed_tortken,
    })
}

/// Coefficient matrices of `sum (i+j+2) l1 + (j+s+2) l2 + (s+i+2) l3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSystem {
    pub matrix: Matrix,
    pub det_abs: BigInt,
    pub mod3_matrix: Matrix,
    pub mod3_nonsingular: bool,
}

fn coefficient_rows(triples: &[(i64, i64, i64)]) -> Vec<[i64; 3]> {
    triples
        .iter()
        .map(|&(i, j, s)| [i + j + 2, j + s + 2, s + i + 2])
        .collect()
}

pub fn cyclic_coefficient_system() -> CyclicSystem {
    let rows = coefficient_rows(&[(1, 2, 3), (2, 3, 1), (3, 1, 2)]);
    let refs: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
    let matrix = Matrix::from_i64_rows(Field::Rationals, &refs);
    let det = matrix.det().expect("square");
    let det_abs = det.as_rational().expect("rational").numer().abs();
    let rows3 = coefficient_rows(&[(1, 1, 0), (1, 0, 1), (0, 1, 1)]);
    let refs3: Vec<&[i64]> = rows3.iter().map(|r| &r[..]).collect();
    let f3 = Field::prime(3).expect("prime");
    let mod3_matrix = Matrix::from_i64_rows(f3, &refs3);
    let mod3_nonsingular = !mod3_matrix.det().expect("square").is_zero();
    CyclicSystem {
        matrix,
        det_abs,
        mod3_matrix,
        mod3_nonsingular,
    }
}

/// Outcomes for `Tortken'` under `a * b = D(ab)` on `O_1(m)`, `p = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TortkenPrimeReport {
    pub m: u32,
    pub algebra: FiniteAlgebra,
    /// `Tortken'` as an identity.
    pub identity: CheckOutcome,
    /// `Tortken'(a,b,c,d) - 2 D^3(abcd) = 0` on all basis tuples.
    pub relation: CheckOutcome,
}

pub fn tortken_prime_relation(m: u32) -> Result<TortkenPrimeReport, CheckError> {
    let f3 = Field::prime(3)?;
    let o = divided_power(3, m)?;
    let d = standard_derivation(f3, o.dim());
    let star = derivation_symmetric(&o, &d)?.with_name(format!("D(ab) on O_1({m}), p=3"));
    let poly = &lookup("tortken_prime").expect("catalog entry").poly;
    let identity = check_identity(poly, &star, &CheckOptions::default());

    let compiled = CompiledPoly::new(poly, f3)?;
    let dim = o.dim();
    let two = f3.from_i64(2);
    let probe = |index: u64| {
        let mut idx = [0; 4];
        decode(index, dim, 4, &mut idx);
        let args: Vec<Element> = idx.iter().map(|&i| o.basis(i)).collect();
        let lhs = compiled.eval(&star, &args).expect("finite algebra");
        let mut prod = args[0].clone();
        for a in &args[1..] {
            prod = o.multiply(&prod, a).expect("finite algebra");
        }
        for _ in 0..3 {
            prod = o.apply_linear(&d, &prod);
        }
        let value = lhs.sub(&prod.scale(&two));
        if value.is_zero() {
            Probe::Pass
        } else {
            Probe::Fail(Witness {
                poly: poly.clone(),
                assignment: args,
                value,
            })
        }
    };
    let summary = sweep(tuple_count(dim, 4), Strategy::default(), probe);
    let relation = CheckOutcome {
        verdict: match summary.first_failure {
            Some((_, w)) => Verdict::Fails(w),
            None => Verdict::Holds,
        },
        stats: CheckStats {
            evaluated: summary.evaluated,
            skipped: 0,
            unexpected_skips: 0,
            random_trials: 0,
        },
        caveats: Vec::new(),
        window_relative: false,
    };
    Ok(TortkenPrimeReport {
        m,
        algebra: star,
        identity,
        relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_reproduce_published_solutions() {
        let q = Field::Rationals;
        for s in &FUNDAMENTAL_SOLUTIONS {
            let v: Vec<Scalar> = s.iter().map(|&c| q.from_i64(c)).collect();
            let free = FREE_COLUMNS.map(|c| v[c].clone());
            assert_eq!(fundamental_relations(&free), v);
        }
    }

    #[test]
    fn deg4_system_rank_and_checks() {
        let s = deg4_setup();
        let r = crate::identcheck::identity_space(4, &s.algebra, &s.basis, &s.substitutions)
            .unwrap();
        let first: Vec<String> = r.matrix.row(0).iter().map(Scalar::to_string).collect();
        assert_eq!(first.join(" "), "2 2 2 4 2 4 2 1 1 4 2 1 1 1 1");
        assert_eq!(r.rank, 10);
        assert!(verify_fundamental_solutions(&r).unwrap().all());
    }

    #[test]
    fn small_system() {
        let l = cyclic_coefficient_system();
        assert_eq!(l.det_abs, BigInt::from(54));
        assert!(l.mod3_nonsingular);
    }
}
