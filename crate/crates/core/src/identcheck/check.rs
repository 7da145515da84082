use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{validate_args, CompiledPoly};
use super::{CheckError, CheckOptions, CheckOutcome, CheckStats, Verdict, Witness};
use crate::algebras::{Element, FiniteAlgebra, GradedAlgebra};
use crate::exactnum::Field;
use crate::freepoly::{FreePoly, Monomial};
use crate::sweep::{decode, sweep, tuple_count, Probe, Strategy, Summary};

type Predictor<'a> = dyn Fn(&[usize]) -> bool + Sync + 'a;

/// Evaluates `poly` on every tuple of basis vectors drawn from `candidates`.
fn exhaustive(
    compiled: &CompiledPoly,
    alg: &FiniteAlgebra,
    candidates: &[usize],
    predict: Option<&Predictor<'_>>,
    strategy: Strategy,
) -> Summary<Witness> {
    let arity = compiled.arity();
    let field = alg.field();
    let probe = |index: u64| {
        let mut digits = vec![0; arity];
        decode(index, candidates.len(), arity, &mut digits);
        let idx: Vec<usize> = digits.iter().map(|&d| candidates[d]).collect();
        let args: Vec<Element> = idx.iter().map(|&i| Element::basis(field, i)).collect();
        match compiled.eval(alg, &args) {
            Ok(v) if v.is_zero() => Probe::Pass,
            Ok(value) => Probe::Fail(Witness {
                poly: compiled.poly.clone(),
                assignment: args,
                value,
            }),
            Err(_) => Probe::Skip {
                expected: !predict.is_some_and(|p| p(&idx)),
            },
        }
    };
    sweep(tuple_count(candidates.len(), arity), strategy, probe)
}

struct Tally {
    stats: CheckStats,
    witness: Option<Witness>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            stats: CheckStats {
                evaluated: 0,
                skipped: 0,
                unexpected_skips: 0,
                random_trials: 0,
            },
            witness: None,
        }
    }

    fn absorb(&mut self, s: Summary<Witness>) {
        self.stats.evaluated += s.evaluated;
        self.stats.skipped += s.skipped;
        self.stats.unexpected_skips += s.unexpected_skips;
        if self.witness.is_none() {
            self.witness = s.first_failure.map(|(_, w)| w);
        }
    }

    fn outcome(self, caveats: Vec<String>, window_relative: bool) -> CheckOutcome {
        let verdict = match self.witness {
            Some(w) => Verdict::Fails(w),
            None if self.stats.evaluated == 0 => Verdict::Inconclusive {
                skipped: self.stats.skipped,
            },
            None => Verdict::Holds,
        };
        CheckOutcome {
            verdict,
            stats: self.stats,
            caveats,
            window_relative,
        }
    }
}

fn char_caveat(poly: &FreePoly, field: Field) -> Option<String> {
    let p = field.characteristic();
    let d = poly.degree() as u64;
    (!poly.is_multilinear() && p != 0 && p <= d).then(|| {
        format!("characteristic {p} <= degree {d}: polarizations are weaker than the identity")
    })
}

fn uncompilable(e: CheckError) -> CheckOutcome {
    CheckOutcome {
        verdict: Verdict::Inconclusive { skipped: 0 },
        stats: Tally::new().stats,
        caveats: vec![format!("polynomial has no image over the field: {e}")],
        window_relative: false,
    }
}

/// Decides whether `poly` is an identity of `alg`.
///
/// Multilinear polynomials are checked on all basis tuples, which is
/// exhaustive. Otherwise every polarization is checked that way and the
/// polynomial itself is evaluated on `opts.trials` seeded random elements.
pub fn check_identity(poly: &FreePoly, alg: &FiniteAlgebra, opts: &CheckOptions) -> CheckOutcome {
    let all: Vec<usize> = (0..alg.dim()).collect();
    let mut tally = Tally::new();
    let mut caveats: Vec<String> = char_caveat(poly, alg.field()).into_iter().collect();
    for part in poly.polarize() {
        let compiled = match CompiledPoly::new(&part, alg.field()) {
            Ok(c) => c,
            Err(e) => return uncompilable(e),
        };
        tally.absorb(exhaustive(&compiled, alg, &all, None, opts.strategy));
        if tally.witness.is_some() {
            break;
        }
    }
    if tally.witness.is_none() && !poly.is_multilinear() {
        let random = check_random(poly, alg, opts);
        tally.stats.random_trials = random.stats.random_trials;
        tally.stats.evaluated += random.stats.evaluated;
        tally.stats.skipped += random.stats.skipped;
        if let Verdict::Fails(w) = random.verdict {
            tally.witness = Some(w);
        }
    }
    let windowed = tally.stats.skipped > 0;
    if windowed {
        caveats.push(format!(
            "{} assignments left the window and were skipped",
            tally.stats.skipped
        ));
    }
    tally.outcome(caveats, windowed)
}

fn random_element(rng: &mut ChaCha8Rng, field: Field, dim: usize) -> Element {
    let p = field.characteristic();
    Element::from_pairs((0..dim).map(|i| {
        let v = if p == 0 {
            rng.gen_range(-3i64..=3)
        } else {
            rng.gen_range(0..p) as i64
        };
        (i, field.from_i64(v))
    }))
}

/// Evaluates `poly` on `opts.trials` dense pseudo-random assignments.
pub fn check_random(poly: &FreePoly, alg: &FiniteAlgebra, opts: &CheckOptions) -> CheckOutcome {
    let compiled = match CompiledPoly::new(poly, alg.field()) {
        Ok(c) => c,
        Err(e) => return uncompilable(e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tally = Tally::new();
    for _ in 0..opts.trials {
        let args: Vec<Element> = (0..compiled.arity())
            .map(|_| random_element(&mut rng, alg.field(), alg.dim()))
            .collect();
        tally.stats.random_trials += 1;
        match compiled.eval(alg, &args) {
            Ok(v) if v.is_zero() => tally.stats.evaluated += 1,
            Ok(value) => {
                tally.stats.evaluated += 1;
                tally.witness = Some(Witness {
                    poly: poly.clone(),
                    assignment: args,
                    value,
                });
                break;
            }
            Err(_) => tally.stats.skipped += 1,
        }
    }
    tally.outcome(Vec::new(), false)
}

/// Leaf positions of every proper product subtree of every monomial.
fn product_subtrees(compiled: &CompiledPoly) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = compiled
        .terms
        .iter()
        .flat_map(|(m, _)| m.subtrees())
        .filter(|s| matches!(s, Monomial::Mul(..)))
        .map(Monomial::leaves)
        .collect();
    out.sort();
    out.dedup();
    out
}

fn predicted_in_window(g: &GradedAlgebra, subtrees: &[Vec<usize>], idx: &[usize]) -> bool {
    let (wlo, whi) = g.window();
    let (dmin, dmax) = g.drop_bounds();
    subtrees.iter().all(|leaves| {
        let s: i64 = leaves.iter().map(|&v| g.degree(idx[v])).sum();
        let r = leaves.len() as i64 - 1;
        s - r * dmax >= wlo && s - r * dmin <= whi
    })
}

/// True when the degrees of `indices` guarantee that every product formed
/// while evaluating `poly` stays inside the window of `g`.
pub fn compatible_assignment(g: &GradedAlgebra, poly: &FreePoly, indices: &[usize]) -> bool {
    let subtrees: Vec<Vec<usize>> = poly
        .terms()
        .flat_map(|(m, _)| m.subtrees())
        .filter(|s| matches!(s, Monomial::Mul(..)))
        .map(Monomial::leaves)
        .collect();
    predicted_in_window(g, &subtrees, indices)
}

/// Checks `poly` on all basis tuples with degrees in `range`, skipping
/// tuples whose evaluation leaves the window. The verdict is relative to
/// the window.
pub fn check_identity_windowed(
    poly: &FreePoly,
    g: &GradedAlgebra,
    range: (i64, i64),
) -> Result<CheckOutcome, CheckError> {
    let (wlo, whi) = g.window();
    if range.0 < wlo || range.1 > whi || range.0 > range.1 {
        return Err(CheckError::RangeOutsideWindow {
            lo: range.0,
            hi: range.1,
            wlo,
            whi,
        });
    }
    let candidates = g.indices_in_range(range.0, range.1);
    let mut tally = Tally::new();
    let mut caveats: Vec<String> = char_caveat(poly, g.field()).into_iter().collect();
    for part in poly.polarize() {
        let compiled = CompiledPoly::new(&part, g.field())?;
        if let Some(e) = candidates.first() {
            validate_args(g, &part, &vec![Element::basis(g.field(), *e); part.variables().len()])?;
        }
        let subtrees = product_subtrees(&compiled);
        let predict = |idx: &[usize]| predicted_in_window(g, &subtrees, idx);
        tally.absorb(exhaustive(
            &compiled,
            g,
            &candidates,
            Some(&predict),
            Strategy::default(),
        ));
        if tally.witness.is_some() {
            break;
        }
    }
    if tally.stats.unexpected_skips > 0 {
        caveats.push(format!(
            "{} degree-compatible assignments left the window",
            tally.stats.unexpected_skips
        ));
    }
    Ok(tally.outcome(caveats, true))
}
