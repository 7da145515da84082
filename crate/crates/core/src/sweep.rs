//! Exhaustive sweeps over an index range with a deterministic result.
//!
//! A sweep calls a pure probe on every index in `0..total` and merges the
//! outcomes. The reported failure is always the smallest failing index, so
//! sequential and parallel runs agree exactly.

/// How a sweep is scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Rayon data parallelism; falls back to sequential when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Strategy {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Outcome of probing one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe<W> {
    Pass,
    /// Not evaluable (e.g. it leaves a window). `expected` is false when
    /// the assignment was predicted to be evaluable.
    Skip { expected: bool },
    Fail(W),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary<W> {
    pub evaluated: u64,
    pub skipped: u64,
    pub unexpected_skips: u64,
    pub failures: u64,
    /// Smallest failing index and its witness.
    pub first_failure: Option<(u64, W)>,
}

impl<W> Summary<W> {
    fn empty() -> Summary<W> {
        Summary {
            evaluated: 0,
            skipped: 0,
            unexpected_skips: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(mut self, index: u64, probe: Probe<W>) -> Summary<W> {
        match probe {
            Probe::Pass => self.evaluated += 1,
            Probe::Skip { expected } => {
                self.skipped += 1;
                if !expected {
                    self.unexpected_skips += 1;
                }
            }
            Probe::Fail(w) => {
                self.evaluated += 1;
                self.failures += 1;
                match &self.first_failure {
                    Some((i, _)) if *i <= index => {}
                    _ => self.first_failure = Some((index, w)),
                }
            }
        }
        self
    }

    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn merge(mut self, other: Summary<W>) -> Summary<W> {
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
        self.unexpected_skips += other.unexpected_skips;
        self.failures += other.failures;
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Thread count requested through `TORTKEN_THREADS`, if any.
pub fn requested_threads() -> Option<usize> {
    std::env::var("TORTKEN_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n > 0)
}

#[cfg(feature = "parallel")]
fn pool() -> Option<&'static rayon::ThreadPool> {
    use std::sync::OnceLock;
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        requested_threads().and_then(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .ok()
        })
    })
    .as_ref()
}

/// Runs `probe` on every index of `0..total`.
pub fn sweep<W, F>(total: u64, strategy: Strategy, probe: F) -> Summary<W>
where
    W: Send,
    F: Fn(u64) -> Probe<W> + Sync + Send,
{
    match strategy {
        Strategy::Sequential => sequential(total, &probe),
        Strategy::Parallel => parallel(total, &probe),
    }
}

fn sequential<W, F: Fn(u64) -> Probe<W>>(total: u64, probe: &F) -> Summary<W> {
    (0..total).fold(Summary::empty(), |acc, i| acc.record(i, probe(i)))
}

#[cfg(feature = "parallel")]
fn parallel<W, F>(total: u64, probe: &F) -> Summary<W>
where
    W: Send,
    F: Fn(u64) -> Probe<W> + Sync,
{
    use rayon::prelude::*;
    let run = || {
        (0..total)
            .into_par_iter()
            .fold(Summary::empty, |acc, i| acc.record(i, probe(i)))
            .reduce(Summary::empty, Summary::merge)
    };
    match pool() {
        Some(p) => p.install(run),
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel<W, F: Fn(u64) -> Probe<W>>(total: u64, probe: &F) -> Summary<W> {
    sequential(total, probe)
}

/// Decodes `index` into `arity` digits in base `radix`, most significant
/// first, so that index order is lexicographic order on tuples.
pub fn decode(mut index: u64, radix: usize, arity: usize, out: &mut [usize]) {
    debug_assert_eq!(out.len(), arity);
    for slot in out.iter_mut().rev() {
        *slot = (index % radix as u64) as usize;
        index /= radix as u64;
    }
}

/// `radix^arity`, saturating.
pub fn tuple_count(radix: usize, arity: usize) -> u64 {
    (radix as u64).saturating_pow(arity as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let probe = |i: u64| match i % 7 {
            0 if i > 20 => Probe::Fail(i),
            3 => Probe::Skip { expected: i % 2 == 0 },
            _ => Probe::Pass,
        };
        let a = sweep(1000, Strategy::Sequential, probe);
        let b = sweep(1000, Strategy::Parallel, probe);
        assert_eq!(a, b);
        assert_eq!(a.first_failure, Some((21, 21)));
        assert_eq!(a.evaluated + a.skipped, 1000);
    }

    #[test]
    fn decoding_is_lexicographic() {
        let mut d = [0; 3];
        decode(5, 2, 3, &mut d);
        assert_eq!(d, [1, 0, 1]);
        assert_eq!(tuple_count(3, 4), 81);
    }
}
