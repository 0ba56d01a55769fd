//! Extension recursion versus filtering all `2^n` words.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::enumerate::{enumerate_pn_words, extend_pn_words, PnWordSet};
use crate::error::{Error, Result};
use crate::word::{is_prefix_normal, BinaryWord};

#[derive(Clone, Debug, Serialize)]
pub struct PathTiming {
    /// Words the path has to test.
    pub candidates: u64,
    pub count: usize,
    /// Best of the timed repetitions.
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub repetitions: usize,
    /// Every word of length `n` tested with the prefix-normality predicate.
    pub brute_filter: PathTiming,
    /// `PN(n)` from a given `PN(n-1)`: one append-1 test per word.
    pub extension_step: PathTiming,
    /// `PN(n)` from `PN(0)`, all levels.
    pub extension_from_scratch: PathTiming,
    pub counts_agree: bool,
    /// `brute_filter.seconds / extension_step.seconds`
    pub speedup: f64,
    /// `extension_step.candidates / 2^n`
    pub candidate_ratio: f64,
}

/// The brute side of the comparison with the fast predicate.
pub fn brute_filter(n: usize) -> PnWordSet {
    let words = (0..1u64 << n)
        .map(|mask| BinaryWord::from_mask(mask, n))
        .filter(is_prefix_normal)
        .collect();
    PnWordSet::from_sorted(n, words)
}

fn best_of<T>(repetitions: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..repetitions.max(1) {
        let start = Instant::now();
        let value = f();
        best = best.min(start.elapsed());
        out = Some(value);
    }
    (out.expect("at least one repetition"), best)
}

pub fn run_bench(n: usize, cap: usize, repetitions: usize) -> Result<BenchReport> {
    let cap = cap.min(63);
    if n == 0 || n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let previous = enumerate_pn_words(n - 1);

    let (brute, brute_time) = best_of(repetitions, || brute_filter(n));
    let (step, step_time) = best_of(repetitions, || extend_pn_words(&previous));
    let (scratch, scratch_time) = best_of(repetitions, || enumerate_pn_words(n));

    let scratch_candidates: u64 = (0..n).map(|k| enumerate_pn_words(k).len() as u64).sum();
    let total = 1u64 << n;
    let step_seconds = step_time.as_secs_f64().max(1e-9);
    Ok(BenchReport {
        n,
        repetitions: repetitions.max(1),
        brute_filter: PathTiming {
            candidates: total,
            count: brute.len(),
            seconds: brute_time.as_secs_f64(),
        },
        extension_step: PathTiming {
            candidates: previous.len() as u64,
            count: step.len(),
            seconds: step_time.as_secs_f64(),
        },
        extension_from_scratch: PathTiming {
            candidates: scratch_candidates,
            count: scratch.len(),
            seconds: scratch_time.as_secs_f64(),
        },
        counts_agree: brute == step && step == scratch,
        speedup: brute_time.as_secs_f64() / step_seconds,
        candidate_ratio: previous.len() as f64 / total as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::DEFAULT_WORD_CAP;

    #[test]
    fn small_runs_agree() {
        let r = run_bench(4, DEFAULT_WORD_CAP, 1).unwrap();
        assert!(r.counts_agree);
        assert_eq!(r.brute_filter.count, 8);
        assert_eq!(r.extension_step.count, 8);
        assert_eq!(r.extension_step.candidates, 5);

        let r = run_bench(1, DEFAULT_WORD_CAP, 1).unwrap();
        assert!(r.counts_agree);
        assert_eq!(r.brute_filter.count, 2);
        assert_eq!(r.extension_step.candidates, 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(run_bench(25, DEFAULT_WORD_CAP, 1).is_err());
        assert!(run_bench(0, DEFAULT_WORD_CAP, 1).is_err());
    }
}
