//! Exhaustive small-case audit of the statements about chains, generators
//! and extensions.
//!
//! Every statement is checked on all cases up to a configured length and
//! reported as `PASS` or `FAIL` (with the first counterexample). The
//! candidate-window counts are reported as an `OBSERVATION` next to the
//! `(n^2 - 2n)/8` value, without a verdict.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::chain::{
    chain, compose, is_pn_generator, necessary_conditions, parity, Generator, Parity,
};
use crate::enumerate::{
    brute_force_pn_generators_capped, brute_force_pn_words_capped, extend_generators,
    valid_insert_positions,
    words_from_generators, Enumerator, GeneratorSet, ScanMode, DEFAULT_GENERATOR_CAP,
    DEFAULT_WORD_CAP,
};
use crate::error::{Error, Result};
use crate::extension::{counting_check, extendable_parent, is_extension_critical, palindrome_rule};
use crate::swap::{
    count_candidate_windows, find_violating_factor_with, swap_keeps_pn, swap_keeps_pn_oracle,
    SwapContext, WindowFilter,
};
use crate::word::is_prefix_normal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Observation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Observation => "OBSERVATION",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: &'static str,
    pub statement: &'static str,
    pub range: String,
    pub verdict: Verdict,
    pub cases: usize,
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub claims: Vec<ClaimResult>,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AuditConfig {
    /// Generator statements run for `1 <= n <= generator_n_max`.
    pub generator_n_max: usize,
    /// Word statements run for `0 <= n <= word_n_max`.
    pub word_n_max: usize,
    /// Window counts are tabulated for `3 <= n <= window_n_max`.
    pub window_n_max: usize,
    #[serde(skip)]
    pub workers: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            generator_n_max: 7,
            word_n_max: 14,
            window_n_max: 12,
            workers: 1,
        }
    }
}

/// Tally of one exhaustive check.
struct Tally {
    cases: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    fn finish(self, id: &'static str, statement: &'static str, range: String) -> ClaimResult {
        ClaimResult {
            id,
            statement,
            range,
            verdict: if self.counterexample.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            cases: self.cases,
            counterexample: self.counterexample,
            data: None,
        }
    }
}

fn run_per_generator(
    levels: &[GeneratorSet],
    check: impl Fn(&Generator) -> Tally + Sync,
) -> Tally {
    levels
        .iter()
        .flat_map(|l| l.generators())
        .collect::<Vec<_>>()
        .par_iter()
        .map(|g| check(g))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::new(), Tally::merge)
}

pub fn run_audit(config: &AuditConfig) -> Result<AuditReport> {
    if config.generator_n_max > DEFAULT_GENERATOR_CAP {
        return Err(Error::CapExceeded {
            n: config.generator_n_max,
            cap: DEFAULT_GENERATOR_CAP,
        });
    }
    if config.word_n_max + 1 > DEFAULT_WORD_CAP {
        return Err(Error::CapExceeded {
            n: config.word_n_max,
            cap: DEFAULT_WORD_CAP - 1,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    pool.install(|| audit_inner(config))
}

fn audit_inner(config: &AuditConfig) -> Result<AuditReport> {
    let gmax = config.generator_n_max;
    let wmax = config.word_n_max;
    let grange = format!("1 <= n <= {gmax}");
    let wrange = format!("0 <= n <= {wmax}");

    let brute: Vec<GeneratorSet> = (1..=gmax)
        .map(|n| brute_force_pn_generators_capped(n, DEFAULT_GENERATOR_CAP))
        .collect::<Result<_>>()?;
    let enumerator = Enumerator::in_memory();
    let mut claims = Vec::new();

    let mut t = Tally::new();
    for g in brute.iter().flat_map(|l| l.generators()) {
        t.record(necessary_conditions(g).last_is_one, || g.to_string());
    }
    claims.push(t.finish(
        "last_entry_is_one",
        "every prefix normal generator ends with 1",
        grange.clone(),
    ));

    let mut t = Tally::new();
    for g in brute.iter().flat_map(|l| l.generators()) {
        t.record(necessary_conditions(g).first_flip_late_enough, || g.to_string());
    }
    claims.push(t.finish(
        "first_flip_in_second_half",
        "every prefix normal generator has σ(1) >= ⌈(n+1)/2⌉",
        grange.clone(),
    ));

    let t = run_per_generator(&brute, |g| {
        let mut t = Tally::new();
        for j in 1..g.len() {
            if g.at(j) < g.at(j + 1) {
                let ok = swap_keeps_pn_oracle(g, j).unwrap_or(false);
                t.record(ok, || format!("{g} j={j}"));
            }
        }
        t
    });
    claims.push(t.finish(
        "ascending_swap_keeps_pn",
        "swapping an ascending adjacent pair of a prefix normal generator keeps it prefix normal",
        grange.clone(),
    ));

    let t = run_per_generator(&brute, |g| {
        let mut t = Tally::new();
        for j in 1..g.len() {
            let fast = swap_keeps_pn(g, j).ok();
            let slow = swap_keeps_pn_oracle(g, j).ok();
            t.record(fast.is_some() && fast == slow, || {
                format!("{g} j={j}: window test {fast:?}, rebuilt chain {slow:?}")
            });
        }
        t
    });
    claims.push(t.finish(
        "swap_theorem",
        "the window test on the pivot word decides every adjacent swap exactly",
        grange.clone(),
    ));

    let t = run_per_generator(&brute, |g| {
        let mut t = Tally::new();
        for j in 1..g.len() {
            let ctx = SwapContext::new(g, j).expect("j in range");
            if ctx.is_ascending() {
                continue;
            }
            let all = find_violating_factor_with(&ctx, WindowFilter::All).ok().flatten();
            let pruned = find_violating_factor_with(&ctx, WindowFilter::StartEndOne)
                .ok()
                .flatten();
            t.record(all.is_some() == pruned.is_some(), || {
                format!("{g} j={j}: all {all:?}, pruned {pruned:?}")
            });
        }
        t
    });
    claims.push(t.finish(
        "min_factor_filter_sound",
        "skipping windows that do not start and end with 1 never changes the outcome",
        grange.clone(),
    ));

    let t = run_per_generator(&brute, |g| {
        let mut t = Tally::new();
        let original = chain(g);
        for j in 1..g.len() {
            let swapped = chain(&g.swapped(j).expect("j in range"));
            let differs: Vec<usize> = (1..=original.len())
                .filter(|&i| original.word(i) != swapped.word(i))
                .collect();
            t.record(differs == [j + 1], || {
                format!("{g} j={j}: words {differs:?} differ")
            });
        }
        t
    });
    claims.push(t.finish(
        "swap_changes_one_word",
        "an adjacent swap at j changes exactly chain word j+1",
        grange.clone(),
    ));

    let t = run_per_generator(&brute, |g1| {
        let mut t = Tally::new();
        if g1.len() == 1 {
            return t;
        }
        for g2 in &brute[g1.len() - 1] {
            let c = compose(g1, g2).expect("equal lengths");
            let ok = !necessary_conditions(&c).last_is_one && !is_pn_generator(&c);
            t.record(ok, || format!("{g1} ∘ {g2} = {c}"));
        }
        t
    });
    let mut composition = t.finish(
        "composition_never_pn",
        "composing two prefix normal generators never gives one (n >= 2)",
        format!("2 <= n <= {gmax}, all ordered pairs"),
    );
    composition.data = Some(json!({ "n1_exception": "(1)∘(1) = (1)" }));
    claims.push(composition);

    let per_n: Vec<_> = brute
        .iter()
        .map(|l| {
            let even = l.iter().filter(|g| parity(g) == Parity::Even).count();
            json!({ "n": l.n(), "even": even, "odd": l.len() - even })
        })
        .collect();
    let both_at_4 = brute.get(3).map(|l| {
        l.iter().any(|g| parity(g) == Parity::Even) && l.iter().any(|g| parity(g) == Parity::Odd)
    });
    claims.push(ClaimResult {
        id: "both_parities_occur",
        statement: "prefix normal generators of length 4 have both parities",
        range: "n = 4".into(),
        verdict: match both_at_4 {
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail,
            None => Verdict::Observation,
        },
        cases: brute.get(3).map_or(0, GeneratorSet::len),
        counterexample: (both_at_4 == Some(false)).then(|| "one parity missing".into()),
        data: Some(json!({ "parities": per_n })),
    });

    let t = run_per_generator(&brute, |g| {
        let mut t = Tally::new();
        let full = valid_insert_positions(g, ScanMode::Full).unwrap_or_default();
        let early = valid_insert_positions(g, ScanMode::EarlyStop).unwrap_or_default();
        t.record(full == early && full.first() == Some(&1), || {
            format!("{g}: full {full:?}, early stop {early:?}")
        });
        t
    });
    claims.push(t.finish(
        "insert_positions_gapless",
        "valid positions for inserting n+1 form a prefix 1..k with k >= 1",
        grange.clone(),
    ));

    let mut t = Tally::new();
    let mut level = GeneratorSet::level_one();
    for truth in &brute {
        t.record(&level == truth, || format!("n={}: insertion gives {} of {}", truth.n(), level.len(), truth.len()));
        level = extend_generators(&level);
    }
    let mut completeness = t.finish(
        "insertion_complete",
        "front insertion plus right shifts yields every prefix normal generator (conjecture)",
        grange.clone(),
    );
    completeness.data = Some(json!({
        "generator_counts": brute.iter().map(GeneratorSet::len).collect::<Vec<_>>()
    }));
    claims.push(completeness);

    let mut t = Tally::new();
    for l in &brute {
        let ok = words_from_generators(l) == *enumerator.pn_words(l.n())?;
        t.record(ok, || format!("n={}", l.n()));
    }
    claims.push(t.finish(
        "chains_cover_pn_words",
        "every prefix normal word lies on some prefix normal chain",
        grange,
    ));

    let levels: Vec<_> = (0..=wmax)
        .map(|n| brute_force_pn_words_capped(n, DEFAULT_WORD_CAP))
        .collect::<Result<_>>()?;

    let mut t = Tally::new();
    for n in 0..=wmax {
        let r = counting_check(&enumerator, n)?;
        t.record(r.equal, || format!("n={n}: {} vs {}", r.count_n, r.count_n1_ending_0));
    }
    claims.push(t.finish(
        "counting_identity",
        "|PN(n)| equals the number of words in PN(n+1) ending in 0",
        wrange.clone(),
    ));

    let mut t = Tally::new();
    for w in levels.iter().flat_map(|l| l.words()) {
        if palindrome_rule(w) {
            t.record(is_extension_critical(w).unwrap_or(false), || w.to_string());
        }
    }
    claims.push(t.finish(
        "palindrome_extension_critical",
        "a prefix normal palindrome with a 0 is extension-critical",
        wrange.clone(),
    ));

    let mut t = Tally::new();
    for w in levels.iter().flat_map(|l| l.words()) {
        if !w.is_all_ones() && is_prefix_normal(&w.appended(1)) {
            t.record(matches!(extendable_parent(w), Ok(Some(_))), || w.to_string());
        }
    }
    claims.push(t.finish(
        "no_isolated_append_one",
        "if w and w1 are prefix normal and w has a 0, some prefix normal parent v has v1 prefix normal",
        wrange.clone(),
    ));

    let mut t = Tally::new();
    for w in levels.iter().flat_map(|l| l.words()) {
        let ok = is_prefix_normal(&w.prepended(1)) && is_prefix_normal(&w.appended(0));
        t.record(ok, || w.to_string());
    }
    claims.push(t.finish(
        "prepend_one_append_zero",
        "if w is prefix normal, so are 1w and w0",
        wrange,
    ));

    claims.push(window_count_observation(config.window_n_max)?);

    Ok(AuditReport {
        config: *config,
        claims,
    })
}

/// Candidate-window counts per length: the maximum over all descending
/// pairs with `b >= 2`, and the count at `a = ⌊(n-2)/2⌋, b = 2`.
fn window_count_observation(n_max: usize) -> Result<ClaimResult> {
    let mut rows = Vec::new();
    let mut cases = 0;
    for n in 3..=n_max {
        let mut best = 0;
        let mut argmax = Vec::new();
        for a in 3..=n {
            for b in 2..a {
                cases += 1;
                let c = count_candidate_windows(n, a, b)?;
                if c > best {
                    best = c;
                    argmax.clear();
                }
                if c == best {
                    argmax.push(json!({ "a": a, "b": b }));
                }
            }
        }
        let half = (n - 2) / 2;
        let quoted_pair = if half > 2 {
            json!({ "a": half, "b": 2, "count": count_candidate_windows(n, half, 2)? })
        } else {
            serde_json::Value::Null
        };
        let formula = (n * n - 2 * n) as f64 / 8.0;
        rows.push(json!({
            "n": n,
            "formula": formula,
            "quoted_pair": quoted_pair,
            "max_count": best,
            "argmax": argmax,
            "max_exceeds_formula": best as f64 > formula,
        }));
    }
    Ok(ClaimResult {
        id: "window_count_bound",
        statement: "candidate windows per swap test compared with (n^2 - 2n)/8",
        range: format!("3 <= n <= {n_max}, 2 <= b < a <= n"),
        verdict: Verdict::Observation,
        cases,
        counterexample: None,
        data: Some(json!({ "rows": rows })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_audit_passes() {
        let report = run_audit(&AuditConfig {
            generator_n_max: 6,
            word_n_max: 10,
            window_n_max: 12,
            workers: 2,
        })
        .unwrap();
        let failed: Vec<_> = report.failures().map(|c| c.id).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(report.claim("window_count_bound").unwrap().verdict, Verdict::Observation);
    }

    #[test]
    fn window_rows_include_quoted_pair() {
        let obs = window_count_observation(12).unwrap();
        let rows = &obs.data.unwrap()["rows"];
        let row12 = rows.as_array().unwrap().iter().find(|r| r["n"] == 12).unwrap();
        assert_eq!(row12["quoted_pair"], json!({ "a": 5, "b": 2, "count": 8 }));
        assert_eq!(row12["formula"], json!(15.0));
    }

    #[test]
    fn caps_are_enforced() {
        let cfg = AuditConfig {
            generator_n_max: 9,
            ..AuditConfig::default()
        };
        assert!(matches!(run_audit(&cfg), Err(Error::CapExceeded { .. })));
    }
}
