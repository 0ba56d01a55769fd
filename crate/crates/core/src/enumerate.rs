//! Enumerating all prefix normal words and all prefix normal generators of a
//! given length.
//!
//! Words are built level by level: every `w ∈ PN(n)` contributes `w0`, and
//! `w1` when `w` is not extension-critical. That yields exactly `PN(n+1)`
//! and, when the input level is sorted, keeps the output sorted.
//!
//! Generators of length `n + 1` come from those of length `n` by inserting
//! `n + 1` at the front and shifting it right until the generator stops being
//! prefix normal.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::LevelCache;
use crate::chain::{chain_words, is_pn_generator, Generator};
use crate::error::{Error, Result};
use crate::extension::appending_one_keeps_pn;
use crate::word::{is_prefix_normal, is_prefix_normal_oracle, BinaryWord};

pub const DEFAULT_WORD_CAP: usize = 24;
pub const DEFAULT_GENERATOR_CAP: usize = 8;

/// Largest level the brute-force comparison runs on in verify mode.
const VERIFY_WORDS_UP_TO: usize = 16;

/// All prefix normal words of one length, ascending lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PnWordSet {
    n: usize,
    words: Vec<BinaryWord>,
}

impl PnWordSet {
    /// Sorts and deduplicates `words`. Membership is not checked.
    pub fn new(n: usize, mut words: Vec<BinaryWord>) -> Self {
        words.sort_unstable();
        words.dedup();
        Self { n, words }
    }

    pub(crate) fn from_sorted(n: usize, words: Vec<BinaryWord>) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        Self { n, words }
    }

    /// `PN(0) = {ε}`
    pub fn level_zero() -> Self {
        Self {
            n: 0,
            words: vec![BinaryWord::empty()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BinaryWord> {
        self.words.iter()
    }

    /// Checks the set invariants: length, strict order, prefix normality.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::Inconsistent { n: self.n, reason });
        if let Some(w) = self.words.iter().find(|w| w.len() != self.n) {
            return fail(format!("word {w} has length {}", w.len()));
        }
        if let Some(p) = self.words.windows(2).find(|p| p[0] >= p[1]) {
            return fail(format!("{} is not before {}", p[0], p[1]));
        }
        if let Some(w) = self.words.iter().find(|w| !is_prefix_normal(w)) {
            return fail(format!("{w} is not prefix normal"));
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a PnWordSet {
    type Item = &'a BinaryWord;
    type IntoIter = std::slice::Iter<'a, BinaryWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// All prefix normal generators of one length, lexicographic on sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    n: usize,
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(n: usize, mut generators: Vec<Generator>) -> Self {
        generators.sort_unstable();
        generators.dedup();
        Self { n, generators }
    }

    /// `G_1 = {(1)}`
    pub fn level_one() -> Self {
        Self {
            n: 1,
            generators: vec![Generator::identity(1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Generator> {
        self.generators.iter()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::Inconsistent { n: self.n, reason });
        if let Some(g) = self.generators.iter().find(|g| g.len() != self.n) {
            return fail(format!("generator {g} has length {}", g.len()));
        }
        if let Some(p) = self.generators.windows(2).find(|p| p[0] >= p[1]) {
            return fail(format!("{} is not before {}", p[0], p[1]));
        }
        if let Some(g) = self.generators.iter().find(|g| !is_pn_generator(g)) {
            return fail(format!("{g} is not a prefix normal generator"));
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Generator;
    type IntoIter = std::slice::Iter<'a, Generator>;

    fn into_iter(self) -> Self::IntoIter {
        self.generators.iter()
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Filters all `2^n` words with the literal-definition oracle.
pub fn brute_force_pn_words(n: usize) -> Result<PnWordSet> {
    brute_force_pn_words_capped(n, DEFAULT_WORD_CAP)
}

pub fn brute_force_pn_words_capped(n: usize, cap: usize) -> Result<PnWordSet> {
    check_cap(n, cap.min(63))?;
    let words = (0..1u64 << n)
        .map(|mask| BinaryWord::from_mask(mask, n))
        .filter(is_prefix_normal_oracle)
        .collect();
    Ok(PnWordSet::from_sorted(n, words))
}

/// Visits the permutations of `[n]` in lexicographic order.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize])) {
        let n = used.len() - 1;
        if prefix.len() == n {
            visit(prefix);
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, visit);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n + 1], &mut visit);
}

/// All `n!` permutations filtered by [`is_pn_generator`].
pub fn brute_force_pn_generators(n: usize) -> Result<GeneratorSet> {
    brute_force_pn_generators_capped(n, DEFAULT_GENERATOR_CAP)
}

pub fn brute_force_pn_generators_capped(n: usize, cap: usize) -> Result<GeneratorSet> {
    check_cap(n, cap)?;
    if n == 0 {
        return Err(Error::EmptyGenerator);
    }
    let mut found = Vec::new();
    for_each_permutation(n, |p| {
        let g = Generator::new(p.to_vec()).expect("permutation");
        if is_pn_generator(&g) {
            found.push(g);
        }
    });
    Ok(GeneratorSet { n, generators: found })
}

/// `PN(n+1)` from a complete, sorted `PN(n)`.
pub fn extend_pn_words(level: &PnWordSet) -> PnWordSet {
    let words = level.words.iter().flat_map(extend_one).collect();
    PnWordSet::from_sorted(level.n + 1, words)
}

fn extend_one(w: &BinaryWord) -> impl Iterator<Item = BinaryWord> {
    let with_zero = w.appended(0);
    let with_one = appending_one_keeps_pn(w).then(|| w.appended(1));
    std::iter::once(with_zero).chain(with_one)
}

/// `PN(n)` through the extension recursion, without caching.
pub fn enumerate_pn_words(n: usize) -> PnWordSet {
    let mut level = PnWordSet::level_zero();
    while level.n < n {
        level = extend_pn_words(&level);
    }
    level
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScanMode {
    /// Stop at the first insert position that fails.
    #[default]
    EarlyStop,
    /// Try every position `1..=n+1`.
    Full,
}

/// Insert positions for `n + 1` that keep `g` prefix normal.
pub fn valid_insert_positions(g: &Generator, mode: ScanMode) -> Result<Vec<usize>> {
    if !is_pn_generator(g) {
        return Err(Error::NotPnGenerator(g.to_string()));
    }
    let mut valid = Vec::new();
    for p in 1..=g.len() + 1 {
        if is_pn_generator(&g.with_max_inserted(p)) {
            valid.push(p);
        } else if mode == ScanMode::EarlyStop {
            break;
        }
    }
    Ok(valid)
}

/// Largest `k` such that inserting `n + 1` at any of `1..=k` keeps `g`
/// prefix normal. Always at least 1.
pub fn max_insert_position(g: &Generator) -> Result<usize> {
    let valid = valid_insert_positions(g, ScanMode::EarlyStop)?;
    debug_assert_eq!(valid.first(), Some(&1));
    Ok(valid.len())
}

/// `G_{n+1}` from a complete `G_n`.
pub fn extend_generators(gs: &GeneratorSet) -> GeneratorSet {
    let mut next = Vec::new();
    for g in gs {
        let k = max_insert_position(g).expect("members of a generator set are prefix normal");
        next.extend((1..=k).map(|p| g.with_max_inserted(p)));
    }
    GeneratorSet::new(gs.n + 1, next)
}

/// `G_n` by iterating [`extend_generators`] from `G_1`.
pub fn enumerate_pn_generators(n: usize) -> Result<GeneratorSet> {
    if n == 0 {
        return Err(Error::EmptyGenerator);
    }
    let mut level = GeneratorSet::level_one();
    while level.n < n {
        level = extend_generators(&level);
    }
    Ok(level)
}

/// Sorted union of the chain words of every member.
pub fn words_from_generators(gs: &GeneratorSet) -> PnWordSet {
    let words: BTreeSet<BinaryWord> = gs.iter().flat_map(chain_words).collect();
    PnWordSet::from_sorted(gs.n, words.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub count: usize,
    /// `|PN(n)| / 2^n`
    pub ratio: f64,
}

/// `|PN(1)|, …, |PN(n_max)|` with the fraction of all words each represents.
pub fn pn_count_sequence(enumerator: &Enumerator, n_max: usize) -> Result<Vec<CountRow>> {
    (1..=n_max)
        .map(|n| {
            let count = enumerator.pn_words(n)?.len();
            Ok(CountRow {
                n,
                count,
                ratio: count as f64 / (n as f64).exp2(),
            })
        })
        .collect()
}

/// Level builder with an in-memory memo, an optional on-disk cache, and an
/// optional worker pool for the per-level extension checks.
pub struct Enumerator {
    cache: Option<LevelCache>,
    pool: Option<rayon::ThreadPool>,
    verify: bool,
    words: Mutex<BTreeMap<usize, Arc<PnWordSet>>>,
    generators: Mutex<BTreeMap<usize, Arc<GeneratorSet>>>,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self::in_memory()
    }
}

impl Enumerator {
    pub fn in_memory() -> Self {
        Self {
            cache: None,
            pool: None,
            verify: false,
            words: Mutex::new(BTreeMap::new()),
            generators: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        Ok(Self {
            cache: Some(LevelCache::open(dir)?),
            ..Self::in_memory()
        })
    }

    /// Shards each level across `workers` threads. Output does not depend on
    /// the worker count.
    pub fn with_workers(mut self, workers: usize) -> Result<Self> {
        self.pool = if workers > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| std::io::Error::other(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(self)
    }

    /// Compare freshly built levels with brute force (words up to length 16,
    /// generators up to the generator cap) before caching them.
    pub fn with_verify(mut self, verify: bool) -> Self {
        self.verify = verify;
        self
    }

    pub fn cache(&self) -> Option<&LevelCache> {
        self.cache.as_ref()
    }

    fn extend_level(&self, level: &PnWordSet) -> PnWordSet {
        match &self.pool {
            None => extend_pn_words(level),
            Some(pool) => {
                let chunk = (level.len() / (4 * pool.current_num_threads())).max(1024);
                let parts: Vec<Vec<BinaryWord>> = pool.install(|| {
                    level
                        .words
                        .par_chunks(chunk)
                        .map(|c| c.iter().flat_map(extend_one).collect())
                        .collect()
                });
                let mut words: Vec<BinaryWord> = parts.into_iter().flatten().collect();
                // chunks come back in order, so this is a no-op pass
                words.sort_unstable();
                PnWordSet::from_sorted(level.n + 1, words)
            }
        }
    }

    fn check_word_level(&self, level: &PnWordSet, prev: Option<&PnWordSet>) -> Result<()> {
        level.validate()?;
        if let Some(prev) = prev {
            let ending_0 = level.iter().filter(|w| w.bits().last() == Some(&0)).count();
            if ending_0 != prev.len() {
                return Err(Error::Inconsistent {
                    n: level.n,
                    reason: format!("{ending_0} words end in 0, expected {}", prev.len()),
                });
            }
        }
        if self.verify && level.n <= VERIFY_WORDS_UP_TO {
            let brute = brute_force_pn_words(level.n)?;
            if &brute != level {
                return Err(Error::Inconsistent {
                    n: level.n,
                    reason: "differs from the brute-force set".into(),
                });
            }
        }
        Ok(())
    }

    /// `PN(n)`, built from the highest level already known.
    pub fn pn_words(&self, n: usize) -> Result<Arc<PnWordSet>> {
        let mut memo = self.words.lock().expect("word memo poisoned");
        if let Some(level) = memo.get(&n) {
            return Ok(Arc::clone(level));
        }
        let mut start = memo
            .range(..n)
            .next_back()
            .map(|(_, l)| Arc::clone(l))
            .unwrap_or_else(|| Arc::new(PnWordSet::level_zero()));
        if let Some(cache) = &self.cache {
            for m in (start.n + 1..=n).rev() {
                if let Some(level) = cache.read_words(m)? {
                    level.validate()?;
                    start = Arc::new(level);
                    memo.insert(m, Arc::clone(&start));
                    break;
                }
            }
        }
        let mut level = start;
        while level.n < n {
            let next = self.extend_level(&level);
            self.check_word_level(&next, Some(&level))?;
            if let Some(cache) = &self.cache {
                cache.write_words(&next)?;
            }
            level = Arc::new(next);
            memo.insert(level.n, Arc::clone(&level));
        }
        Ok(level)
    }

    /// `G_n` via the insertion scheme.
    pub fn pn_generators(&self, n: usize) -> Result<Arc<GeneratorSet>> {
        if n == 0 {
            return Err(Error::EmptyGenerator);
        }
        let mut memo = self.generators.lock().expect("generator memo poisoned");
        if let Some(level) = memo.get(&n) {
            return Ok(Arc::clone(level));
        }
        let mut level = memo
            .range(..n)
            .next_back()
            .map(|(_, l)| Arc::clone(l))
            .unwrap_or_else(|| Arc::new(GeneratorSet::level_one()));
        if let Some(cache) = &self.cache {
            for m in (level.n..=n).rev() {
                if let Some(found) = cache.read_generators(m)? {
                    found.validate()?;
                    level = Arc::new(found);
                    memo.insert(m, Arc::clone(&level));
                    break;
                }
            }
        }
        while level.n < n {
            let next = extend_generators(&level);
            next.validate()?;
            if self.verify && next.n <= DEFAULT_GENERATOR_CAP {
                let brute = brute_force_pn_generators(next.n)?;
                if brute != next {
                    return Err(Error::Inconsistent {
                        n: next.n,
                        reason: "differs from the brute-force generator set".into(),
                    });
                }
            }
            if let Some(cache) = &self.cache {
                cache.write_generators(&next)?;
            }
            level = Arc::new(next);
            memo.insert(level.n, Arc::clone(&level));
        }
        Ok(level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(set: &PnWordSet) -> Vec<String> {
        set.iter().map(ToString::to_string).collect()
    }

    fn gens(set: &GeneratorSet) -> Vec<String> {
        set.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn brute_word_examples() {
        assert_eq!(strings(&brute_force_pn_words(2).unwrap()), ["00", "10", "11"]);
        assert_eq!(
            strings(&brute_force_pn_words(4).unwrap()),
            ["0000", "1000", "1001", "1010", "1100", "1101", "1110", "1111"]
        );
        assert_eq!(strings(&brute_force_pn_words(1).unwrap()), ["0", "1"]);
        assert!(matches!(
            brute_force_pn_words(25),
            Err(Error::CapExceeded { n: 25, cap: 24 })
        ));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            strings(&enumerate_pn_words(3)),
            ["000", "100", "101", "110", "111"]
        );
        assert_eq!(strings(&enumerate_pn_words(0)), [""]);
        let counts: Vec<_> = (1..=4).map(|n| enumerate_pn_words(n).len()).collect();
        assert_eq!(counts, [2, 3, 5, 8]);
    }

    #[test]
    fn brute_generator_examples() {
        assert_eq!(gens(&brute_force_pn_generators(1).unwrap()), ["1"]);
        assert_eq!(gens(&brute_force_pn_generators(3).unwrap()), ["2,3,1", "3,2,1"]);
        assert_eq!(
            gens(&brute_force_pn_generators(4).unwrap()),
            ["3,2,4,1", "3,4,2,1", "4,2,3,1", "4,3,2,1"]
        );
        assert!(matches!(
            brute_force_pn_generators(9),
            Err(Error::CapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn insert_position_examples() {
        let g = |s: &str| s.parse::<Generator>().unwrap();
        assert_eq!(max_insert_position(&g("1")).unwrap(), 1);
        assert_eq!(max_insert_position(&g("2,1")).unwrap(), 2);
        assert_eq!(max_insert_position(&g("2,3,1")).unwrap(), 1);
        assert!(matches!(
            max_insert_position(&g("1,2")),
            Err(Error::NotPnGenerator(_))
        ));
    }

    #[test]
    fn generator_extension_examples() {
        let g2 = extend_generators(&GeneratorSet::level_one());
        assert_eq!(gens(&g2), ["2,1"]);
        let g3 = extend_generators(&g2);
        assert_eq!(gens(&g3), ["2,3,1", "3,2,1"]);
        let g4 = extend_generators(&g3);
        assert_eq!(gens(&g4), ["3,2,4,1", "3,4,2,1", "4,2,3,1", "4,3,2,1"]);
    }

    #[test]
    fn words_from_generator_examples() {
        assert_eq!(strings(&words_from_generators(&GeneratorSet::level_one())), ["0", "1"]);
        let g3 = enumerate_pn_generators(3).unwrap();
        assert_eq!(words_from_generators(&g3).len(), 5);
        let g4 = enumerate_pn_generators(4).unwrap();
        assert_eq!(words_from_generators(&g4), enumerate_pn_words(4));
    }

    #[test]
    fn count_sequence_examples() {
        let e = Enumerator::in_memory();
        let counts: Vec<_> = pn_count_sequence(&e, 4).unwrap().iter().map(|r| r.count).collect();
        assert_eq!(counts, [2, 3, 5, 8]);
        assert_eq!(pn_count_sequence(&e, 1).unwrap()[0].count, 2);
        let rows = pn_count_sequence(&e, 14).unwrap();
        assert!(rows.windows(2).all(|p| p[1].ratio < p[0].ratio));
    }

    #[test]
    fn workers_do_not_change_output() {
        let one = Enumerator::in_memory().pn_words(15).unwrap();
        let four = Enumerator::in_memory()
            .with_workers(4)
            .unwrap()
            .pn_words(15)
            .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn verify_mode_accepts_correct_levels() {
        let e = Enumerator::in_memory().with_verify(true);
        assert_eq!(e.pn_words(10).unwrap().len(), 218);
        assert_eq!(e.pn_generators(6).unwrap().len(), 44);
    }

    #[test]
    fn validate_rejects_bad_sets() {
        let bad = PnWordSet::new(2, vec!["01".parse().unwrap()]);
        assert!(matches!(bad.validate(), Err(Error::Inconsistent { .. })));
        let bad = PnWordSet::new(3, vec!["01".parse().unwrap()]);
        assert!(bad.validate().is_err());
        let bad = GeneratorSet::new(2, vec!["1,2".parse().unwrap()]);
        assert!(bad.validate().is_err());
    }
}
