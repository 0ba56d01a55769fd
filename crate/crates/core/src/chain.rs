//! Word chains and their generating permutations.
//!
//! A generator is a permutation `σ` of `[n]`. Its chain starts at `1^n` and
//! step `i` flips position `σ(i)` from 1 to 0, ending at `0^n` after `n`
//! steps. A generator is *prefix normal* when every word of its chain is.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{is_prefix_normal, BinaryWord};

/// A permutation of `[n]`, stored as `(σ(1), …, σ(n))`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    perm: Vec<usize>,
}

impl Generator {
    /// Validates that `values` is a bijection on `[n]` with `n = values.len() >= 1`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyGenerator);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange { value: v as i64, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateValue(v));
            }
        }
        Ok(Self { perm: values })
    }

    /// `n, n-1, …, 1`
    pub fn descending(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            perm: (1..=n).rev().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            perm: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    /// Always false; generators have at least one entry.
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.perm
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.perm[i - 1]
    }

    /// Exchanges entries `j` and `j + 1`.
    pub fn swapped(&self, j: usize) -> Result<Generator> {
        let n = self.len();
        if j == 0 || j >= n {
            return Err(Error::SwapPositionOutOfRange { j, n });
        }
        let mut perm = self.perm.clone();
        perm.swap(j - 1, j);
        Ok(Self { perm })
    }

    /// Inserts the new largest value `n + 1` so that it becomes entry
    /// `position` (1-based, at most `n + 1`).
    pub fn with_max_inserted(&self, position: usize) -> Generator {
        let n = self.len();
        assert!((1..=n + 1).contains(&position), "insert position {position} out of range");
        let mut perm = Vec::with_capacity(n + 1);
        perm.extend_from_slice(&self.perm[..position - 1]);
        perm.push(n + 1);
        perm.extend_from_slice(&self.perm[position - 1..]);
        Self { perm }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.perm {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({self})")
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Comma-separated decimal values; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::EmptyGenerator);
        }
        let raw = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>()
                    .map_err(|_| Error::ParseGenerator(format!("{t:?} is not an integer")))
            })
            .collect::<Result<Vec<i64>>>()?;
        let n = raw.len();
        let values = raw
            .into_iter()
            .map(|v| {
                usize::try_from(v)
                    .ok()
                    .filter(|&u| (1..=n).contains(&u))
                    .ok_or(Error::ValueOutOfRange { value: v, n })
            })
            .collect::<Result<Vec<usize>>>()?;
        Generator::new(values)
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The `n + 1` words `c_σ[1..=n+1]` of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordChain {
    words: Vec<BinaryWord>,
}

impl WordChain {
    /// Number of words, `n + 1`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `c_σ[i]` for 1-based `i`.
    pub fn word(&self, i: usize) -> &BinaryWord {
        &self.words[i - 1]
    }

    pub fn words(&self) -> &[BinaryWord] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BinaryWord> {
        self.words.iter()
    }
}

impl<'a> IntoIterator for &'a WordChain {
    type Item = &'a BinaryWord;
    type IntoIter = std::slice::Iter<'a, BinaryWord>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}

/// Iterator over the chain words, produced one flip at a time.
pub struct ChainWords<'a> {
    generator: &'a Generator,
    current: Option<BinaryWord>,
    step: usize,
}

impl Iterator for ChainWords<'_> {
    type Item = BinaryWord;

    fn next(&mut self) -> Option<BinaryWord> {
        let word = self.current.take()?;
        if self.step < self.generator.len() {
            let mut next = word.clone();
            next.set_bit_unchecked(self.generator.perm[self.step], 0);
            self.current = Some(next);
            self.step += 1;
        }
        Some(word)
    }
}

pub fn chain_words(g: &Generator) -> ChainWords<'_> {
    ChainWords {
        generator: g,
        current: Some(BinaryWord::ones(g.len())),
        step: 0,
    }
}

pub fn chain(g: &Generator) -> WordChain {
    WordChain {
        words: chain_words(g).collect(),
    }
}

/// The first chain word (1-based index, word) that is not prefix normal.
pub fn first_non_pn_word(g: &Generator) -> Option<(usize, BinaryWord)> {
    chain_words(g)
        .enumerate()
        .find(|(_, w)| !is_prefix_normal(w))
        .map(|(i, w)| (i + 1, w))
}

/// Every chain word is prefix normal. Stops at the first failure.
pub fn is_pn_generator(g: &Generator) -> bool {
    first_non_pn_word(g).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    /// `σ(n) = 1`
    pub last_is_one: bool,
    /// `σ(1) >= ⌈(n+1)/2⌉`
    pub first_flip_late_enough: bool,
}

impl NecessaryConditions {
    pub fn hold(&self) -> bool {
        self.last_is_one && self.first_flip_late_enough
    }
}

/// Two cheap tests every prefix normal generator passes. A generator failing
/// either is rejected without building its chain.
pub fn necessary_conditions(g: &Generator) -> NecessaryConditions {
    let n = g.len();
    NecessaryConditions {
        last_is_one: g.at(n) == 1,
        first_flip_late_enough: g.at(1) >= (n + 2) / 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

pub fn inversions(g: &Generator) -> usize {
    let p = g.values();
    (0..p.len())
        .map(|i| p[i + 1..].iter().filter(|&&v| v < p[i]).count())
        .sum()
}

pub fn parity(g: &Generator) -> Parity {
    if inversions(g).is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `(g1 ∘ g2)(i) = g1(g2(i))`
pub fn compose(g1: &Generator, g2: &Generator) -> Result<Generator> {
    if g1.len() != g2.len() {
        return Err(Error::LengthMismatch {
            left: g1.len(),
            right: g2.len(),
        });
    }
    Ok(Generator {
        perm: g2.values().iter().map(|&i| g1.at(i)).collect(),
    })
}
