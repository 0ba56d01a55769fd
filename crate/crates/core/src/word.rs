//! Binary words over {0, 1} and the prefix-normality predicate.
//!
//! Positions are 1-based throughout: `w.get(1)` is the leftmost letter.
//! The text form is an ASCII string of `'0'`/`'1'`, leftmost character first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over the binary alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryWord {
    bits: Vec<u8>,
}

impl BinaryWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `1^n`
    pub fn ones(n: usize) -> Self {
        Self { bits: vec![1; n] }
    }

    /// `0^n`
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Self {
            bits: bits.into_iter().map(u8::from).collect(),
        }
    }

    /// Builds the length-`n` word whose position 1 is the most significant
    /// bit of `mask`. Ascending masks therefore give words in lexicographic
    /// order.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        assert!(n <= 64, "masks hold at most 64 letters");
        Self {
            bits: (0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as u8).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Letters as a slice of 0/1 bytes (index 0 is position 1).
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Letter at 1-based position `i`.
    pub fn get(&self, i: usize) -> Option<u8> {
        i.checked_sub(1).and_then(|k| self.bits.get(k).copied())
    }

    /// `|w|_1`
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// `|w|_0`
    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b == 1)
    }

    /// `pref_k(w)`; `k` is clamped to the word length.
    pub fn prefix(&self, k: usize) -> BinaryWord {
        Self {
            bits: self.bits[..k.min(self.len())].to_vec(),
        }
    }

    /// The factor of length `len` starting at 1-based position `start`.
    pub fn factor(&self, start: usize, len: usize) -> Option<BinaryWord> {
        let lo = start.checked_sub(1)?;
        let hi = lo.checked_add(len)?;
        self.bits.get(lo..hi).map(|s| Self { bits: s.to_vec() })
    }

    pub fn reversed(&self) -> BinaryWord {
        Self {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }

    /// `w·letter`
    pub fn appended(&self, letter: u8) -> BinaryWord {
        debug_assert!(letter <= 1);
        let mut bits = Vec::with_capacity(self.len() + 1);
        bits.extend_from_slice(&self.bits);
        bits.push(letter);
        Self { bits }
    }

    /// `letter·w`
    pub fn prepended(&self, letter: u8) -> BinaryWord {
        debug_assert!(letter <= 1);
        let mut bits = Vec::with_capacity(self.len() + 1);
        bits.push(letter);
        bits.extend_from_slice(&self.bits);
        Self { bits }
    }

    /// Returns `u0v` for `w = u1v` with `|u| = i - 1`.
    pub fn flip(&self, i: usize) -> Result<BinaryWord> {
        self.set_checked(i, 1, 0).map_err(|e| match e {
            Error::InvalidLetter { .. } => Error::NotAOne(i),
            e => e,
        })
    }

    /// Replaces the 0 at position `i` by a 1.
    pub fn unflip(&self, i: usize) -> Result<BinaryWord> {
        self.set_checked(i, 0, 1)
    }

    fn set_checked(&self, i: usize, from: u8, to: u8) -> Result<BinaryWord> {
        match self.get(i) {
            None => Err(Error::PositionOutOfRange {
                position: i,
                len: self.len(),
            }),
            Some(b) if b != from => Err(Error::InvalidLetter {
                position: i,
                found: char::from(b'0' + b),
            }),
            Some(_) => {
                let mut bits = self.bits.clone();
                bits[i - 1] = to;
                Ok(Self { bits })
            }
        }
    }

    pub(crate) fn set_bit_unchecked(&mut self, i: usize, letter: u8) {
        self.bits[i - 1] = letter;
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| char::from(b'0' + b)).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord(\"{self}\")")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(k, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                found => Err(Error::InvalidLetter {
                    position: k + 1,
                    found,
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| Self { bits })
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Prefix and maximal-factor 1-counts of a word.
///
/// Both vectors have `n + 1` entries indexed by length `k = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnesProfile {
    /// `P(k)`: number of 1s in `pref_k(w)`.
    pub prefix_ones: Vec<usize>,
    /// `F(k)`: largest number of 1s in any factor of length `k`.
    pub max_factor_ones: Vec<usize>,
}

impl OnesProfile {
    pub fn len(&self) -> usize {
        self.prefix_ones.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `P(k) = F(k)` for every `k`.
    pub fn is_prefix_normal(&self) -> bool {
        self.prefix_ones == self.max_factor_ones
    }
}

fn prefix_sums(w: &BinaryWord) -> Vec<usize> {
    let mut sums = Vec::with_capacity(w.len() + 1);
    let mut acc = 0;
    sums.push(0);
    for &b in w.bits() {
        acc += b as usize;
        sums.push(acc);
    }
    sums
}

/// Computes `P` and `F` with one sliding window pass per length, `O(n^2)`.
pub fn ones_profile(w: &BinaryWord) -> OnesProfile {
    let n = w.len();
    let sums = prefix_sums(w);
    let mut max_factor_ones = vec![0; n + 1];
    for (k, slot) in max_factor_ones.iter_mut().enumerate().skip(1) {
        *slot = (0..=n - k).map(|s| sums[s + k] - sums[s]).max().unwrap_or(0);
    }
    OnesProfile {
        prefix_ones: sums,
        max_factor_ones,
    }
}

/// No factor holds more 1s than the prefix of the same length.
///
/// Stops at the first violating window. The empty word is prefix normal.
pub fn is_prefix_normal(w: &BinaryWord) -> bool {
    let n = w.len();
    let sums = prefix_sums(w);
    (1..n).all(|k| {
        let bound = sums[k];
        (1..=n - k).all(|s| sums[s + k] - sums[s] <= bound)
    })
}

/// Literal reading of the definition: every factor occurrence is counted
/// letter by letter and compared with the prefix of the same length.
///
/// Shares nothing with [`is_prefix_normal`]; used as the test oracle.
pub fn is_prefix_normal_oracle(w: &BinaryWord) -> bool {
    let bits = w.bits();
    let n = bits.len();
    for start in 0..n {
        for end in start + 1..=n {
            let len = end - start;
            let mut factor_ones = 0;
            for &b in &bits[start..end] {
                if b == 1 {
                    factor_ones += 1;
                }
            }
            let mut prefix_ones = 0;
            for &b in &bits[..len] {
                if b == 1 {
                    prefix_ones += 1;
                }
            }
            if factor_ones > prefix_ones {
                return false;
            }
        }
    }
    true
}

pub fn is_palindrome(w: &BinaryWord) -> bool {
    let bits = w.bits();
    bits.iter().eq(bits.iter().rev())
}

/// Every prefix normal word obtained from `w` by turning one 0 into a 1,
/// ordered by the changed position.
pub fn pn_parents(w: &BinaryWord) -> Vec<BinaryWord> {
    (1..=w.len())
        .filter(|&i| w.get(i) == Some(0))
        .filter_map(|i| w.unflip(i).ok())
        .filter(is_prefix_normal)
        .collect()
}
