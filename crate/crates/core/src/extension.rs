//! Appending letters to prefix normal words.
//!
//! `w0` is prefix normal whenever `w` is, so the only question when growing
//! a word is whether `w1` stays prefix normal. Words where it does not are
//! *extension-critical*.

use serde::Serialize;

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::word::{is_palindrome, is_prefix_normal, pn_parents, BinaryWord};

fn require_pn(w: &BinaryWord) -> Result<()> {
    if is_prefix_normal(w) {
        Ok(())
    } else {
        Err(Error::NotPrefixNormal(w.to_string()))
    }
}

/// `w` is prefix normal and `w1` is not.
///
/// Rebuilds `w1` and tests it from scratch.
pub fn is_extension_critical(w: &BinaryWord) -> Result<bool> {
    require_pn(w)?;
    Ok(!is_prefix_normal(&w.appended(1)))
}

/// `w1` is prefix normal, for a word `w` already known to be prefix normal.
///
/// Factors of `w1` that miss the new last letter are factors of `w`, so only
/// the suffixes of `w1` need comparing with the prefixes. `O(n)`.
pub(crate) fn appending_one_keeps_pn(w: &BinaryWord) -> bool {
    let bits = w.bits();
    let n = bits.len();
    // suffix of length k of w1 = (last k-1 letters of w)·1
    let mut prefix = 0;
    let mut tail = 0;
    for k in 1..=n {
        prefix += bits[k - 1] as usize;
        if k >= 2 {
            tail += bits[n + 1 - k] as usize;
        }
        if tail + 1 > prefix {
            return false;
        }
    }
    true
}

/// Sufficient certificate for extension-criticality: `w` is a prefix normal
/// palindrome containing a 0.
pub fn palindrome_rule(w: &BinaryWord) -> bool {
    w.count_zeros() >= 1 && is_palindrome(w) && is_prefix_normal(w)
}

/// A prefix normal parent `v` of `w` with `v1` prefix normal, first in
/// changed-position order. `None` only for `w = 1^n`.
pub fn extendable_parent(w: &BinaryWord) -> Result<Option<BinaryWord>> {
    require_pn(w)?;
    if !is_prefix_normal(&w.appended(1)) {
        return Err(Error::NotExtendable(w.to_string()));
    }
    Ok(pn_parents(w)
        .into_iter()
        .find(|v| is_prefix_normal(&v.appended(1))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub n: usize,
    /// `|PN(n)|`
    pub count_n: usize,
    /// words of `PN(n+1)` ending in 0
    pub count_n1_ending_0: usize,
    pub equal: bool,
}

/// Compares `|PN(n)|` with the number of length-`n+1` prefix normal words
/// ending in 0.
pub fn counting_check(enumerator: &Enumerator, n: usize) -> Result<CountingReport> {
    let here = enumerator.pn_words(n)?;
    let next = enumerator.pn_words(n + 1)?;
    let count_n1_ending_0 = next
        .words()
        .iter()
        .filter(|w| w.bits().last() == Some(&0))
        .count();
    Ok(CountingReport {
        n,
        count_n: here.len(),
        count_n1_ending_0,
        equal: here.len() == count_n1_ending_0,
    })
}
