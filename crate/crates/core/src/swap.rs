//! Deciding whether an adjacent swap keeps a generator prefix normal.
//!
//! Swapping entries `j` and `j + 1` of `σ` changes exactly one chain word,
//! `c_σ[j+1]`. With `a = σ[j]` and `b = σ[j+1]`:
//!
//! * `a < b`: the swap always keeps the generator prefix normal.
//! * `a > b`: the swapped generator is prefix normal iff the pivot word
//!   `c_σ[j]` has no factor `v` that covers position `a`, avoids position
//!   `b`, has `b <= |v| < a`, and holds at least as many 1s as the prefix
//!   of length `|v|`.
//!
//! The decision reads only the pivot word of the original chain.

use serde::Serialize;

use crate::chain::{chain_words, is_pn_generator, Generator};
use crate::error::{Error, Result};
use crate::word::BinaryWord;

/// An occurrence of a factor: `length` letters starting at 1-based `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorWindow {
    pub start: usize,
    pub length: usize,
}

impl FactorWindow {
    pub fn new(start: usize, length: usize) -> Self {
        debug_assert!(start >= 1 && length >= 1);
        Self { start, length }
    }

    /// Last covered position.
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }

    pub fn covers(&self, position: usize) -> bool {
        (self.start..=self.end()).contains(&position)
    }

    pub fn fits(&self, n: usize) -> bool {
        self.start >= 1 && self.end() <= n
    }

    /// `|v|_1` of this factor inside `word`.
    pub fn ones_in(&self, word: &BinaryWord) -> usize {
        word.bits()[self.start - 1..self.end()]
            .iter()
            .map(|&b| b as usize)
            .sum()
    }
}

/// The data an adjacent swap at `j` is decided on.
#[derive(Clone, Debug)]
pub struct SwapContext {
    generator: Generator,
    j: usize,
    a: usize,
    b: usize,
    pivot: BinaryWord,
}

impl SwapContext {
    pub fn new(generator: &Generator, j: usize) -> Result<Self> {
        let n = generator.len();
        if j == 0 || j >= n {
            return Err(Error::SwapPositionOutOfRange { j, n });
        }
        // c_σ[|x|+1] with |x| = j - 1
        let pivot = chain_words(generator)
            .nth(j - 1)
            .expect("chain has n + 1 words");
        Ok(Self {
            generator: generator.clone(),
            j,
            a: generator.at(j),
            b: generator.at(j + 1),
            pivot,
        })
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// `σ[j]`
    pub fn a(&self) -> usize {
        self.a
    }

    /// `σ[j+1]`
    pub fn b(&self) -> usize {
        self.b
    }

    /// Chain word `j`, the last word before either swapped flip.
    pub fn pivot_word(&self) -> &BinaryWord {
        &self.pivot
    }

    pub fn is_ascending(&self) -> bool {
        self.a < self.b
    }
}

fn check_descending(a: usize, b: usize) -> Result<()> {
    if a <= b {
        Err(Error::NotDescending { a, b })
    } else {
        Ok(())
    }
}

/// All windows of a length-`n` word that cover `a`, avoid `b`, and have
/// length in `[b, a)`. Ordered by length, then start.
pub fn candidate_windows(n: usize, a: usize, b: usize) -> Result<Vec<FactorWindow>> {
    check_descending(a, b)?;
    let mut out = Vec::new();
    for length in b..a {
        // covering a means start <= a <= start + length - 1; staying clear
        // of b < a means start > b
        let lo = (a + 1).saturating_sub(length).max(b + 1);
        let hi = a.min((n + 1).saturating_sub(length));
        out.extend((lo..=hi).map(|start| FactorWindow::new(start, length)));
    }
    Ok(out)
}

/// Length of [`candidate_windows`] without materializing it.
pub fn count_candidate_windows(n: usize, a: usize, b: usize) -> Result<usize> {
    check_descending(a, b)?;
    Ok((b..a)
        .map(|length| {
            let lo = (a + 1).saturating_sub(length).max(b + 1);
            let hi = a.min((n + 1).saturating_sub(length));
            (hi + 1).saturating_sub(lo)
        })
        .sum())
}

/// The window starts and ends with a 1.
pub fn passes_min_factor_filter(word: &BinaryWord, win: FactorWindow) -> bool {
    word.get(win.start) == Some(1) && word.get(win.end()) == Some(1)
}

/// Which candidate windows the violation search inspects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WindowFilter {
    /// Every candidate window.
    #[default]
    All,
    /// Only windows passing [`passes_min_factor_filter`].
    StartEndOne,
}

/// First candidate window of the pivot word holding at least as many 1s as
/// the prefix of the same length.
pub fn find_violating_factor(ctx: &SwapContext) -> Result<Option<FactorWindow>> {
    find_violating_factor_with(ctx, WindowFilter::All)
}

pub fn find_violating_factor_with(
    ctx: &SwapContext,
    filter: WindowFilter,
) -> Result<Option<FactorWindow>> {
    let pivot = ctx.pivot_word();
    let windows = candidate_windows(pivot.len(), ctx.a, ctx.b)?;
    let mut prefix_ones = vec![0; pivot.len() + 1];
    for k in 1..=pivot.len() {
        prefix_ones[k] = prefix_ones[k - 1] + pivot.bits()[k - 1] as usize;
    }
    Ok(windows.into_iter().find(|&win| {
        (filter == WindowFilter::All || passes_min_factor_filter(pivot, win))
            && win.ones_in(pivot) >= prefix_ones[win.length]
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SwapCase {
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapDecision {
    pub case: SwapCase,
    pub keeps_pn: bool,
    pub witness: Option<FactorWindow>,
}

/// Decides the swap at `j` of a prefix normal generator without building
/// the swapped chain.
pub fn decide_swap(g: &Generator, j: usize) -> Result<SwapDecision> {
    let ctx = SwapContext::new(g, j)?;
    if !is_pn_generator(g) {
        return Err(Error::NotPnGenerator(g.to_string()));
    }
    if ctx.is_ascending() {
        return Ok(SwapDecision {
            case: SwapCase::Ascending,
            keeps_pn: true,
            witness: None,
        });
    }
    let witness = find_violating_factor(&ctx)?;
    Ok(SwapDecision {
        case: SwapCase::Descending,
        keeps_pn: witness.is_none(),
        witness,
    })
}

pub fn swap_keeps_pn(g: &Generator, j: usize) -> Result<bool> {
    decide_swap(g, j).map(|d| d.keeps_pn)
}

/// Ground truth: swap, rebuild the chain, test every word.
pub fn swap_keeps_pn_oracle(g: &Generator, j: usize) -> Result<bool> {
    g.swapped(j).map(|s| is_pn_generator(&s))
}
