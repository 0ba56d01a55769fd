//! Prefix normal words, word chains and their generators.
//!
//! A binary word is *prefix normal* when no factor holds more 1s than the
//! prefix of the same length. A permutation `σ` of `[n]` generates the chain
//! of `n + 1` words that starts at `1^n` and flips position `σ(i)` to 0 at
//! step `i`; the permutation is a prefix normal generator when every word
//! of its chain is prefix normal.
//!
//! | module        | contents                                                   |
//! |---------------|------------------------------------------------------------|
//! | [`word`]      | [`BinaryWord`], 1-counts, the predicate and its oracle     |
//! | [`chain`]     | [`Generator`], [`WordChain`], necessary conditions, parity |
//! | [`swap`]      | deciding adjacent swaps from the pivot word                |
//! | [`extension`] | extension-critical words, palindromes, parents             |
//! | [`enumerate`] | all words / generators of a length, with level caching     |
//! | [`graph`]     | the single-flip graph of `PN(n)`, DOT and JSON output      |
//! | [`audit`]     | exhaustive small-case checks of the chain statements       |
//! | [`bench`]     | extension recursion against the `2^n` filter               |
//!
//! ```
//! use pnchain::{chain, is_pn_generator, is_prefix_normal, BinaryWord, Generator};
//!
//! let w: BinaryWord = "110100".parse().unwrap();
//! assert!(is_prefix_normal(&w));
//!
//! let g: Generator = "6,5,3,2,4,1".parse().unwrap();
//! assert_eq!(chain(&g).word(4), &w);
//! assert!(is_pn_generator(&g));
//! ```

pub mod audit;
pub mod bench;
pub mod cache;
pub mod chain;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod graph;
pub mod swap;
pub mod word;

pub use chain::{
    chain, chain_words, compose, first_non_pn_word, inversions, is_pn_generator,
    necessary_conditions, parity, Generator, NecessaryConditions, Parity, WordChain,
};
pub use enumerate::{
    brute_force_pn_generators, brute_force_pn_words, enumerate_pn_generators, enumerate_pn_words,
    extend_generators, max_insert_position, pn_count_sequence, words_from_generators, Enumerator,
    GeneratorSet, PnWordSet,
};
pub use error::{Error, Result};
pub use extension::{counting_check, extendable_parent, is_extension_critical, palindrome_rule};
pub use graph::{build_pn_graph, emit_dot, overlay_chain, PnGraph};
pub use swap::{
    candidate_windows, count_candidate_windows, find_violating_factor, passes_min_factor_filter,
    swap_keeps_pn, swap_keeps_pn_oracle, FactorWindow, SwapContext,
};
pub use word::{
    is_palindrome, is_prefix_normal, is_prefix_normal_oracle, ones_profile, pn_parents,
    BinaryWord, OnesProfile,
};

/// Crate version, echoed in every JSON report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
