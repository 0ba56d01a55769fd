//! Counts of prefix normal words and generators, using an on-disk level
//! cache when `PNCHAIN_CACHE_DIR` is set.
//!
//! ```text
//! cargo run --release --example enumerate -- 20
//! ```

use pnchain::cache::CACHE_DIR_ENV;
use pnchain::{pn_count_sequence, Enumerator};

fn main() -> Result<(), pnchain::Error> {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let e = match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) => Enumerator::with_cache_dir(dir)?,
        None => Enumerator::in_memory(),
    };

    println!("{:>3} {:>9} {:>9}", "n", "|PN(n)|", "ratio");
    for row in pn_count_sequence(&e, n_max)? {
        println!("{:>3} {:>9} {:>9.5}", row.n, row.count, row.ratio);
    }

    println!();
    println!("{:>3} {:>9}", "n", "|G_n|");
    for n in 1..=7 {
        println!("{n:>3} {:>9}", e.pn_generators(n)?.len());
    }
    Ok(())
}
