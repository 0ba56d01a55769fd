//! Every adjacent swap of a generator, decided from the pivot word and
//! checked against rebuilding the swapped chain.
//!
//! ```text
//! cargo run --example swap_theorem -- 6,5,3,2,4,1
//! ```

use pnchain::swap::decide_swap;
use pnchain::{count_candidate_windows, swap_keeps_pn_oracle, Generator, SwapContext};

fn main() -> Result<(), pnchain::Error> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "6,5,3,2,4,1".into());
    let g: Generator = arg.parse()?;

    for j in 1..g.len() {
        let ctx = SwapContext::new(&g, j)?;
        let d = decide_swap(&g, j)?;
        let windows = if ctx.is_ascending() {
            0
        } else {
            count_candidate_windows(g.len(), ctx.a(), ctx.b())?
        };
        let witness = d
            .witness
            .map(|w| format!("window [{}..{}]", w.start, w.end()))
            .unwrap_or_default();
        println!(
            "j={j} a={} b={} pivot={} windows={windows:<2} keeps_pn={:<5} {witness}",
            ctx.a(),
            ctx.b(),
            ctx.pivot_word(),
            d.keeps_pn,
        );
        assert_eq!(d.keeps_pn, swap_keeps_pn_oracle(&g, j)?);
    }
    Ok(())
}
