//! Word chains, the two necessary conditions, and parity.
//!
//! ```text
//! cargo run --example chains -- 6,5,3,2,4,1
//! ```

use pnchain::{chain, first_non_pn_word, inversions, is_prefix_normal, necessary_conditions, parity, Generator};

fn main() -> Result<(), pnchain::Error> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "6,5,3,2,4,1".into());
    let g: Generator = arg.parse()?;

    for (i, w) in chain(&g).iter().enumerate() {
        let mark = if is_prefix_normal(w) { "" } else { "  <- not prefix normal" };
        println!("{:>3}: {w}{mark}", i + 1);
    }

    let nc = necessary_conditions(&g);
    println!("last entry is 1:        {}", nc.last_is_one);
    println!("first flip late enough: {}", nc.first_flip_late_enough);
    println!("inversions: {} ({:?})", inversions(&g), parity(&g));
    match first_non_pn_word(&g) {
        None => println!("{g} is a prefix normal generator"),
        Some((i, w)) => println!("{g} fails at word {i}: {w}"),
    }
    Ok(())
}
