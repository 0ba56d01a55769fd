//! Prefix-normality of a word, with its 1-count profile.
//!
//! ```text
//! cargo run --example check_word -- 110100
//! ```

use pnchain::{is_extension_critical, is_prefix_normal, ones_profile, pn_parents, BinaryWord};

fn main() -> Result<(), pnchain::Error> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "110100".into());
    let w: BinaryWord = arg.parse()?;
    let p = ones_profile(&w);

    println!("word     {w}");
    println!("k        {}", (0..=w.len()).map(|k| format!("{k:>2}")).collect::<String>());
    println!("P(k)     {}", p.prefix_ones.iter().map(|x| format!("{x:>2}")).collect::<String>());
    println!("F(k)     {}", p.max_factor_ones.iter().map(|x| format!("{x:>2}")).collect::<String>());

    if is_prefix_normal(&w) {
        println!("prefix normal, extension-critical: {}", is_extension_critical(&w)?);
        let parents: Vec<String> = pn_parents(&w).iter().map(ToString::to_string).collect();
        println!("pn parents: {}", parents.join(" "));
    } else {
        let k = (1..=w.len()).find(|&k| p.max_factor_ones[k] > p.prefix_ones[k]).unwrap();
        println!("not prefix normal: some factor of length {k} has more 1s than the prefix");
    }
    Ok(())
}
