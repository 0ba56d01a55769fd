//! Extension-critical words of one length and the parents that witness
//! non-isolated append-1 steps.
//!
//! ```text
//! cargo run --example extension -- 6
//! ```

use pnchain::{enumerate_pn_words, extendable_parent, is_extension_critical, palindrome_rule};

fn main() -> Result<(), pnchain::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);

    for w in enumerate_pn_words(n).iter() {
        let critical = is_extension_critical(w)?;
        let note = if critical {
            if palindrome_rule(w) { "critical (palindrome)" } else { "critical" }.to_string()
        } else {
            match extendable_parent(w)? {
                Some(v) => format!("{w}1 is pn, parent {v} with {v}1 pn"),
                None => format!("{w}1 is pn"),
            }
        };
        println!("{w}  {note}");
    }
    Ok(())
}
