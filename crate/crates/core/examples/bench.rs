//! Extension recursion against filtering every word of length n.
//!
//! ```text
//! cargo run --release --example bench -- 22
//! ```

use pnchain::bench::run_bench;

fn main() -> Result<(), pnchain::Error> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let r = run_bench(n, 24, 3)?;
    println!("n = {n}, |PN(n)| = {}", r.brute_filter.count);
    println!(
        "brute filter   {:>10} candidates  {:>9.4} s",
        r.brute_filter.candidates, r.brute_filter.seconds
    );
    println!(
        "extension step {:>10} candidates  {:>9.4} s",
        r.extension_step.candidates, r.extension_step.seconds
    );
    println!(
        "all levels     {:>10} candidates  {:>9.4} s",
        r.extension_from_scratch.candidates, r.extension_from_scratch.seconds
    );
    println!("candidate ratio {:.4}, speedup {:.1}x", r.candidate_ratio, r.speedup);
    assert!(r.counts_agree);
    Ok(())
}
