//! Runs the exhaustive small-case audit and prints one line per statement.
//!
//! ```text
//! cargo run --release --example claim_audit
//! ```

use pnchain::audit::{run_audit, AuditConfig, Verdict};

fn main() -> Result<(), pnchain::Error> {
    let report = run_audit(&AuditConfig::default())?;
    for c in &report.claims {
        println!("{:<11} {:<30} {:>9} cases  {}", c.verdict, c.id, c.cases, c.range);
        if let Some(ce) = &c.counterexample {
            println!("            counterexample: {ce}");
        }
    }
    if let Some(c) = report.claim("window_count_bound") {
        if let Some(rows) = c.data.as_ref().and_then(|d| d["rows"].as_array()) {
            for r in rows {
                println!("  n={:<3} (n^2-2n)/8={:<7} max windows={}", r["n"], r["formula"], r["max_count"]);
            }
        }
    }
    let failed = report.claims.iter().filter(|c| c.verdict == Verdict::Fail).count();
    std::process::exit(i32::from(failed > 0));
}
