//! Runs the full property suite over the built-in catalog and prints one
//! line per entry.
//!
//! `cargo run --release --example catalog_suite`

use morphic::cli::{run_suite, RunConfig};

fn main() {
    let report = run_suite(&RunConfig::default());
    for e in &report.entries {
        let failed: Vec<&String> = e.checks.iter().filter(|(_, c)| !c.passed).map(|(n, _)| n).collect();
        println!(
            "{:28} {:>5} {:2} checks {}",
            e.name,
            e.order.map_or("-".into(), |o| o.to_string()),
            e.checks.len(),
            if e.passed { "ok".to_string() } else { format!("FAILED {failed:?} {:?}", e.error) }
        );
    }
    println!("{} checks, {} failures", report.checks, report.failures.len());
}
