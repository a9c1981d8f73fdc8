//! Runs every property suite at its default scale and prints one line each.
//!
//! `cargo run --release --example verify_suites [seed]`

use fdeg::verify::{run_all, SuiteReport};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let reports: Vec<SuiteReport> = run_all(seed, 200, None).expect("default budgets are valid");
    for r in &reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        println!(
            "{status} {:<16} cases {:>6}  failures {:>3}  {:>6} ms",
            r.suite.name(),
            r.cases_run,
            r.failures.len(),
            r.wall_time_ms
        );
        for f in r.failures.iter().take(3) {
            println!("    {} | expected {} | actual {}", f.inputs, f.expected, f.actual);
        }
    }
}
