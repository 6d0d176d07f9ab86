//! Runs every acceptance criterion with the default configuration and prints
//! one PASS/FAIL line per criterion. Built without the libtest harness so the
//! lines show in a plain `cargo test` run.

use std::process::ExitCode;
use std::time::Instant;

use octonion_core::suite::{run_criterion, SuiteConfig, CRITERIA};

fn main() -> ExitCode {
    // listing tests must not run the suite
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let start = Instant::now();
        let report = match run_criterion(id, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {id}: FAIL ({}, aborted: {e})", CRITERIA[id - 1]);
                failed.push(id);
                continue;
            }
        };
        let secs = start.elapsed().as_secs_f64();
        let verdict = if report.ok() { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict} ({}, {} checks, {secs:.1} s)", CRITERIA[id - 1], report.checks.len());
        for check in report.failures() {
            println!("    failed: {} ({})", check.name, check.detail);
            if let Some(cx) = &check.counterexample {
                println!("    counterexample: {cx}");
            }
        }
        if !report.ok() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
