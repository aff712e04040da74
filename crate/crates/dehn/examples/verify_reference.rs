//! The frozen reference checks: the battery of worked examples the crate
//! is calibrated against, plus the negative control that proves the
//! harness can fail.
//!
//! Run with: cargo run --example verify_reference

use dehn::{check_names, run_all, VerifyContext};

fn main() {
    println!("reference checks:");
    for name in check_names() {
        println!("  {name}");
    }

    let summary = run_all(&VerifyContext::default());
    println!("\n{summary}");

    // Flip the lens orientation convention on purpose: exactly the
    // convention-sensitive check must fail.
    let corrupted = run_all(&VerifyContext {
        corrupt_convention: true,
    });
    println!("\nwith a corrupted orientation convention:");
    for result in corrupted.results.iter().filter(|r| !r.passed()) {
        println!(
            "  {} failed: {}",
            result.name,
            result.failure.as_deref().unwrap_or("")
        );
    }
    assert!(!corrupted.all_passed());
}
