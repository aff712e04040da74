//! Bounded exhaustive searches: pair solutions of the determinant-one
//! equation, triples that pass every pairwise test yet fail homologically,
//! and the full stream of certified split-Hopf multi-slopes.
//!
//! Run with: cargo run --example enumerate_slopes

use dehn::{
    enumerate_hopf_brunnian_slopes, enumerate_pair_solutions, enumerate_triple_obstructions,
};
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    // |q1*q2*l^2 - 1| = 1 over a generous box. The zero-linking family is
    // the whole grid; nonzero linking forces |l| = 1 and q1*q2 = 2.
    let pairs = enumerate_pair_solutions(25, 25)?;
    println!(
        "bounds (25, 25): {} zero-linking solutions, {} with nonzero linking:",
        pairs.zero_linking.len(),
        pairs.exceptional.len()
    );
    for s in &pairs.exceptional {
        println!("  {s}");
    }

    // Three components, all pairs fine, full surgery not a homology
    // sphere. The two smallest configurations have order 3.
    let triples = enumerate_triple_obstructions(2)?;
    println!("\ntriples passing all pairwise checks but failing as a whole:");
    for t in triples.iter().filter(|t| {
        t.linking.iter().all(|l| *l >= 0) && t.slopes.iter().all(|s| s.numerator() > &0.into())
    }) {
        println!("  {t}");
    }

    // Every certified multi-slope on one Hopf pair plus one unknot.
    println!("\ncertified multi-slopes for a Hopf pair (0,1) plus a singleton:");
    for multi in enumerate_hopf_brunnian_slopes(3, &[(0, 1)], 1)? {
        let rendered: Vec<String> = multi.iter().map(|s| s.to_string()).collect();
        println!("  ({})", rendered.join(", "));
    }

    Ok(())
}
