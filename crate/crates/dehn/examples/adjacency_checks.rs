//! Necessary conditions for n-adjacency to the three-sphere: pair
//! classification, sublink homology, the split-Hopf certificate, and the
//! integral variant.
//!
//! Run with: cargo run --example adjacency_checks

use dehn::adjacency::NecessaryOptions;
use dehn::{
    certify_split_hopf_form, check_pair_classification, corpus, integral_adjacency_check,
    necessary_conditions, necessary_conditions_with, SplitHopfStructure,
};
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    // Two components with linking number 1 admit exactly four slope
    // assignments compatible with adjacency: sign-coupled (1, 1/2) pairs.
    for (a, b) in [("1", "1/2"), ("1/2", "1"), ("-1", "-1/2"), ("1", "-1/2")] {
        let report = check_pair_classification(1, &a.parse()?, &b.parse()?);
        println!("linking 1, slopes ({a}, {b}): {}", report.verdict);
    }

    // The three-component Hopf chain passes every condition that is
    // checkable at the homology level; the verdict stays inconclusive
    // because Brunnian-ness is geometric.
    let chain = corpus::load_link("chain3.json")?;
    println!("\nchain3: {}", necessary_conditions(&chain));

    // If the full surgery is also required to be a homology sphere, the
    // order-3 obstruction fires.
    let strict = necessary_conditions_with(&chain, &NecessaryOptions { assume_sphere: true });
    println!("\nchain3 (assume sphere): {strict}");
    println!("exit code would be {}", strict.verdict.exit_code());

    // A split union of a Hopf link and unknots is certified componentwise.
    let hopf = corpus::load_link("hopf.json")?;
    let structure = SplitHopfStructure::new(vec![(0, 1)], vec![]);
    let cert = certify_split_hopf_form(&hopf, &structure)?;
    println!("\nsplit-Hopf certificate: {cert}");

    // Integral slopes: Borromean rings with any +/-1 framings pass.
    let borromean = corpus::load_link("borromean.json")?;
    let mixed = borromean.with_slope(2, "-1".parse()?)?;
    println!("\nborromean (1, 1, -1): {}", integral_adjacency_check(&mixed)?);

    Ok(())
}
