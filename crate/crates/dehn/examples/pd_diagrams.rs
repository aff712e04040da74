//! Signed planar-diagram codes: parse a diagram, read off its linking
//! matrix, attach surgery slopes, and hand the result to the homology and
//! adjacency machinery.
//!
//! Run with: cargo run --example pd_diagrams

use dehn::{corpus, h1_order, integral_adjacency_check, parse_pd, Slope};
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    // The corpus ships a handful of diagrams; parse one from text too.
    println!("built-in corpus entries:");
    for name in corpus::names() {
        println!("  {name}");
    }

    let hopf = parse_pd(
        "X[1,3,2,4] sign=+ comps=(A,B)\n\
         X[3,1,4,2] sign=+ comps=(B,A)\n",
    )?;
    let lk = hopf.linking_matrix()?;
    println!("\nhopf linking number: {}", lk.get(0, 1));

    // Borromean rings: six crossings whose signs cancel pairwise, so every
    // linking number vanishes even though the crossings do not.
    let borromean = corpus::load_diagram("borromean.pd")?;
    println!(
        "borromean: {} components, {} crossings, linking numbers all zero: {}",
        borromean.components().len(),
        borromean.crossings().len(),
        (0..3).all(|i| (0..3).all(|j| borromean
            .linking_matrix()
            .map(|m| i == j || m.get(i, j) == &0.into())
            .unwrap_or(false)))
    );

    // Attach +1 framings and check the homological conditions for the
    // surgery to be 3-adjacent to the three-sphere.
    let slopes: Vec<Slope> = vec!["1".parse()?, "1".parse()?, "1".parse()?];
    let link = borromean.to_framed_link(slopes)?;
    println!("+1-framed borromean: order {}", h1_order(&link)?);
    println!("{}", integral_adjacency_check(&link)?);

    // Malformed input is reported with line and column.
    match parse_pd("X[1,3,2] sign=+ comps=(A,B)\n") {
        Err(e) => println!("\nparse error example: {e}"),
        Ok(_) => unreachable!("three strand labels cannot form a crossing"),
    }

    Ok(())
}
