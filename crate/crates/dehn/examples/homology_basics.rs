//! First homology of surgered manifolds: build a framed link, inspect its
//! presentation matrix, and compute H1 for the link and all its sublinks.
//!
//! Run with: cargo run --example homology_basics

use dehn::{h1, h1_order, presentation_matrix, FramedLink, Slope, SublinkSelector};
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    // A three-component chain: ends linked once with the middle, slopes
    // 1/2, 1, 1/2. This is surgery data for a lens space of order 3.
    let slopes: Vec<Slope> = ["1/2", "1", "1/2"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let link = FramedLink::from_parts(
        slopes,
        vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
    )?;

    // Diagonal carries slope numerators, off-diagonal entries are linking
    // numbers scaled by the column's slope denominator.
    let a = presentation_matrix(&link)?;
    println!("presentation matrix:");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| a.get(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }

    let group = h1(&link)?;
    println!("H1 = {group} (order {})", h1_order(&link)?);

    // Every proper sublink of this chain produces a homology sphere even
    // though the full surgery does not.
    for sel in SublinkSelector::proper_nonempty(link.len()) {
        let sub = link.sublink(&sel)?;
        println!(
            "sublink [{}]: H1 = {} (order {})",
            sub.labels().join(", "),
            h1(&sub)?,
            h1_order(&sub)?
        );
    }

    // Links round-trip through a small JSON wire format.
    let json = link.to_json_string();
    let back = FramedLink::from_json_str(&json)?;
    assert_eq!(back, link);
    println!("wire format: {json}");

    Ok(())
}
