//! Dual links: the core circles of the filling tori carry slopes that undo
//! the surgery. Two independent routes compute them: a closed form for
//! integral framings and a Kirby-move engine for chains of unknots.
//!
//! Run with: cargo run --example dual_slopes

use dehn::{dual_slopes_by_moves, dual_slopes_integral, ChainPresentation, IntMatrix};
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    // Integral route: for a unimodular framing matrix B the dual data is
    // read off the negated inverse.
    let b = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 2]])?;
    let dual = dual_slopes_integral(&b)?;
    let slopes: Vec<String> = dual.slopes.iter().map(|s| s.to_string()).collect();
    println!("framings [[1,1],[1,2]] dualize to slopes ({})", slopes.join(", "));

    // Applying the construction twice gives back the original framings.
    let again = dual_slopes_integral(&dual.framing_matrix().unwrap())?;
    assert_eq!(again.framing_matrix().unwrap(), b);
    println!("dualizing twice returns the original framing matrix");

    // Move route: reduce the surgery description to nothing while an
    // undo-curve on each component records what the dual slope becomes.
    // This route also accepts rational coefficients.
    for coeffs in ["1", "1/3", "1, 2", "2, 0, -2, 3"] {
        let chain: ChainPresentation = coeffs.parse()?;
        let data = dual_slopes_by_moves(&chain.to_framed_link()?)?;
        let rendered: Vec<String> = data.slopes.iter().map(|s| s.to_string()).collect();
        println!("chain ({coeffs}) has dual slopes ({})", rendered.join(", "));
    }

    // Non-spheres are rejected: 2-surgery on the unknot is a lens space of
    // order 2, so there is no dual description of the three-sphere.
    let two: ChainPresentation = "2".parse()?;
    match dual_slopes_by_moves(&two.to_framed_link()?) {
        Err(e) => println!("chain (2): {e}"),
        Ok(_) => unreachable!("2-surgery is not a sphere"),
    }

    Ok(())
}
