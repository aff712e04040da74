//! Chain-presentation calculus: slam-dunks, blow-downs, Rolfsen twists,
//! meridian tracking, and lens-space identification.
//!
//! Run with: cargo run --example chain_moves

use dehn::{chain_h1_order, ChainPresentation, LensSpace};
use std::error::Error;

fn main() -> Result<(), Box<dyn Error>> {
    // The three-component Hopf chain with slopes 1/2, 1, 1/2.
    let chain: ChainPresentation = "1/2, 1, 1/2".parse()?;
    let lens = chain.to_lens()?;
    println!("({chain}) surgery gives {lens} = -{}", lens.orientation_reversed());
    assert_eq!(lens, LensSpace::new(3, 2)?);

    // Moves never change the surgered manifold. A slam-dunk trades the
    // terminal rational coefficient for an integral tail; a Rolfsen twist
    // reparametrizes an end component and shifts its one neighbor.
    let dunked = chain.slam_dunk()?;
    println!("slam-dunk:      ({dunked})");
    let twisted = chain.rolfsen_twist(0, 1)?;
    println!("rolfsen twist:  ({twisted})");
    for moved in [&dunked, &twisted] {
        assert_eq!(moved.to_lens()?, lens);
    }

    // Blowing down a +/-1 coefficient drops the component and shifts both
    // neighbors toward each other.
    let integral: ChainPresentation = "1, 2, 2".parse()?;
    let blown = integral.blow_down(0)?;
    println!("(1, 2, 2) blow down index 0: ({blown})");
    assert_eq!(blown.to_lens()?, integral.to_lens()?);

    // reduce() replays slam-dunks and blow-downs until neither applies and
    // returns the move script it used.
    let (reduced, moves) = chain.reduce();
    let script: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
    println!("reduce: ({reduced}) via {}", script.join("; "));

    // Meridian marks ride along: twisting a component reparametrizes any
    // curve marked on it.
    let marked: ChainPresentation = "1/3".parse::<ChainPresentation>()?.with_meridians();
    let after = marked.rolfsen_twist(0, -3)?;
    println!(
        "meridian of 1/3 after a (-3)-twist: {}",
        after.marks()[0].curve
    );

    // Lens recognition refuses honestly when the manifold is not a lens
    // space: interior coefficient 1/2 here yields a Seifert manifold with
    // H1 = Z/2 + Z/2.
    let seifert: ChainPresentation = "2, 1/2, 2".parse()?;
    match seifert.to_lens() {
        Err(e) => println!("(2, 1/2, 2): {e}"),
        Ok(l) => unreachable!("unexpected lens space {l}"),
    }
    println!(
        "(2, 1/2, 2) still has a homology order: {}",
        chain_h1_order(&seifert)?
    );

    Ok(())
}
