//! Walking between two common independent sets of the same size through
//! feasible intermediates: remove one element, add one element, stay inside
//! both matroids at every intermediate stop.
//!
//! Run with: cargo run -p dimatroid --example exchange_walk

use dimatroid::{Dimatroid, ElementSet, Matroid};

fn main() -> dimatroid::Result<()> {
    let graphic = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let matchings = [
        ElementSet::from_members(6, [0, 5])?,
        ElementSet::from_members(6, [1, 4])?,
        ElementSet::from_members(6, [2, 3])?,
    ];
    let d = Dimatroid::new(graphic, Matroid::partition(6, &matchings, &[1, 1, 1])?)?;

    // Two stars of K4, both common independent.
    let s = ElementSet::from_members(6, [0, 1, 2])?; // edges at vertex 0
    let t = ElementSet::from_members(6, [2, 4, 5])?; // edges at vertex 3

    let walk = d.exchange_walk(&s, &t)?;
    println!("removal order from S: {:?}", walk.s_order);
    println!("insertion order into T: {:?}", walk.t_order);
    println!("candidate chain:");
    for (i, c) in walk.candidate_chain().iter().enumerate() {
        let role = if i == 0 {
            "S".to_string()
        } else if i == walk.candidate_chain().len() - 1 {
            "T".to_string()
        } else {
            format!("R_{i}")
        };
        println!("  {role:>3} = {c}  (common independent: {})", d.is_common_independent(c)?);
    }

    // Every invariant is re-checkable from the oracles.
    walk.verify(&d)?;
    println!("walk verified: every intermediate is common independent");
    Ok(())
}
