//! Fair and almost-fair representation.
//!
//! A single matroid always has an independent set meeting every block of a
//! partition in at least ⌊|A_i|/ζ⌋ elements. For an intersection of two
//! matroids and a 2-partition, an almost δ-fair set exists with
//! δ = 1/ζ − 1/n; this example computes one and prints its audit trail.
//!
//! Run with: cargo run -p dimatroid --example fair_representation

use dimatroid::fair::{fair_rep_matroid, fair_rep_two_blocks, fairness_report, Partition};
use dimatroid::rat::display;
use dimatroid::{Dimatroid, ElementSet, Matroid};

fn main() -> dimatroid::Result<()> {
    let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let matchings = vec![
        ElementSet::from_members(6, [0, 5])?,
        ElementSet::from_members(6, [1, 4])?,
        ElementSet::from_members(6, [2, 3])?,
    ];

    // Single matroid: a forest with one edge in each perfect matching.
    let part = Partition::new(6, matchings.clone())?;
    let s = fair_rep_matroid(&k4, &part)?;
    println!("forest meeting every matching: {s}");

    // Dimatroid, 2-partition: two matchings against the third.
    let d = Dimatroid::new(k4, Matroid::partition(6, &matchings, &[1, 1, 1])?)?;
    let a = ElementSet::from_members(6, [0, 1, 4, 5])?;
    let trace = fair_rep_two_blocks(&d, &a)?;
    println!("n = {}, zeta = {}, g = {}, delta = {}",
        trace.n, display(&trace.zeta), trace.g, display(&trace.delta));
    println!("side maximizers: S = {}, T = {}", trace.s, trace.t);
    println!("chosen set: {} (chain index {})", trace.chosen, trace.chain_index);
    if let Some(walk) = &trace.walk {
        println!("reached through an exchange walk with {} intermediates", walk.intermediates.len());
    } else {
        println!("a side maximizer already qualified; no walk needed");
    }

    let report = fairness_report(&trace.chosen, &Partition::two_blocks(&a), &trace.delta)?;
    for block in &report.blocks {
        println!(
            "  block {}: got {}, fair needs {}, almost-fair needs {} -> {:?}",
            block.block, block.achieved, block.required_fair, block.required_almost, block.verdict
        );
    }
    Ok(())
}
