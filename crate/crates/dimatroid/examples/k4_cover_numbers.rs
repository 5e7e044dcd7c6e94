//! The tight cover-number instance on K4: two matroids that each need two
//! independent sets to cover the edges, whose intersection needs three.
//!
//! Run with: cargo run -p dimatroid --example k4_cover_numbers

use dimatroid::covers::{beta_exact, beta_matroid};
use dimatroid::{Dimatroid, ElementSet, Matroid};

fn main() -> dimatroid::Result<()> {
    let graphic = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let matchings = [
        ElementSet::from_members(6, [0, 5])?, // {01, 23}
        ElementSet::from_members(6, [1, 4])?, // {02, 13}
        ElementSet::from_members(6, [2, 3])?, // {03, 12}
    ];
    let one_per_matching = Matroid::partition(6, &matchings, &[1, 1, 1])?;

    let bp = beta_matroid(&graphic)?;
    println!("covering the edges by forests needs {} sets:", bp.value);
    for w in &bp.witness {
        println!("  {w}");
    }

    let bq = beta_matroid(&one_per_matching)?;
    println!("covering by partial transversals of the matchings needs {} sets", bq.value);

    // Sets that are simultaneously forests and partial transversals are a
    // much poorer family: the cover number jumps to 3.
    let d = Dimatroid::new(graphic, one_per_matching)?;
    let bd = beta_exact(&d)?;
    println!("covering by common independent sets needs {} ({}):", bd.value, bd.method);
    for w in &bd.witness {
        println!("  {w}");
    }
    assert_eq!((bp.value, bq.value, bd.value), (2, 2, 3));
    println!("the +1 jump is tight: 3 = max(2, 2) + 1");
    Ok(())
}
