//! Density ζ, the cover number β = ⌈ζ⌉, the fractional cover number
//! β* = max(ζP, ζQ), and exact optimal fractional covers of truncations.
//!
//! Run with: cargo run -p dimatroid --example density_and_covers

use dimatroid::covers::{
    beta_matroid, beta_star, minimal_fractional_cover, zeta, zeta_truncated,
};
use dimatroid::rat::display;
use dimatroid::{Dimatroid, ElementSet, Matroid};

fn main() -> dimatroid::Result<()> {
    let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;

    // ζ maximizes |S| / rank(S); for K4 the whole edge set gives 6/3 = 2.
    let z = zeta(&k4)?;
    println!("zeta of K4's graphic matroid: {}", display(&z));
    println!("beta = ceil(zeta): {}", beta_matroid(&k4)?.value);

    // Truncating to rank g pushes the density up to n/g, exactly.
    for g in 1..=3 {
        println!("zeta after truncation to rank {g}: {}", display(&zeta_truncated(&k4, g)?));
    }

    // A dimatroid: K4's forests against one-edge-per-matching transversals.
    let matchings = [
        ElementSet::from_members(6, [0, 5])?,
        ElementSet::from_members(6, [1, 4])?,
        ElementSet::from_members(6, [2, 3])?,
    ];
    let d = Dimatroid::new(k4, Matroid::partition(6, &matchings, &[1, 1, 1])?)?;
    println!("beta* of the intersection: {}", display(&beta_star(&d)?));

    // The g = 3 truncation has an optimal fractional cover of total 6/3 = 2,
    // supported entirely on size-3 common independent sets.
    let cover = minimal_fractional_cover(&d, 3)?;
    println!("optimal fractional cover of the rank-3 truncation, total {}:", display(&cover.total));
    for entry in &cover.entries {
        println!("  weight {} on {}", display(&entry.weight), entry.edge);
    }
    cover.verify(6)?;
    println!("coverage re-verified exactly");
    Ok(())
}
