//! Constructing matroids and asking the basic oracle questions:
//! independence, rank, fundamental circuits, duals, truncations and
//! restrictions.
//!
//! Run with: cargo run -p dimatroid --example matroid_basics

use dimatroid::matroid::verify_matroid_axioms;
use dimatroid::{ElementSet, Matroid};

fn main() -> dimatroid::Result<()> {
    // The graphic matroid of K4. Elements are edges, listed in the order
    // 01, 02, 03, 12, 13, 23; a set is independent when it is acyclic.
    let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let star = ElementSet::from_members(6, [0, 1, 2])?;
    let triangle = ElementSet::from_members(6, [0, 1, 3])?;
    println!("star {star} independent: {}", k4.is_independent(&star)?);
    println!("triangle {triangle} independent: {}", k4.is_independent(&triangle)?);
    println!("rank of all six edges: {}", k4.rank(&k4.ground_set())?);

    // Adding edge 02 to the path {01, 12} closes the triangle; the
    // fundamental circuit recovers exactly it.
    let path = ElementSet::from_members(6, [0, 3])?;
    println!("circuit closed by edge 1: {}", k4.fundamental_circuit(&path, 1)?);

    // The dual: independent when the complement still spans. A three-edge
    // star leaves only a triangle behind, so it is dependent in the dual.
    let dual = k4.dual();
    println!("star independent in the dual: {}", dual.is_independent(&star)?);

    // Truncation caps the rank; restriction reindexes to a subset.
    let truncated = k4.truncate(2);
    println!("star independent after truncating to rank 2: {}", truncated.is_independent(&star)?);
    let on_triangle = k4.restrict(&triangle)?;
    println!("triangle restriction has rank {}", on_triangle.full_rank());

    // Explicit families are checked against the axioms on construction.
    let bad = vec![
        ElementSet::empty(4),
        ElementSet::from_members(4, [0])?,
        ElementSet::from_members(4, [1])?,
        ElementSet::from_members(4, [0, 1])?,
        ElementSet::from_members(4, [2, 3])?,
    ];
    match verify_matroid_axioms(4, &bad)? {
        Some(violation) => println!("explicit family rejected: {violation}"),
        None => println!("explicit family is a matroid"),
    }
    Ok(())
}
