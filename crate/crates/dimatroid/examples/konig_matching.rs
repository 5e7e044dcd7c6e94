//! Matching complexes of bipartite graphs are intersections of two
//! partition matroids (stars of each side, capacity one), and their cover
//! number collapses to the maximum degree.
//!
//! Run with: cargo run -p dimatroid --example konig_matching

use dimatroid::lab::checks::{check_konig, random_konig_sweep};
use dimatroid::lab::Verdict;

fn main() -> dimatroid::Result<()> {
    // A 4-cycle with sides {0, 1} and {2, 3}.
    let c4 = [(0, 2), (2, 1), (1, 3), (3, 0)];
    let result = check_konig("c4", 4, &c4, 14)?;
    println!("4-cycle: beta = {}, max degree = {}", result.certificate["beta"], result.certificate["max_degree"]);

    // A star: every edge shares the center, so the matchings are singletons.
    let star: Vec<(usize, usize)> = (1..=4).map(|leaf| (0, leaf)).collect();
    let result = check_konig("star", 5, &star, 14)?;
    println!("star K(1,4): beta = {}", result.certificate["beta"]);

    // A seeded sweep over random bipartite graphs; equality every time.
    let sweep = random_konig_sweep(2024, 25, 12)?;
    let all_hold = sweep.iter().all(|r| r.verdict == Verdict::Holds);
    println!("random sweep over {} graphs: equality everywhere = {all_hold}", sweep.len());
    Ok(())
}
