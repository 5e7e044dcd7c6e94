//! The JSON instance format: a matroid spec `p`, an optional partner `q`,
//! and an optional partition. Specs nest (dual, truncation, restriction)
//! and unknown fields are rejected.
//!
//! Run with: cargo run -p dimatroid --example instance_files

use dimatroid::covers::beta_exact;
use dimatroid::lab::Instance;

fn main() -> dimatroid::Result<()> {
    let text = r#"{
        "label": "k4-vs-matchings",
        "p": {"type": "graphic", "vertices": 4,
              "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},
        "q": {"type": "partition", "n": 6,
              "parts": [[0,5],[1,4],[2,3]], "capacities": [1,1,1]},
        "partition": [[0,1,4,5],[2,3]]
    }"#;
    let instance = Instance::from_json(text)?;
    println!("parsed {:?}", instance.label);

    let d = instance.dimatroid()?;
    println!("ground size {}", d.ground_size());
    println!("cover number of the intersection: {}", beta_exact(&d)?.value);

    let part = instance.partition()?.expect("declared above");
    println!("partition blocks: {:?}", part.blocks().iter().map(ToString::to_string).collect::<Vec<_>>());

    // Nested specs: the dual of a truncation of a uniform matroid.
    let nested = r#"{
        "label": "nested",
        "p": {"type": "dual",
              "inner": {"type": "truncation", "g": 2,
                        "inner": {"type": "uniform", "n": 5, "r": 3}}}
    }"#;
    let m = Instance::from_json(nested)?.matroid_p()?;
    println!("nested spec builds a matroid of rank {}", m.full_rank());

    // Strictness: a typo'd field is an error, not a silent ignore.
    let bad = text.replace("\"capacities\"", "\"capacity\"");
    match Instance::from_json(&bad) {
        Err(e) => println!("rejected malformed instance: {e}"),
        Ok(_) => unreachable!("unknown fields must be rejected"),
    }
    Ok(())
}
