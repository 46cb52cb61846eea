//! Descend a solution to its minimal triple and find its place in a tree.
//!
//! cargo run --example locate_triple -- 5 2 204 1189

use markoff::{locate, tree::path_string, OrderedTriple};

fn main() -> markoff::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let [m, a, b, c] = args[..] else {
        let t = OrderedTriple::new(5, 2, 204, 1189)?;
        return show(&t);
    };
    show(&OrderedTriple::new(m, a, b, c)?)
}

fn show(t: &OrderedTriple) -> markoff::Result<()> {
    let descent = t.descend()?;
    println!("{t} descends through:");
    for step in &descent.path {
        println!("  {step}");
    }
    println!(
        "minimal triple {} (order {})",
        descent.minimal,
        descent.minimal.ord()?.as_u8()
    );

    let loc = locate(t)?;
    if loc.above_root {
        println!("{t} is improper and sits above the root {}", loc.root);
    } else {
        println!("root {}, path {:?}", loc.root, path_string(&loc.path));
    }
    Ok(())
}
