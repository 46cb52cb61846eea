//! Breadth-first expansion of every solution tree for m.
//!
//! cargo run --example solution_tree -- 5 3

use markoff::{expand, roots, tree::path_string, ExpandOptions};

fn main() -> markoff::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let depth: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    for root in roots(m)? {
        let tree = expand(&root, &ExpandOptions::depth(depth))?;
        println!("tree rooted at {root}");
        for node in &tree.nodes {
            let indent = "  ".repeat(node.depth() + 1);
            let path = path_string(&node.path);
            println!(
                "{indent}{} {}",
                node.triple,
                if path.is_empty() { "root" } else { &path }
            );
        }
    }
    Ok(())
}
