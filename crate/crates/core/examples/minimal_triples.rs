//! Minimal triples for one m, by both enumerators, grouped by order.
//!
//! cargo run --example minimal_triples -- 45

use markoff::{enumerate_minimal_bruteforce, enumerate_minimal_via_forms, Order};

fn main() -> markoff::Result<()> {
    let m: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(45);
    let direct = enumerate_minimal_bruteforce(m)?;
    let forms = enumerate_minimal_via_forms(m)?;
    assert_eq!(direct, forms, "the two enumerators disagree");

    println!("m = {m}: {} minimal triples", direct.len());
    for order in [Order::One, Order::Two, Order::Three] {
        let class = direct.class(order);
        if !class.is_empty() {
            let shown: Vec<String> = class
                .iter()
                .map(|t| format!("{t} phi={}", t.phi()))
                .collect();
            println!("  order {}: {}", order.as_u8(), shown.join(", "));
        }
    }
    let s = direct.summary();
    println!("  improper: {}", s.n_improper);
    Ok(())
}
