//! Closed-form count of minimal triples (1, b, c), checked against
//! enumeration.
//!
//! cargo run --example count_1bc -- 2300

use markoff::{count_1bc, decompose_m1, enumerate_1bc, Decomposed};

fn main() -> markoff::Result<()> {
    let m: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2300);

    match decompose_m1(m)? {
        Decomposed::Exists(d) => println!(
            "m - 1 = 5^(2*{}) * {}^2 * {}^2 * {}",
            d.alpha, d.a, d.b, d.c
        ),
        Decomposed::Obstructed { prime } => {
            println!("no (1, b, c) triples: {prime} divides m - 1 to an odd power")
        }
    }

    let count = count_1bc(m)?;
    println!("l = {}, count = {}", count.l, count.count);
    for (d, term) in &count.terms {
        println!("  d = {d}: {term}");
    }

    let found = enumerate_1bc(m)?;
    let shown: Vec<String> = found.iter().map(ToString::to_string).collect();
    println!("enumerated: {}", shown.join(", "));
    assert_eq!(found.len() as u64, count.count);
    Ok(())
}
