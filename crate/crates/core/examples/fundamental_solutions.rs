//! Fundamental solutions of x^2 - 3axy + y^2 = m - a^2 and the triples
//! they correspond to.
//!
//! cargo run --example fundamental_solutions -- 32

use markoff::forms::{all_fundamental_solutions, verify_cardinality_identity, wn_count};

fn main() -> markoff::Result<()> {
    let m: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(32);
    for (ctx, sols) in all_fundamental_solutions(m)? {
        println!(
            "a = {}, N = {}, discriminant {}",
            ctx.a(),
            ctx.target(),
            ctx.discriminant()
        );
        for s in &sols {
            let t = markoff::fundamental_to_triple(&ctx, s)?;
            let case = ctx.classify(s.u, s.v).expect("fundamental");
            println!(
                "  (u, v) = ({}, {}) {case:?} -> ({}, {}, {})",
                s.u, s.v, t.a, t.b, t.c
            );
        }
    }

    let check = verify_cardinality_identity(m)?;
    println!(
        "sum |S_a| = {}, 2 #minimal - #improper = {}",
        check.lhs, check.rhs
    );

    if m > 2 {
        match wn_count(m - 1)? {
            Some(w) => println!(
                "primitive fundamental solutions of x^2 - 3xy + y^2 = {}: {w}",
                m - 1
            ),
            None => println!("x^2 - 3xy + y^2 = {} has no primitive solutions", m - 1),
        }
    }
    Ok(())
}
