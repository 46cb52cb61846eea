//! Exhaustive enumeration of the minimal triples for one `m`.
//!
//! The scan walks `a <= isqrt(m/2)`, `a <= b <= isqrt(m - a^2)` and
//! `3ab <= c <= 3ab + isqrt(m - a^2 - b^2)`. Inside those bounds all
//! products fit comfortably in 128 bits as long as `m < 2^60`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{exact_sqrt_u128, isqrt_u128};
use crate::triple::{check_m, MinimalTriple, Order};

/// Largest `m` accepted by the enumerators.
pub const MAX_ENUM_M: u64 = 1 << 60;

/// Above this, the innermost `c` scan is replaced by solving the quadratic.
const QUADRATIC_C_THRESHOLD: u64 = 100_000;

pub(crate) fn check_enum_m(m: u64) -> Result<()> {
    check_m(m)?;
    if m >= MAX_ENUM_M {
        return Err(Error::domain(format!(
            "m={m} is beyond the enumeration range (m < 2^60)"
        )));
    }
    Ok(())
}

/// All minimal triples for one `m`, sorted lexicographically, with the
/// partition into orders 1, 2 and 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSet {
    m: u64,
    triples: Vec<MinimalTriple>,
    orders: Vec<Order>,
}

/// Cardinalities of a [`MinimalSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountSummary {
    pub total: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n_improper: usize,
}

impl MinimalSet {
    /// Sorts, deduplicates and classifies. Fails if a triple belongs to a
    /// different `m` or if the order classes break their divisibility laws.
    pub fn from_triples(m: u64, mut triples: Vec<MinimalTriple>) -> Result<Self> {
        if let Some(t) = triples.iter().find(|t| t.m() != m) {
            return Err(Error::domain(format!(
                "{t} belongs to m={}, not {m}",
                t.m()
            )));
        }
        triples.sort();
        triples.dedup();
        let orders = triples
            .iter()
            .map(MinimalTriple::ord)
            .collect::<Result<Vec<_>>>()?;
        let set = MinimalSet { m, triples, orders };
        let s = set.summary();
        if !s.n2.is_multiple_of(2) || !s.n3.is_multiple_of(3) {
            return Err(Error::invariant(
                "#O2(m) even and #O3(m) divisible by 3",
                format!("m={m}: n2={}, n3={}", s.n2, s.n3),
            ));
        }
        Ok(set)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn triples(&self) -> &[MinimalTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples paired with their order.
    pub fn iter(&self) -> impl Iterator<Item = (&MinimalTriple, Order)> {
        self.triples.iter().zip(self.orders.iter().copied())
    }

    /// The members of one order class, in lexicographic order.
    pub fn class(&self, order: Order) -> Vec<&MinimalTriple> {
        self.iter()
            .filter(|(_, o)| *o == order)
            .map(|(t, _)| t)
            .collect()
    }

    pub fn summary(&self) -> CountSummary {
        let mut s = CountSummary {
            total: self.triples.len(),
            ..Default::default()
        };
        for (t, o) in self.iter() {
            match o {
                Order::One => s.n1 += 1,
                Order::Two => s.n2 += 1,
                Order::Three => s.n3 += 1,
            }
            if t.is_improper() {
                s.n_improper += 1;
            }
        }
        s
    }
}

impl fmt::Display for MinimalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.triples.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// How the innermost loop finds `c` for fixed `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CSearch {
    /// Walk `c` over its whole admissible interval.
    Scan,
    /// Solve `c^2 - 3ab c - (m - a^2 - b^2) = 0` directly.
    Quadratic,
}

/// Options for [`enumerate_minimal_bruteforce_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BruteForceOptions {
    /// Return immediately for `m = 3 (mod 4)`, where no solutions exist.
    pub skip_3_mod_4: bool,
}

/// Every minimal triple for `m`, by direct search inside the size bounds.
pub fn enumerate_minimal_bruteforce(m: u64) -> Result<MinimalSet> {
    enumerate_minimal_bruteforce_with(m, BruteForceOptions::default())
}

pub fn enumerate_minimal_bruteforce_with(m: u64, opts: BruteForceOptions) -> Result<MinimalSet> {
    check_enum_m(m)?;
    if opts.skip_3_mod_4 && m % 4 == 3 {
        return MinimalSet::from_triples(m, Vec::new());
    }
    let search = if m > QUADRATIC_C_THRESHOLD {
        CSearch::Quadratic
    } else {
        CSearch::Scan
    };
    let raw = bruteforce_raw(m, search);
    to_set(m, raw)
}

pub(crate) fn to_set(m: u64, raw: Vec<[u64; 3]>) -> Result<MinimalSet> {
    let triples = raw
        .into_iter()
        .map(|[a, b, c]| MinimalTriple::new(m, a, b, c))
        .collect::<Result<Vec<_>>>()?;
    MinimalSet::from_triples(m, triples)
}

pub(crate) fn bruteforce_raw(m: u64, search: CSearch) -> Vec<[u64; 3]> {
    let m = m as u128;
    let mut out = Vec::new();
    let mut a: u128 = 1;
    while 2 * a * a <= m {
        let b_max = isqrt_u128(m - a * a);
        for b in a..=b_max {
            // With phi = c - 3ab the equation reads c * phi = m - a^2 - b^2.
            let rest = m - a * a - b * b;
            let base = 3 * a * b;
            match search {
                CSearch::Scan => {
                    let c_lo = base.max(b);
                    let c_hi = base + isqrt_u128(rest);
                    for c in c_lo..=c_hi {
                        if c * (c - base) == rest {
                            out.push([a as u64, b as u64, c as u64]);
                        }
                    }
                }
                CSearch::Quadratic => {
                    if let Some(s) = exact_sqrt_u128(base * base + 4 * rest) {
                        // s >= base and s = base (mod 2)
                        let c = (base + s) / 2;
                        if c >= b {
                            out.push([a as u64, b as u64, c as u64]);
                        }
                    }
                }
            }
        }
        a += 1;
    }
    out
}
