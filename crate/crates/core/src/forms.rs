//! Fundamental solutions of `F(x, y) = x^2 - 3axy + y^2 = m - a^2` and their
//! one-to-one correspondence with minimal triples containing `a`.
//!
//! With `N = m - a^2`, `V^2 = N / (3a + 2)` and `U^2 = N (3a + 2)`, a solution
//! `(u, v)` with `v >= 0` is fundamental exactly when
//!
//! 1. `0 < v < V`, or
//! 2. `v = 0` and `u = sqrt(N)`, or
//! 3. `v = V` and `u = (U + 3aV) / 2`.
//!
//! `V` and `U` are never materialized as reals: every comparison against
//! them is done by cross-multiplying integers.

use std::cmp::Ordering;

use crate::enumerate::{check_enum_m, MinimalSet};
use crate::error::{Error, Result};
use crate::kernel::{exact_sqrt_u128, factorize_u64, legendre5_u64};
use crate::triple::MinimalTriple;

/// The form for one `(m, a)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormContext {
    m: u64,
    a: u64,
    n: u64,
}

impl FormContext {
    /// Requires `1 <= a` and `a^2 < m`.
    pub fn new(m: u64, a: u64) -> Result<Self> {
        check_enum_m(m)?;
        if a == 0 || (a as u128) * (a as u128) >= m as u128 {
            return Err(Error::domain(format!(
                "need 0 < a and a^2 < m, got a={a}, m={m}"
            )));
        }
        Ok(FormContext { m, a, n: m - a * a })
    }

    /// Every admissible `a` for this `m`.
    pub fn all(m: u64) -> Result<Vec<FormContext>> {
        check_enum_m(m)?;
        Ok((1u64..)
            .take_while(|a| a * a < m)
            .map(|a| FormContext { m, a, n: m - a * a })
            .collect())
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    /// `N = m - a^2`.
    pub fn target(&self) -> u64 {
        self.n
    }

    /// `9a^2 - 4`.
    pub fn discriminant(&self) -> u64 {
        9 * self.a * self.a - 4
    }

    fn k(&self) -> u128 {
        3 * self.a as u128 + 2
    }

    /// Compares `x` with `V` via `x^2 (3a + 2)` against `N`.
    pub fn cmp_v(&self, x: u64) -> Ordering {
        let x = x as u128;
        (x * x * self.k()).cmp(&(self.n as u128))
    }

    /// `F(x, y)`.
    pub fn eval(&self, x: i128, y: i128) -> i128 {
        x * x - 3 * self.a as i128 * x * y + y * y
    }

    /// Which of the three characterizations `(u, v)` satisfies, if any.
    pub fn classify(&self, u: i128, v: u64) -> Option<MrsCase> {
        if self.eval(u, v as i128) != self.n as i128 {
            return None;
        }
        match (v, self.cmp_v(v)) {
            (0, _) => (u > 0 && (u * u) as u128 == self.n as u128).then_some(MrsCase::Axis),
            (_, Ordering::Less) => Some(MrsCase::Interior),
            (_, Ordering::Equal) => {
                (2 * u == v as i128 * (6 * self.a as i128 + 2)).then_some(MrsCase::Boundary)
            }
            (_, Ordering::Greater) => None,
        }
    }
}

/// The three ways a solution can be fundamental.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MrsCase {
    /// `0 < v < V`.
    Interior,
    /// `v = 0`, `u = sqrt(N)`.
    Axis,
    /// `v = V`, `u = (U + 3aV) / 2`.
    Boundary,
}

/// A fundamental solution `(u, v)`; `u` may be negative, `v >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FundamentalSolution {
    // field order gives the (v, u) sort
    pub v: u64,
    pub u: i128,
}

impl FundamentalSolution {
    pub fn new(u: i128, v: u64) -> Self {
        FundamentalSolution { v, u }
    }
}

/// All fundamental solutions for the context, sorted by `(v, u)`.
///
/// For each `v` with `v^2 (3a+2) <= N` the quadratic
/// `u^2 - 3av u + (v^2 - N) = 0` is solved through its discriminant
/// `(9a^2 - 4) v^2 + 4N`.
pub fn fundamental_solutions(ctx: &FormContext) -> Vec<FundamentalSolution> {
    let mut out = Vec::new();
    let a = ctx.a as u128;
    let n = ctx.n as u128;
    let d = 9 * a * a - 4;
    let k = ctx.k();

    if let Some(r) = exact_sqrt_u128(n) {
        out.push(FundamentalSolution::new(r as i128, 0));
    }
    let mut v: u128 = 1;
    while v * v * k <= n {
        let boundary = v * v * k == n;
        if let Some(s) = exact_sqrt_u128(d * v * v + 4 * n) {
            // s has the parity of 3av, so both roots are integers
            let t = 3 * a * v;
            let hi = ((t + s) / 2) as i128;
            let lo = (t as i128 - s as i128) / 2;
            if boundary {
                if 2 * hi == (v * (6 * a + 2)) as i128 {
                    out.push(FundamentalSolution::new(hi, v as u64));
                } else if 2 * lo == (v * (6 * a + 2)) as i128 {
                    out.push(FundamentalSolution::new(lo, v as u64));
                }
            } else {
                out.push(FundamentalSolution::new(lo, v as u64));
                out.push(FundamentalSolution::new(hi, v as u64));
            }
        }
        v += 1;
    }
    out.sort();
    out
}

/// `(a, b, c)` such that `(a, b, c)` or `(b, a, c)` is a minimal triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl TaElement {
    /// Checks the equation and minimality of the sorted pair.
    pub fn new(m: u64, a: u64, b: u64, c: u64) -> Result<Self> {
        let t = TaElement { a, b, c };
        t.to_minimal(m)?;
        Ok(t)
    }

    /// The minimal triple this element stands for.
    pub fn to_minimal(&self, m: u64) -> Result<MinimalTriple> {
        let (x, y) = if self.a <= self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        };
        MinimalTriple::new(m, x, y, self.c)
    }

    pub fn from_minimal(t: &MinimalTriple, a: u64) -> Option<Self> {
        let [x, y, c] = t.components().clone().map(|v| u64::try_from(v).ok());
        let (x, y, c) = (x?, y?, c?);
        if x == a {
            Some(TaElement { a, b: y, c })
        } else if y == a {
            Some(TaElement { a, b: x, c })
        } else {
            None
        }
    }
}

/// Image of an element of `T_a` in `S_a`:
/// `(c, b)` when `b <= V`; `(-b, c - 3ab)` when `b > V` and `c > 3ab`;
/// `(b, 0)` when `c = 3ab`.
pub fn triple_to_fundamental(ctx: &FormContext, t: &TaElement) -> Result<FundamentalSolution> {
    if t.a != ctx.a {
        return Err(Error::domain(format!(
            "({}, {}, {}) does not start with a={}",
            t.a, t.b, t.c, ctx.a
        )));
    }
    t.to_minimal(ctx.m)?;
    let base = 3 * t.a as u128 * t.b as u128;
    let c = t.c as u128;
    let s = if ctx.cmp_v(t.b) != Ordering::Greater {
        FundamentalSolution::new(t.c as i128, t.b)
    } else if c > base {
        FundamentalSolution::new(-(t.b as i128), (c - base) as u64)
    } else {
        FundamentalSolution::new(t.b as i128, 0)
    };
    if ctx.classify(s.u, s.v).is_none() {
        return Err(Error::invariant(
            "T_a -> S_a lands on a fundamental solution",
            format!("({}, {}, {}) mapped to ({}, {})", t.a, t.b, t.c, s.u, s.v),
        ));
    }
    Ok(s)
}

/// Inverse of [`triple_to_fundamental`]: `(a, u, 3au)` when `v = 0`,
/// `(a, v, u)` when `u > 0`, `(a, -u, v - 3au)` when `u < 0`.
pub fn fundamental_to_triple(ctx: &FormContext, s: &FundamentalSolution) -> Result<TaElement> {
    if ctx.classify(s.u, s.v).is_none() {
        return Err(Error::domain(format!(
            "({}, {}) is not a fundamental solution of F = {}",
            s.u, s.v, ctx.n
        )));
    }
    let a = ctx.a as i128;
    let (b, c) = if s.v == 0 {
        (s.u, 3 * a * s.u)
    } else if s.u > 0 {
        (s.v as i128, s.u)
    } else {
        (-s.u, s.v as i128 - 3 * a * s.u)
    };
    let t = TaElement {
        a: ctx.a,
        b: b as u64,
        c: c as u64,
    };
    t.to_minimal(ctx.m).map_err(|e| {
        Error::invariant(
            "S_a -> T_a lands on a minimal triple",
            format!("({}, {}) mapped to ({}, {b}, {c}): {e}", s.u, s.v, ctx.a),
        )
    })?;
    Ok(t)
}

/// `S_a` for every admissible `a`, paired with its context.
pub fn all_fundamental_solutions(m: u64) -> Result<Vec<(FormContext, Vec<FundamentalSolution>)>> {
    Ok(FormContext::all(m)?
        .into_iter()
        .map(|ctx| {
            let s = fundamental_solutions(&ctx);
            (ctx, s)
        })
        .collect())
}

/// Minimal triples recovered from fundamental solutions, independently of
/// the direct search.
pub fn enumerate_minimal_via_forms(m: u64) -> Result<MinimalSet> {
    set_from_solutions(m, &all_fundamental_solutions(m)?)
}

pub(crate) fn set_from_solutions(
    m: u64,
    per_a: &[(FormContext, Vec<FundamentalSolution>)],
) -> Result<MinimalSet> {
    let mut triples = Vec::new();
    for (ctx, sols) in per_a {
        for s in sols {
            triples.push(fundamental_to_triple(ctx, s)?.to_minimal(m)?);
        }
    }
    MinimalSet::from_triples(m, triples)
}

/// Both sides of `sum_a |S_a| = 2 #minimal - #improper`, plus the per-`a`
/// comparison `|S_a| = |T_a|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityCheck {
    pub lhs: usize,
    pub rhs: usize,
    /// `(a, |S_a|, |T_a|)` for every `a` with `a^2 < m`.
    pub per_a: Vec<(u64, usize, usize)>,
}

impl CardinalityCheck {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs && self.per_a.iter().all(|(_, s, t)| s == t)
    }
}

/// Checks the cardinality identity against the direct search.
pub fn verify_cardinality_identity(m: u64) -> Result<CardinalityCheck> {
    let set = crate::enumerate::enumerate_minimal_bruteforce(m)?;
    let per_a = all_fundamental_solutions(m)?;
    Ok(cardinality_check(&set, &per_a))
}

pub(crate) fn cardinality_check(
    set: &MinimalSet,
    per_a: &[(FormContext, Vec<FundamentalSolution>)],
) -> CardinalityCheck {
    let summary = set.summary();
    let rows: Vec<(u64, usize, usize)> = per_a
        .iter()
        .map(|(ctx, sols)| {
            let t_a = set
                .triples()
                .iter()
                .filter(|t| TaElement::from_minimal(t, ctx.a).is_some())
                .count();
            (ctx.a, sols.len(), t_a)
        })
        .collect();
    CardinalityCheck {
        lhs: rows.iter().map(|(_, s, _)| s).sum(),
        rhs: 2 * summary.total - summary.n_improper,
        per_a: rows,
    }
}

/// Number of fundamental solutions of primitive representations
/// `x^2 - 3xy + y^2 = N`, or `None` when no primitive representation exists
/// (some prime factor is a non-residue mod 5, or `25 | N`).
///
/// The symbol is taken as `(p/5)`; for odd `p` it equals `(5/p)`.
pub fn wn_count(n: u64) -> Result<Option<u64>> {
    if n < 2 {
        return Err(Error::domain(format!("N must be at least 2, got {n}")));
    }
    let f = factorize_u64(n)?
        .to_u64_pairs()
        .expect("factors of a u64 fit in u64");
    let mut five_divides = false;
    for &(p, e) in &f {
        if p == 5 {
            if e >= 2 {
                return Ok(None);
            }
            five_divides = true;
        } else if legendre5_u64(p) == -1 {
            return Ok(None);
        }
    }
    let w = f.len() as u32;
    Ok(Some(if five_divides { 1 << (w - 1) } else { 1 << w }))
}
