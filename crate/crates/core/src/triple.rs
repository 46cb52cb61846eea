//! Solution triples of a^2 + b^2 + c^2 = 3abc + m and the maps between them.
//!
//! Three validated wrappers, each a refinement of the previous one:
//!
//! * [`MTriple`]: any integer solution (components may be zero or negative).
//! * [`OrderedTriple`]: a solution with `0 < a <= b <= c`.
//! * [`MinimalTriple`]: an ordered solution with `c >= 3ab`.
//!
//! Components are unbounded integers because tree nodes grow doubly
//! exponentially; the parameter `m` is a native `u64`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{isqrt_floor, isqrt_u64};

/// Smallest admissible parameter.
pub const MIN_M: u64 = 2;

/// Which component a Vieta involution or sign transformation singles out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    First,
    Second,
    Third,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::First, Slot::Second, Slot::Third];

    fn index(self) -> usize {
        match self {
            Slot::First => 0,
            Slot::Second => 1,
            Slot::Third => 2,
        }
    }
}

pub(crate) fn check_m(m: u64) -> Result<()> {
    if m < MIN_M {
        return Err(Error::domain(format!(
            "m must be at least {MIN_M}, got {m}"
        )));
    }
    Ok(())
}

/// `a^2 + b^2 + c^2 - 3abc - m`.
pub fn residual(m: u64, a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a * a + b * b + c * c - 3 * a * b * c - BigInt::from(m)
}

/// An integer solution for a fixed `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MTriple {
    m: u64,
    v: [BigInt; 3],
}

impl MTriple {
    pub fn new(
        m: u64,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        check_m(m)?;
        let v = [a.into(), b.into(), c.into()];
        let r = residual(m, &v[0], &v[1], &v[2]);
        if !r.is_zero() {
            return Err(Error::NotASolution { m, residual: r });
        }
        Ok(MTriple { m, v })
    }

    /// Construction for values that satisfy the equation by algebra.
    fn derived(m: u64, v: [BigInt; 3]) -> Self {
        debug_assert!(residual(m, &v[0], &v[1], &v[2]).is_zero());
        MTriple { m, v }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> &BigInt {
        &self.v[0]
    }

    pub fn b(&self) -> &BigInt {
        &self.v[1]
    }

    pub fn c(&self) -> &BigInt {
        &self.v[2]
    }

    pub fn components(&self) -> &[BigInt; 3] {
        &self.v
    }

    /// Replace the chosen component `x` by `3yz - x`, where `y, z` are the
    /// other two. The result is again a solution, and applying the same
    /// involution twice gives back the input.
    pub fn vieta(&self, slot: Slot) -> MTriple {
        let i = slot.index();
        let mut v = self.v.clone();
        let (y, z) = (&self.v[(i + 1) % 3], &self.v[(i + 2) % 3]);
        v[i] = 3 * y * z - &self.v[i];
        MTriple::derived(self.m, v)
    }

    /// Negate the two components other than the chosen one.
    pub fn sign_transform(&self, slot: Slot) -> MTriple {
        let i = slot.index();
        let mut v = self.v.clone();
        for (j, x) in v.iter_mut().enumerate() {
            if j != i {
                *x = -&*x;
            }
        }
        MTriple::derived(self.m, v)
    }

    /// The ascending permutation. All components must be positive.
    pub fn ordered(&self) -> Result<OrderedTriple> {
        if self.v.iter().any(|x| !x.is_positive()) {
            return Err(Error::domain(format!(
                "cannot order {self}: components must be positive"
            )));
        }
        let mut v = self.v.clone();
        v.sort();
        Ok(OrderedTriple(MTriple { m: self.m, v }))
    }
}

impl fmt::Display for MTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v[0], self.v[1], self.v[2])
    }
}

/// A solution with `0 < a <= b <= c`. Sorting is lexicographic in `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTriple(MTriple);

/// Outcome of the minimality test; `phi = c - 3ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    pub phi: BigInt,
}

/// Result of descending from an ordered triple to its minimal triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub minimal: MinimalTriple,
    /// Ordered triples visited after the start, ending with the minimal one.
    pub path: Vec<OrderedTriple>,
}

impl OrderedTriple {
    pub fn new(
        m: u64,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        let t = MTriple::new(m, a, b, c)?;
        let [a, b, c] = t.components();
        if !(a.is_positive() && a <= b && b <= c) {
            return Err(Error::domain(format!("{t} is not ordered and positive")));
        }
        Ok(OrderedTriple(t))
    }

    /// From components already known to be positive, ascending, and a solution.
    pub(crate) fn from_parts(m: u64, a: BigInt, b: BigInt, c: BigInt) -> Self {
        debug_assert!(a.is_positive() && a <= b && b <= c);
        OrderedTriple(MTriple::derived(m, [a, b, c]))
    }

    pub fn as_triple(&self) -> &MTriple {
        &self.0
    }

    pub fn m(&self) -> u64 {
        self.0.m
    }

    pub fn a(&self) -> &BigInt {
        self.0.a()
    }

    pub fn b(&self) -> &BigInt {
        self.0.b()
    }

    pub fn c(&self) -> &BigInt {
        self.0.c()
    }

    pub fn components(&self) -> &[BigInt; 3] {
        self.0.components()
    }

    /// Largest component.
    pub fn largest(&self) -> &BigInt {
        self.c()
    }

    /// Not pairwise distinct.
    pub fn is_improper(&self) -> bool {
        let [a, b, c] = self.components();
        a == b || b == c
    }

    /// Evaluates both `3ab <= c` and `a^2 + b^2 <= m`; they must agree.
    pub fn minimality(&self) -> Result<Minimality> {
        let [a, b, c] = self.components();
        let phi: BigInt = c - 3 * a * b;
        let by_definition = !phi.is_negative();
        let by_norm = a * a + b * b <= BigInt::from(self.m());
        if by_definition != by_norm {
            return Err(Error::invariant(
                "minimality: 3ab <= c iff a^2+b^2 <= m",
                format!("{self} with m={}: phi={phi}", self.m()),
            ));
        }
        Ok(Minimality {
            minimal: by_definition,
            phi,
        })
    }

    /// Apply the third Vieta involution and re-order until the image would
    /// no longer be positive. Terminates because the largest component
    /// strictly drops at every step.
    pub fn descend(&self) -> Result<Descent> {
        let mut cur = self.clone();
        let mut path = Vec::new();
        loop {
            let [a, b, c] = cur.components();
            let next_c: BigInt = 3 * a * b - c;
            if !next_c.is_positive() {
                break;
            }
            let next = MTriple::derived(cur.m(), [a.clone(), b.clone(), next_c]).ordered()?;
            if next.largest() >= cur.largest() {
                return Err(Error::invariant(
                    "3ab < b + c for ordered triples",
                    format!("descent from {cur} did not shrink"),
                ));
            }
            path.push(next.clone());
            cur = next;
        }
        let minimal = MinimalTriple::try_from(cur)?;
        Ok(Descent { minimal, path })
    }
}

impl fmt::Display for OrderedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of distinct minimal triples among a triple and its two
/// order-neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    One = 1,
    Two = 2,
    Three = 3,
}

impl Order {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    fn from_count(n: usize) -> Option<Order> {
        match n {
            1 => Some(Order::One),
            2 => Some(Order::Two),
            3 => Some(Order::Three),
            _ => None,
        }
    }
}

/// An ordered solution with `c >= 3ab`, carrying `phi = c - 3ab`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalTriple {
    t: OrderedTriple,
    phi: BigInt,
}

impl TryFrom<OrderedTriple> for MinimalTriple {
    type Error = Error;

    fn try_from(t: OrderedTriple) -> Result<Self> {
        let Minimality { minimal, phi } = t.minimality()?;
        if !minimal {
            return Err(Error::domain(format!(
                "{t} is not minimal for m={} (3ab > c)",
                t.m()
            )));
        }
        Ok(MinimalTriple { t, phi })
    }
}

impl MinimalTriple {
    pub fn new(
        m: u64,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        OrderedTriple::new(m, a, b, c)?.try_into()
    }

    pub fn ordered(&self) -> &OrderedTriple {
        &self.t
    }

    pub fn m(&self) -> u64 {
        self.t.m()
    }

    pub fn a(&self) -> &BigInt {
        self.t.a()
    }

    pub fn b(&self) -> &BigInt {
        self.t.b()
    }

    pub fn c(&self) -> &BigInt {
        self.t.c()
    }

    pub fn components(&self) -> &[BigInt; 3] {
        self.t.components()
    }

    pub fn phi(&self) -> &BigInt {
        &self.phi
    }

    /// Ordered improper triples always have `a = b`.
    pub fn is_improper(&self) -> bool {
        self.a() == self.b()
    }

    /// The two neighbouring minimal triples `o(phi, a, 3a phi + b)` and
    /// `o(phi, b, 3b phi + a)`. Only meaningful when `phi > 0`.
    pub fn order_neighbours(&self) -> Result<[MinimalTriple; 2]> {
        let (a, b, phi) = (self.a(), self.b(), &self.phi);
        let m = self.m();
        let first = MTriple::derived(m, [phi.clone(), a.clone(), 3 * a * phi + b]);
        let second = MTriple::derived(m, [phi.clone(), b.clone(), 3 * b * phi + a]);
        Ok([
            MinimalTriple::try_from(first.ordered()?)?,
            MinimalTriple::try_from(second.ordered()?)?,
        ])
    }

    /// The same neighbours reached through compositions of the involutions:
    /// `S1 V2 V3` and `S2 V1 V3`.
    pub fn order_neighbours_by_involutions(&self) -> [MTriple; 2] {
        let v3 = self.t.as_triple().vieta(Slot::Third);
        [
            v3.vieta(Slot::Second).sign_transform(Slot::First),
            v3.vieta(Slot::First).sign_transform(Slot::Second),
        ]
    }

    /// 1 when `phi = 0`, else `#{a, b, phi}`; cross-checked against the
    /// count of distinct triples among this one and its two neighbours.
    pub fn ord(&self) -> Result<Order> {
        if self.phi.is_zero() {
            return Ok(Order::One);
        }
        let mut values = vec![self.a(), self.b(), &self.phi];
        values.sort();
        values.dedup();
        let by_values = values.len();

        let [n1, n2] = self.order_neighbours()?;
        let mut triples = vec![self.t.clone(), n1.t, n2.t];
        triples.sort();
        triples.dedup();
        let by_triples = triples.len();

        if by_values != by_triples {
            return Err(Error::invariant(
                "ord(a,b,c) = #{a, b, phi}",
                format!("{self}: {by_values} distinct values but {by_triples} distinct triples"),
            ));
        }
        Order::from_count(by_values)
            .ok_or_else(|| Error::invariant("order is 1, 2 or 3", format!("{self}")))
    }

    /// The triple its solution tree grows from: itself when proper,
    /// `(a, c, 3ac - b)` when improper.
    pub fn root(&self) -> OrderedTriple {
        if !self.t.is_improper() {
            return self.t.clone();
        }
        let (a, b, c) = (self.a(), self.b(), self.c());
        OrderedTriple::from_parts(self.m(), a.clone(), c.clone(), 3 * a * c - b)
    }

    /// For improper `(a, a, c)`: the factors `(3c - 2, 3c - 9a^2 + 2)` whose
    /// product is `9m - 4`.
    pub fn improper_factors(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_improper() {
            return None;
        }
        let (a, c) = (self.a(), self.c());
        Some((3 * c - 2, 3 * c - 9 * a * a + 2))
    }

    /// Re-derives the size bounds every minimal triple must obey, in exact
    /// integer form: `a^2 + b^2 <= m`, `a <= isqrt(m/2)`, `c > isqrt(m)`,
    /// `c < m` unless `c = 3ab`, and `3ab <= c <= 3ab + isqrt(m - a^2 - b^2)`.
    pub fn check_bounds(&self) -> Result<()> {
        let (a, b, c) = (self.a(), self.b(), self.c());
        let m = BigInt::from(self.m());
        let fail = |what: &str| {
            Err(Error::invariant(
                "bounds on minimal triples",
                format!("{self} with m={m}: {what}"),
            ))
        };
        let norm = a * a + b * b;
        if norm > m {
            return fail("a^2+b^2 > m");
        }
        if *a > BigInt::from(isqrt_u64(self.m() / 2)) {
            return fail("a > isqrt(m/2)");
        }
        if *c <= BigInt::from(isqrt_u64(self.m())) {
            return fail("c <= isqrt(m)");
        }
        if !self.phi.is_zero() && *c >= m {
            return fail("c >= m although c != 3ab");
        }
        let slack = isqrt_floor(&(&m - &norm))?.root;
        if self.phi.is_negative() || self.phi > BigInt::from(slack) {
            return fail("c outside [3ab, 3ab + isqrt(m-a^2-b^2)]");
        }
        Ok(())
    }
}

impl fmt::Display for MinimalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.t.fmt(f)
    }
}
