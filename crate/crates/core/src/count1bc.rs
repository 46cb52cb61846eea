//! Existence and number of minimal triples of the form `(1, b, c)`.
//!
//! Write `m - 1 = 5^(2 alpha) A^2 B^2 C` with `C` square-free, every prime
//! of `A` a non-residue mod 5 and every prime of `B` a residue. Such triples
//! exist iff no prime of `C` is a non-residue, and then there are
//! `sum over d | B of 2^(w(B^2 C / d^2) + l - 1)` of them, `l = (C/5)`.

use crate::enumerate::MinimalSet;
use crate::error::{Error, Result};
use crate::forms::enumerate_minimal_via_forms;
use crate::kernel::{factorize_u64, legendre5_u64};
use crate::triple::{check_m, MinimalTriple};

/// The canonical decomposition `m - 1 = S^2 C = 5^(2 alpha) A^2 B^2 C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition1bc {
    pub alpha: u32,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub s: u64,
    /// Factorization of `B`, used to walk its divisors.
    b_factors: Vec<(u64, u32)>,
    /// Distinct primes of `C`.
    c_primes: Vec<u64>,
}

/// Outcome of [`decompose_m1`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposed {
    Exists(Decomposition1bc),
    /// A non-residue prime with odd exponent divides the square-free part.
    Obstructed {
        prime: u64,
    },
}

/// Factor `m - 1` and split it per residue class of its primes mod 5.
pub fn decompose_m1(m: u64) -> Result<Decomposed> {
    check_m(m)?;
    let f = factorize_u64(m - 1)?
        .to_u64_pairs()
        .expect("factors of a u64 fit in u64");
    let (mut alpha, mut a, mut b, mut c) = (0u32, 1u64, 1u64, 1u64);
    let mut b_factors = Vec::new();
    let mut c_primes = Vec::new();
    for (p, e) in f {
        let half = e / 2;
        if e % 2 == 1 {
            if legendre5_u64(p) == -1 {
                return Ok(Decomposed::Obstructed { prime: p });
            }
            c *= p;
            c_primes.push(p);
        }
        match legendre5_u64(p) {
            0 => alpha = half,
            1 => {
                b *= p.pow(half);
                if half > 0 {
                    b_factors.push((p, half));
                }
            }
            _ => a *= p.pow(half),
        }
    }
    let s = 5u64.pow(alpha) * a * b;
    let d = Decomposition1bc {
        alpha,
        a,
        b,
        c,
        s,
        b_factors,
        c_primes,
    };
    d.check(m)?;
    Ok(Decomposed::Exists(d))
}

impl Decomposition1bc {
    /// Re-multiplies and re-verifies every condition on the parts.
    fn check(&self, m: u64) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::invariant(
                "m-1 = 5^(2 alpha) A^2 B^2 C",
                format!("m={m}: {what} in {self:?}"),
            ))
        };
        let prod = (self.s as u128).pow(2) * self.c as u128;
        if prod != (m - 1) as u128 || self.s != 5u64.pow(self.alpha) * self.a * self.b {
            return fail("product mismatch");
        }
        if self.a.is_multiple_of(5) || self.b.is_multiple_of(5) || self.c.is_multiple_of(25) {
            return fail("misplaced factor 5");
        }
        let primes = |n: u64| -> Vec<u64> {
            factorize_u64(n)
                .ok()
                .and_then(|f| f.to_u64_pairs())
                .map(|v| v.into_iter().map(|(p, _)| p).collect())
                .unwrap_or_default()
        };
        let c_f = factorize_u64(self.c)
            .ok()
            .and_then(|f| f.to_u64_pairs())
            .unwrap_or_default();
        if c_f.iter().any(|&(_, e)| e > 1) {
            return fail("C not square-free");
        }
        if c_f.iter().any(|&(p, _)| legendre5_u64(p) == -1) {
            return fail("non-residue prime in C");
        }
        if primes(self.b).iter().any(|&p| legendre5_u64(p) != 1) {
            return fail("non-residue prime in B");
        }
        if primes(self.a).iter().any(|&p| legendre5_u64(p) != -1) {
            return fail("residue prime in A");
        }
        Ok(())
    }

    /// Divisors of `B`, ascending.
    pub fn divisors_of_b(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.b_factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1;
                for _ in 0..=e {
                    next.push(d * pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }

    /// `w(B^2 C / d^2)` for a divisor `d` of `B`.
    fn w_for_divisor(&self, d: u64) -> u32 {
        let from_b = self
            .b_factors
            .iter()
            .filter(|&&(p, e)| {
                // exponent of p in B/d is positive
                let mut v = 0;
                let mut x = d;
                while x.is_multiple_of(p) {
                    x /= p;
                    v += 1;
                }
                v < e
            })
            .filter(|&&(p, _)| !self.c_primes.contains(&p))
            .count();
        (self.c_primes.len() + from_b) as u32
    }
}

/// Whether some `m`-Markoff triple `(1, b, c)` exists.
pub fn exists_1bc(m: u64) -> Result<bool> {
    Ok(matches!(decompose_m1(m)?, Decomposed::Exists(_)))
}

/// The closed-form count, with one term per divisor of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub exists: bool,
    pub count: u64,
    /// `(C/5)` for the square-free part of `m - 1`.
    pub l: i8,
    /// `(d, 2^(w(B^2 C/d^2) + l - 1))` for each divisor `d` of `B`, ascending.
    pub terms: Vec<(u64, u64)>,
    pub obstruction: Option<u64>,
}

pub fn count_1bc(m: u64) -> Result<CountResult> {
    let d = match decompose_m1(m)? {
        Decomposed::Exists(d) => d,
        Decomposed::Obstructed { prime } => {
            return Ok(CountResult {
                exists: false,
                count: 0,
                l: legendre5_u64(squarefree_part(m - 1)?),
                terms: Vec::new(),
                obstruction: Some(prime),
            })
        }
    };
    let l = legendre5_u64(d.c);
    if l == -1 {
        return Err(Error::invariant(
            "(C/5) is 0 or 1 when triples (1,b,c) exist",
            format!("m={m}, C={}", d.c),
        ));
    }
    let terms: Vec<(u64, u64)> = d
        .divisors_of_b()
        .into_iter()
        .map(|div| {
            let exp = d.w_for_divisor(div) as i32 + l as i32 - 1;
            // w = 0 forces C = 1 and l = 1, so the exponent is never negative
            (div, 1u64 << exp.max(0))
        })
        .collect();
    Ok(CountResult {
        exists: true,
        count: terms.iter().map(|(_, t)| t).sum(),
        l,
        terms,
        obstruction: None,
    })
}

fn squarefree_part(n: u64) -> Result<u64> {
    Ok(factorize_u64(n)?
        .to_u64_pairs()
        .expect("fits")
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product())
}

/// Minimal triples with first component 1, taken from the forms enumerator.
pub fn enumerate_1bc(m: u64) -> Result<Vec<MinimalTriple>> {
    Ok(first_component_one(&enumerate_minimal_via_forms(m)?))
}

pub(crate) fn first_component_one(set: &MinimalSet) -> Vec<MinimalTriple> {
    set.triples()
        .iter()
        .filter(|t| *t.a() == 1.into())
        .cloned()
        .collect()
}
