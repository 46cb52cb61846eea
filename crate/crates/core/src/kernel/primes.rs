//! Primality and factorization.
//!
//! Trial division by the primes below 10^6, then Pollard rho with Brent's
//! cycle detection on whatever cofactor remains. Miller-Rabin with the
//! first twelve prime bases is deterministic below 2^64; above that the
//! answer is only "probable" and the factorization says so.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    /// Passed every Miller-Rabin base but is at least 2^64.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return Primality::Composite;
    }
    Primality::ProbablePrime
}

/// Prime factorization, ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub factors: Vec<(BigUint, u32)>,
    /// Some factor is only a probable prime (it is at least 2^64).
    pub probable: bool,
}

impl Factorization {
    /// Number of distinct primes, w(n).
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// The factorization as native pairs, when every prime fits in 64 bits.
    pub fn to_u64_pairs(&self) -> Option<Vec<(u64, u32)>> {
        self.factors
            .iter()
            .map(|(p, e)| p.to_u64().map(|p| (p, *e)))
            .collect()
    }
}

pub fn factorize_u64(n: u64) -> Result<Factorization> {
    factorize(&BigUint::from(n))
}

pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut found: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    if let Some(mut r) = rest.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > r {
                break;
            }
            while r % p == 0 {
                found.push(BigUint::from(p));
                r /= p;
            }
        }
        if r > 1 {
            split_u64(r, &mut found);
        }
    } else {
        for &p in small_primes() {
            let p = BigUint::from(p);
            if &p * &p > rest {
                break;
            }
            while (&rest % &p).is_zero() {
                rest /= &p;
                found.push(p.clone());
            }
        }
        if !rest.is_one() {
            split_big(rest, &mut found);
        }
    }

    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    let probable = factors
        .iter()
        .any(|(p, _)| primality(p) == Primality::ProbablePrime);
    Ok(Factorization { factors, probable })
}

fn split_u64(n: u64, out: &mut Vec<BigUint>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(BigUint::from(n));
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        split_u64(small, out);
        return;
    }
    if primality(&n).is_prime() {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let q = &n / &d;
    split_big(d, out);
    split_big(q, out);
}

/// A non-trivial divisor of the composite `n`.
fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
        let (mut x, mut ys);
        let mut g;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            // Batched gcd overshot; backtrack one step at a time.
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let m: u64 = 128;
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}
