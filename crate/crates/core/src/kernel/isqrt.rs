//! Integer square roots by Newton iteration. No floating point anywhere:
//! every bound comparison downstream depends on these being exact.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Floor square root together with an exactness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sqrt {
    pub root: BigUint,
    pub exact: bool,
}

/// `r` with `r^2 <= n < (r+1)^2`. Negative input is a domain error.
pub fn isqrt_floor(n: &BigInt) -> Result<Sqrt> {
    if n.sign() == Sign::Minus {
        return Err(Error::domain(format!("isqrt of negative number {n}")));
    }
    let n = n.magnitude();
    let root = isqrt_big(n);
    let exact = &root * &root == *n;
    Ok(Sqrt { root, exact })
}

pub fn isqrt_big(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // Seed above the root, then Newton decreases monotonically to the floor.
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    loop {
        let next = &x + 1u32;
        if &next * &next <= *n {
            x = next;
        } else {
            break;
        }
    }
    x
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

#[inline]
pub fn isqrt_u64(n: u64) -> u64 {
    isqrt_u128(n as u128) as u64
}

const fn residue_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut x = 0;
    while x < M {
        t[(x * x) % M] = true;
        x += 1;
    }
    t
}

static SQ_MOD_64: [bool; 64] = residue_table::<64>();
static SQ_MOD_63: [bool; 63] = residue_table::<63>();
static SQ_MOD_65: [bool; 65] = residue_table::<65>();
static SQ_MOD_11: [bool; 11] = residue_table::<11>();

/// Exact square root of `n` if it is a perfect square.
///
/// Cheap residue filters reject most non-squares before the Newton step;
/// this sits on the hot path of every enumerator.
#[inline]
pub fn exact_sqrt_u128(n: u128) -> Option<u128> {
    if !SQ_MOD_64[(n & 63) as usize] {
        return None;
    }
    if !SQ_MOD_63[(n % 63) as usize]
        || !SQ_MOD_65[(n % 65) as usize]
        || !SQ_MOD_11[(n % 11) as usize]
    {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}
