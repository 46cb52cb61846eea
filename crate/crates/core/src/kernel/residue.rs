//! Quadratic residues: the Legendre symbol modulo 5, sums of two squares
//! and solvability of x^2 = d (mod 4N).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::isqrt::{exact_sqrt_u128, isqrt_u64};
use super::primes::factorize;
use crate::error::{Error, Result};

/// (n/5): 0 when 5 | n, +1 for n = +-1 (mod 5), -1 for n = +-2 (mod 5).
///
/// For an odd prime p this is also (5/p), since 5 = 1 (mod 4).
pub fn legendre5(n: &BigInt) -> i8 {
    let r = n.mod_floor(&BigInt::from(5)).to_u8().unwrap_or(0);
    legendre5_residue(r)
}

pub fn legendre5_u64(n: u64) -> i8 {
    legendre5_residue((n % 5) as u8)
}

fn legendre5_residue(r: u8) -> i8 {
    match r {
        0 => 0,
        1 | 4 => 1,
        _ => -1,
    }
}

/// All `(a, b)` with `0 < a <= b` and `a^2 + b^2 = m`, ascending in `a`.
pub fn two_square_reps(m: u64) -> Vec<(u64, u64)> {
    let mut reps = Vec::new();
    let mut a = 1u64;
    while 2 * (a as u128) * (a as u128) <= m as u128 {
        if let Some(b) = exact_sqrt_u128((m - a * a) as u128) {
            reps.push((a, b as u64));
        }
        a += 1;
    }
    reps
}

/// True when `m` is a sum of two non-zero squares.
pub fn is_sum_of_two_squares(m: u64) -> bool {
    let mut a = 1u64;
    while 2 * (a as u128) * (a as u128) <= m as u128 {
        let r = m - a * a;
        let b = isqrt_u64(r);
        if b * b == r {
            return true;
        }
        a += 1;
    }
    false
}

const EXHAUSTIVE_LIMIT: u64 = 100_000;

/// Whether `x^2 = d (mod 4N)` has a solution; `d` must be 0 or 1 mod 4.
///
/// Small moduli are scanned over `x` in `[0, 2N)` (x and x+2N have equal
/// squares mod 4N). Larger ones are decided prime power by prime power.
pub fn qr_solvable_mod4n(d: &BigInt, n: &BigUint) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::domain("modulus N must be at least 1"));
    }
    let r4 = d.mod_floor(&BigInt::from(4));
    if !(r4.is_zero() || r4.is_one()) {
        return Err(Error::domain(format!("{d} is not 0 or 1 mod 4")));
    }
    match n.to_u64() {
        Some(small) if small <= EXHAUSTIVE_LIMIT => Ok(qr_scan(d, small)),
        _ => qr_by_prime_powers(d, n),
    }
}

pub(crate) fn qr_scan(d: &BigInt, n: u64) -> bool {
    let modulus = 4 * n;
    let target = d
        .mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("reduced below modulus");
    (0..2 * n).any(|x| (x as u128 * x as u128 % modulus as u128) as u64 == target)
}

pub(crate) fn qr_by_prime_powers(d: &BigInt, n: &BigUint) -> Result<bool> {
    let f = factorize(n)?;
    let mut two_exp = 2u32;
    for (p, e) in &f.factors {
        if *p == BigUint::from(2u32) {
            two_exp += e;
        } else if !square_mod_odd_prime_power(d, p, *e) {
            return Ok(false);
        }
    }
    Ok(square_mod_power_of_two(d, two_exp))
}

/// Is `d` a square modulo `p^e` for an odd prime `p`?
///
/// Writing `d = p^j d'` with `p` not dividing `d'`: solvable iff `j >= e`,
/// or `j` is even and `d'` is a residue mod `p` (Hensel lifts it).
fn square_mod_odd_prime_power(d: &BigInt, p: &BigUint, e: u32) -> bool {
    let pe = BigInt::from(p.pow(e));
    let mut rest = d.mod_floor(&pe);
    if rest.is_zero() {
        return true;
    }
    let p = BigInt::from(p.clone());
    let mut j = 0u32;
    while (&rest % &p).is_zero() {
        rest /= &p;
        j += 1;
    }
    if j % 2 == 1 {
        return false;
    }
    // Euler's criterion
    let exp = (&p - 1u32) >> 1u32;
    rest.mod_floor(&p).modpow(&exp, &p).is_one()
}

/// Is `d` a square modulo `2^e`?
fn square_mod_power_of_two(d: &BigInt, e: u32) -> bool {
    let modulus = BigInt::one() << e;
    let mut rest = d.mod_floor(&modulus);
    if rest.is_zero() {
        return true;
    }
    let j = rest.trailing_zeros().unwrap_or(0) as u32;
    if j % 2 == 1 {
        return false;
    }
    rest >>= j;
    let left = e - j;
    let odd = rest.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
    match left {
        0 | 1 => true,
        2 => odd % 4 == 1,
        _ => odd == 1,
    }
}
