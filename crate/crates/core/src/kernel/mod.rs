//! Exact integer primitives shared by the rest of the crate.

mod isqrt;
mod primes;
mod residue;

pub use isqrt::{exact_sqrt_u128, isqrt_big, isqrt_floor, isqrt_u128, isqrt_u64, Sqrt};
pub use primes::{factorize, factorize_u64, is_prime_u64, primality, Factorization, Primality};
pub use residue::{
    is_sum_of_two_squares, legendre5, legendre5_u64, qr_solvable_mod4n, two_square_reps,
};
