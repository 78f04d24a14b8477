//! Big-integer helpers: logarithms, probable primes, trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Natural logarithm of `|v|` from the bit length and the leading 64 bits.
pub fn log_abs(v: &BigInt) -> Result<f64> {
    if v.is_zero() {
        return Err(Error::LogOfZero);
    }
    let mag = v.magnitude();
    let bits = mag.bits();
    if bits <= 64 {
        return Ok((mag.to_u64().unwrap() as f64).ln());
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_u64().unwrap();
    Ok((top as f64).ln() + shift as f64 * std::f64::consts::LN_2)
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 prime bases; deterministic below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest probable prime strictly greater than `n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let mut c = n + 1u32;
    if c <= BigUint::from(2u32) {
        return BigUint::from(2u32);
    }
    if c.is_even() {
        c += 1u32;
    }
    while !is_probable_prime(&c) {
        c += 2u32;
    }
    c
}

/// Result of trial-dividing a discriminant by the primes up to a limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFactors {
    /// Primes `p` with `p²` dividing the input.
    pub square_primes: Vec<u64>,
    /// Whether the unfactored cofactor could still hide a square factor.
    pub cofactor_unresolved: bool,
}

/// Finds every prime `p ≤ limit` with `p² | v`, and decides whether the
/// remaining cofactor might contain a larger square.
pub fn square_prime_factors(v: &BigInt, primes: &[u64]) -> SquareFactors {
    let mut rest = v.magnitude().clone();
    let mut square_primes = Vec::new();
    let limit = primes.last().copied().unwrap_or(1);
    for &p in primes {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e >= 2 {
            square_primes.push(p);
        }
    }
    let lim = BigUint::from(limit);
    let cofactor_unresolved = if rest.is_one() || rest < &lim * &lim || is_probable_prime(&rest) {
        // A cofactor below limit² with no factor ≤ limit is prime (or one).
        false
    } else if rest < &lim * &lim * &lim {
        // At most two prime factors above the limit: a square only if rest is one.
        let r = rest.sqrt();
        &r * &r == rest
    } else {
        true
    };
    SquareFactors {
        square_primes,
        cofactor_unresolved,
    }
}
