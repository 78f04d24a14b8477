//! Number fields `Q[x]/(P)` given by a monic integer polynomial.

pub mod arith;
pub mod poly;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use arith::log_abs;
pub use poly::IntPolynomial;

use crate::splitting::{sieve_primes, splitting_degrees};
use crate::{Error, Result};

/// Default bound for trial division of the discriminant.
pub const DEFAULT_SUSPECT_LIMIT: u64 = 1_000_000;

/// Primes used to certify irreducibility from factorization patterns.
const CERTIFY_PRIME_LIMIT: u64 = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldOptions {
    /// Replaces `log |disc P|` by a known `log Δ_K`.
    pub user_log_disc: Option<f64>,
    pub suspect_limit: u64,
}

impl Default for FieldOptions {
    fn default() -> Self {
        Self {
            user_log_disc: None,
            suspect_limit: DEFAULT_SUSPECT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscSource {
    PolynomialDiscriminant,
    UserSupplied,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    /// Factorization patterns modulo small primes exclude every proper factor.
    Certified,
    /// No small prime settled the question.
    Unverified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumberField {
    poly: IntPolynomial,
    r1: usize,
    r2: usize,
    disc_poly: BigInt,
    log_abs_disc: f64,
    index_suspects: BTreeSet<u64>,
    cofactor_unresolved: bool,
    disc_source: DiscSource,
    irreducibility: Irreducibility,
}

impl NumberField {
    pub fn new(poly: IntPolynomial, options: &FieldOptions) -> Result<Self> {
        let disc_poly = poly.discriminant();
        if disc_poly.is_zero() {
            return Err(Error::NotSquarefree);
        }
        let n = poly.degree();
        let r1 = poly.count_real_roots();
        debug_assert!(r1 <= n && (n - r1) % 2 == 0);
        let r2 = (n - r1) / 2;

        let (log_abs_disc, disc_source) = match options.user_log_disc {
            Some(v) if v.is_finite() && v > 0.0 => (v, DiscSource::UserSupplied),
            Some(v) => {
                return Err(Error::InvalidArgument(format!(
                    "log discriminant must be positive, got {v}"
                )))
            }
            None => (log_abs(&disc_poly)?, DiscSource::PolynomialDiscriminant),
        };

        let primes = sieve_primes(options.suspect_limit.max(2));
        let squares = arith::square_prime_factors(&disc_poly, &primes);

        if has_integer_root(&poly) {
            return Err(Error::Reducible);
        }
        let irreducibility = certify_irreducible(&poly, &disc_poly)?;
        let index_suspects = squares
            .square_primes
            .into_iter()
            .filter(|&p| dedekind_index_divisible(&poly, p))
            .collect();

        Ok(Self {
            poly,
            r1,
            r2,
            disc_poly,
            log_abs_disc,
            index_suspects,
            cofactor_unresolved: squares.cofactor_unresolved,
            disc_source,
            irreducibility,
        })
    }

    pub fn from_coeffs(coeffs: &[i64], options: &FieldOptions) -> Result<Self> {
        Self::new(IntPolynomial::from_i64(coeffs)?, options)
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    /// `n_K`.
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn r1(&self) -> usize {
        self.r1
    }

    pub fn r2(&self) -> usize {
        self.r2
    }

    pub fn disc_poly(&self) -> &BigInt {
        &self.disc_poly
    }

    /// `log Δ_K`, or `log |disc P|` when no override was given.
    pub fn log_abs_disc(&self) -> f64 {
        self.log_abs_disc
    }

    pub fn index_suspects(&self) -> &BTreeSet<u64> {
        &self.index_suspects
    }

    pub fn is_index_suspect(&self, p: u64) -> bool {
        self.index_suspects.contains(&p)
    }

    pub fn cofactor_unresolved(&self) -> bool {
        self.cofactor_unresolved
    }

    pub fn disc_source(&self) -> DiscSource {
        self.disc_source
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// Lowercase hex SHA-256 of the canonical coefficient string.
    pub fn id(&self) -> String {
        hex::encode(Sha256::digest(self.poly.canonical().as_bytes()))
    }
}

/// Certifies irreducibility when no proper factor degree is compatible with
/// the factorization patterns modulo every unramified prime below 100.
fn certify_irreducible(poly: &IntPolynomial, disc: &BigInt) -> Result<Irreducibility> {
    let n = poly.degree();
    // possible[d]: a rational factor of degree d is still consistent
    let mut possible = vec![true; n + 1];
    for p in sieve_primes(CERTIFY_PRIME_LIMIT) {
        if (disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let rec = splitting_degrees(poly, p)?;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &(f, count) in &rec.degrees {
            for _ in 0..count {
                for s in (f as usize..=n).rev() {
                    sums[s] |= sums[s - f as usize];
                }
            }
        }
        for (d, ok) in possible.iter_mut().enumerate() {
            *ok &= sums[d];
        }
        if (1..n).all(|d| !possible[d]) {
            return Ok(Irreducibility::Certified);
        }
    }
    Ok(Irreducibility::Unverified)
}

/// Dedekind's criterion: whether `p` divides the index `[O_K : Z[θ]]`.
///
/// With `P ≡ g·h (mod p)` where `g` is the radical of `P mod p`, and
/// `F = (P − g·h)/p`, the prime `p` divides the index iff
/// `gcd(F̄, ḡ, h̄) ≠ 1` over `F_p`.
pub fn dedekind_index_divisible(poly: &IntPolynomial, p: u64) -> bool {
    use crate::splitting::fp::Fp;
    let fp = Fp::new(p);
    let reduced = fp.reduce_poly(poly.coeffs());
    let g = fp.radical(&reduced);
    let (h, _) = fp.div_rem(&reduced, &g);
    let lift = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let (gl, hl) = (lift(&g), lift(&h));
    let mut gh = vec![BigInt::zero(); gl.len() + hl.len() - 1];
    for (i, a) in gl.iter().enumerate() {
        for (j, b) in hl.iter().enumerate() {
            gh[i + j] += a * b;
        }
    }
    let pb = BigInt::from(p);
    let lifted: Vec<BigInt> = poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let diff = c - gh.get(i).cloned().unwrap_or_default();
            debug_assert!((&diff % &pb).is_zero());
            diff / &pb
        })
        .collect();
    let f = fp.reduce_poly(&lifted);
    let d = fp.gcd(&fp.gcd(&f, &g), &h);
    d.len() > 1
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Whether the monic polynomial has an integer root, located exactly by
/// Sturm-count bisection over integer intervals.
fn has_integer_root(poly: &IntPolynomial) -> bool {
    let coeffs = poly.coeffs();
    if coeffs[0].is_zero() {
        return true;
    }
    let seq = poly::sturm_sequence(coeffs);
    let variations = |x: &BigInt| -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for q in &seq {
            let val = eval(q, x);
            let s = if val.is_positive() {
                1
            } else if val.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    };
    // Cauchy bound: every root lies in (-bound, bound).
    let bound: BigInt = coeffs.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let mut stack = vec![(-&bound, bound.clone(), variations(&-&bound), variations(&bound))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        // roots in (lo, hi]
        if vlo <= vhi {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if eval(coeffs, &hi).is_zero() {
                return true;
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi) >> 1u32;
        let vmid = variations(&mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    false
}

/// `nextprime(n)` for decimal-power family construction.
pub fn next_prime_after(n: &BigUint) -> BigUint {
    arith::next_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> NumberField {
        NumberField::from_coeffs(c, &FieldOptions::default()).unwrap()
    }

    #[test]
    fn gaussian_field() {
        let k = field(&[1, 0, 1]);
        assert_eq!((k.degree(), k.r1(), k.r2()), (2, 0, 1));
        assert_eq!(k.disc_poly(), &BigInt::from(-4));
        assert!((k.log_abs_disc() - 4f64.ln()).abs() < 1e-15);
        // 4 | disc but Z[i] is maximal
        assert!(!k.is_index_suspect(2));
        assert_eq!(k.irreducibility(), Irreducibility::Certified);
    }

    #[test]
    fn cubic_of_discriminant_minus_23() {
        let k = field(&[-1, -1, 0, 1]);
        assert_eq!(k.disc_poly(), &BigInt::from(-23));
        assert_eq!((k.r1(), k.r2()), (1, 1));
        assert!(k.index_suspects().is_empty());
    }

    #[test]
    fn showcase_cubic() {
        let p = IntPolynomial::parse("55137512477462689,559752270111028720,0,1").unwrap();
        let k = NumberField::new(p, &FieldOptions::default()).unwrap();
        assert_eq!((k.r1(), k.r2()), (1, 1));
        let a = BigInt::from(559752270111028720i64);
        let b = BigInt::from(55137512477462689i64);
        let expected = -4 * &a * &a * &a - 27 * &b * &b;
        assert_eq!(k.disc_poly(), &expected);
        assert!(k.disc_poly().is_negative());
        assert!((k.log_abs_disc() - 123.985106479).abs() < 1e-8);
        assert!(k.index_suspects().is_empty());
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            NumberField::from_coeffs(&[2, -3, 0, 1], &FieldOptions::default()),
            Err(Error::NotSquarefree)
        ));
        // (x - 3)(x^2 + 1)
        assert!(matches!(
            NumberField::from_coeffs(&[-3, 1, -3, 1], &FieldOptions::default()),
            Err(Error::Reducible)
        ));
        assert!(matches!(
            NumberField::from_coeffs(&[0, 1, 1], &FieldOptions::default()),
            Err(Error::Reducible)
        ));
        let opts = FieldOptions {
            user_log_disc: Some(-1.0),
            ..FieldOptions::default()
        };
        assert!(NumberField::from_coeffs(&[1, 0, 1], &opts).is_err());
    }

    #[test]
    fn unverified_irreducibility_for_biquadratic() {
        // x^4 + 1 and x^4 - 48x^2 + 4 are irreducible but split mod every prime
        for c in [[1, 0, 0, 0, 1], [4, 0, -48, 0, 1]] {
            let k = field(&c);
            assert_eq!(k.irreducibility(), Irreducibility::Unverified);
        }
        // product of two quadratics is not caught as reducible, only unverified
        let k = field(&[2, 0, 3, 0, 1]);
        assert_eq!(k.irreducibility(), Irreducibility::Unverified);
    }

    #[test]
    fn user_log_disc_override() {
        let opts = FieldOptions {
            user_log_disc: Some(2.0),
            ..FieldOptions::default()
        };
        let k = NumberField::from_coeffs(&[-5, 0, 1], &opts).unwrap();
        assert_eq!(k.log_abs_disc(), 2.0);
        assert_eq!(k.disc_source(), DiscSource::UserSupplied);
    }

    #[test]
    fn dedekind_criterion() {
        let p = |c: &[i64]| IntPolynomial::from_i64(c).unwrap();
        // Z[sqrt 8] has index 2 in Z[sqrt 2]
        assert!(dedekind_index_divisible(&p(&[-8, 0, 1]), 2));
        // x^2 - 5: index 2 (golden ratio); x^2 - 7: maximal at 2
        assert!(dedekind_index_divisible(&p(&[-5, 0, 1]), 2));
        assert!(!dedekind_index_divisible(&p(&[-7, 0, 1]), 2));
        // x^2 - 27 = x^2 - 3·9: index 3
        assert!(dedekind_index_divisible(&p(&[-27, 0, 1]), 3));
        // Eisenstein at 3: never divides the index
        assert!(!dedekind_index_divisible(&p(&[3, 0, 0, 1]), 3));
        // x^3 - 19: 19 ≡ 1 mod 9, so 3 divides the index of Z[19^(1/3)]
        assert!(dedekind_index_divisible(&p(&[-19, 0, 0, 1]), 3));
        assert!(!dedekind_index_divisible(&p(&[-2, 0, 0, 1]), 3));
    }

    #[test]
    fn digest_is_stable() {
        let k = field(&[1, 0, 1]);
        assert_eq!(k.id().len(), 64);
        assert_eq!(k.id(), hex::encode(Sha256::digest(b"1,0,1")));
    }
}
