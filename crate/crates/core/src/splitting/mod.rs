//! Prime-ideal norms from the factorization type of the defining polynomial
//! modulo rational primes.
//!
//! For a prime `p` not dividing the index of `Z[x]/(P)` in the maximal order,
//! the prime ideals above `p` correspond to the distinct irreducible factors of
//! `P mod p`, a factor of degree `f` giving an ideal of norm `p^f`. Only the
//! degrees matter, so a distinct-degree factorization of the radical is enough.

mod cache;
pub mod fp;
pub mod sieve;
pub(crate) mod table;

use serde::{Deserialize, Serialize};

use crate::numberfield::IntPolynomial;
use crate::{Error, Result};

pub use cache::{cache_path, load_cache, parse_cache, render_cache, save_cache};
pub use sieve::{primes_in, sieve_primes};
pub use table::{required_limit, IdealNormTable, NormEntry};

/// Splitting type of one rational prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub p: u64,
    /// `(f, count)` pairs, ascending in `f`: `count` distinct prime ideals of
    /// residue degree `f`.
    pub degrees: Vec<(u32, u32)>,
    pub ramified: bool,
    /// False when `p` may divide the index and the factorization is not a
    /// reliable description of the splitting.
    pub trusted: bool,
}

impl SplitRecord {
    /// `Σ f·count`, the degree of the radical of `P mod p`.
    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().map(|&(f, c)| f * c).sum()
    }

    pub fn ideal_count(&self) -> u32 {
        self.degrees.iter().map(|&(_, c)| c).sum()
    }

    /// Checks the shape constraints against the field degree `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let sum = self.degree_sum() as usize;
        let ok_shape = !self.degrees.is_empty()
            && self.degrees.iter().all(|&(f, c)| f >= 1 && c >= 1)
            && self.degrees.windows(2).all(|w| w[0].0 < w[1].0);
        let ok_sum = if self.ramified { sum < n } else { sum == n };
        if ok_shape && ok_sum {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "inconsistent split record for p = {} (degree sum {sum}, n = {n})",
                self.p
            )))
        }
    }

    /// Cache-line form: `p ramified f:count[,f:count...]`.
    pub fn to_line(&self) -> String {
        let degs = self
            .degrees
            .iter()
            .map(|(f, c)| format!("{f}:{c}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("{} {} {}", self.p, u8::from(self.ramified), degs)
    }

    /// Parses the cache-line form; the result is marked trusted.
    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad split record {line:?}"));
        let mut parts = line.split_whitespace();
        let p = parts.next().ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?;
        let ramified = match parts.next().ok_or_else(bad)? {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        let degrees = parts
            .next()
            .ok_or_else(bad)?
            .split(',')
            .map(|fc| {
                let (f, c) = fc.split_once(':').ok_or_else(bad)?;
                Ok((f.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<(u32, u32)>>>()?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Self {
            p,
            degrees,
            ramified,
            trusted: true,
        })
    }
}

/// Factorization type of `P mod p`.
///
/// The returned record is marked trusted; the caller downgrades it when `p`
/// is an index suspect of the field.
pub fn splitting_degrees(poly: &IntPolynomial, p: u64) -> Result<SplitRecord> {
    if p >= fp::MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    let field = fp::Fp::new(p);
    let reduced = field.reduce_poly(poly.coeffs());
    let rad = field.radical(&reduced);
    let ramified = rad.len() < reduced.len();
    Ok(SplitRecord {
        p,
        degrees: field.distinct_degree(&rad),
        ramified,
        trusted: true,
    })
}
