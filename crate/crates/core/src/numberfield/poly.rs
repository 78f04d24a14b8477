//! Dense integer polynomials with exact resultant and Sturm-sequence
//! machinery.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A monic integer polynomial of degree at least 2.
///
/// Coefficients are stored constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        trim(&mut coeffs);
        let degree = coeffs.len().saturating_sub(1);
        if coeffs.is_empty() || degree < 2 {
            return Err(Error::DegreeTooSmall(degree));
        }
        let lead = &coeffs[degree];
        if !lead.is_one() {
            return Err(Error::NotMonic(lead.to_string()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses a comma-separated coefficient list, constant term first.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .trim()
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Canonical text form: decimal coefficients, constant first, comma separated.
    pub fn canonical(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The discriminant `(-1)^(n(n-1)/2) Res(P, P')`.
    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.coeffs)
    }

    pub fn count_real_roots(&self) -> usize {
        count_real_roots(&self.coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn deg(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut d);
    d
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = deg(b).expect("pseudo_rem by zero polynomial");
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    let Some(da) = deg(&r) else { return r };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb.clone(), steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

fn exact_div_poly(p: &mut [BigInt], d: &BigInt) {
    for c in p.iter_mut() {
        let (q, r) = c.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division in subresultant PRS");
        *c = q;
    }
}

/// Resultant over the integers by the subresultant PRS, so intermediate
/// coefficients stay bounded by determinants of Sylvester submatrices.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let (Some(mut da), Some(mut db)) = (deg(&a), deg(&b)) else {
        return BigInt::zero();
    };
    let mut sign = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    if db == 0 {
        return sign * num_traits::pow(b[0].clone(), da);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let mut r = pseudo_rem(&a, &b);
        let Some(dr) = deg(&r) else {
            return BigInt::zero();
        };
        let divisor = &g * num_traits::pow(h.clone(), delta);
        exact_div_poly(&mut r, &divisor);
        a = b;
        b = r;
        da = db;
        db = dr;
        g = a[da].clone();
        if delta > 0 {
            let num = num_traits::pow(g.clone(), delta);
            let den = num_traits::pow(h.clone(), delta - 1);
            h = num / den;
        }
        if db == 0 {
            let lb = b[0].clone();
            let num = num_traits::pow(lb, da);
            let den = num_traits::pow(h, da - 1);
            return sign * (num / den);
        }
    }
}

/// `(-1)^(n(n-1)/2) Res(P, P') / lc(P)`.
pub fn discriminant(p: &[BigInt]) -> BigInt {
    let mut p = p.to_vec();
    trim(&mut p);
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return BigInt::zero();
    }
    let res = resultant(&p, &derivative(&p));
    let res = res / &p[n];
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Sturm sequence of `p` built from negated pseudo-remainders scaled by
/// positive factors only, so sign patterns are preserved.
pub fn sturm_sequence(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut p0 = p.to_vec();
    trim(&mut p0);
    let p1 = derivative(&p0);
    let mut seq = vec![p0];
    if p1.is_empty() {
        return seq;
    }
    seq.push(p1);
    loop {
        let n = seq.len();
        let (prev, cur) = (&seq[n - 2], &seq[n - 1]);
        let dc = deg(cur).unwrap();
        let dp = deg(prev).unwrap();
        let mut r = pseudo_rem(prev, cur);
        if r.is_empty() {
            break;
        }
        // The pseudo-remainder used lc(cur)^(dp - dc + 1); undo a negative factor.
        let lc_negative = cur[dc].is_negative();
        let flip = lc_negative && (dp - dc + 1) % 2 == 1;
        if !flip {
            for c in r.iter_mut() {
                *c = -&*c;
            }
        }
        let g = content(&r);
        if !g.is_zero() && !g.is_one() {
            exact_div_poly(&mut r, &g);
        }
        let done = r.len() == 1;
        seq.push(r);
        if done {
            break;
        }
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots, read off the Sturm sequence at ±∞.
pub fn count_real_roots(p: &[BigInt]) -> usize {
    let seq = sturm_sequence(p);
    let sgn = |c: &BigInt| -> i8 {
        if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        }
    };
    let at_pos = sign_changes(seq.iter().map(|q| sgn(q.last().unwrap())));
    let at_neg = sign_changes(seq.iter().map(|q| {
        let s = sgn(q.last().unwrap());
        if (q.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    at_neg - at_pos
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&big(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(discriminant(&big(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&big(&[-1, -1, 0, 1])), BigInt::from(-23));
        assert_eq!(discriminant(&big(&[1, 0, 0, 0, 1])), BigInt::from(256));
        // x^5 - x - 1: classical value 2869
        assert_eq!(discriminant(&big(&[-1, -1, 0, 0, 0, 1])), BigInt::from(2869));
    }

    #[test]
    fn depressed_cubic_formula() {
        for (a, b) in [(3i64, 5i64), (-7, 2), (0, 1), (11, -13)] {
            let expected = -4 * a.pow(3) - 27 * b.pow(2);
            assert_eq!(discriminant(&big(&[b, a, 0, 1])), BigInt::from(expected));
        }
    }

    #[test]
    fn repeated_root_has_zero_discriminant() {
        // (x - 1)^2 (x + 2)
        assert!(discriminant(&big(&[2, -3, 0, 1])).is_zero());
    }

    #[test]
    fn real_roots() {
        assert_eq!(count_real_roots(&big(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&big(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&big(&[-1, -1, 0, 1])), 1);
        assert_eq!(count_real_roots(&big(&[1, 0, 0, 0, 1])), 0);
        // (x^2 - 2)(x^2 - 3) = x^4 - 5x^2 + 6
        assert_eq!(count_real_roots(&big(&[6, 0, -5, 0, 1])), 4);
    }

    #[test]
    fn display() {
        let p = IntPolynomial::from_i64(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "x^3 - x - 1");
        let q = IntPolynomial::from_i64(&[4, 0, -48, 0, 1]).unwrap();
        assert_eq!(q.to_string(), "x^4 - 48*x^2 + 4");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(IntPolynomial::from_i64(&[1, 2]), Err(Error::DegreeTooSmall(1))));
        assert!(matches!(IntPolynomial::from_i64(&[1, 0, 2]), Err(Error::NotMonic(_))));
        assert!(IntPolynomial::parse("1, x, 1").is_err());
        assert_eq!(
            IntPolynomial::parse(" 1,0 ,1 ").unwrap().canonical(),
            "1,0,1"
        );
    }
}
