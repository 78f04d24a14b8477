//! Polynomials over a prime field `F_p` with `p < 2⁶²`.
//!
//! Coefficients are stored constant term first and kept trimmed, so the zero
//! polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub const MAX_PRIME: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

pub type Poly = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < MAX_PRIME);
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_big(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn reduce_poly(&self, coeffs: &[BigInt]) -> Poly {
        let mut v: Poly = coeffs.iter().map(|c| self.reduce_big(c)).collect();
        trim(&mut v);
        v
    }

    pub fn derivative(&self, a: &[u64]) -> Poly {
        let mut d: Poly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        trim(&mut d);
        d
    }

    pub fn sub_poly(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let mut r: Poly = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                self.sub(x, y)
            })
            .collect();
        trim(&mut r);
        r
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        trim(&mut r);
        r
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let db = b.len() - 1;
        let inv_lead = self.inv(b[db]);
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let dr = r.len() - 1;
            let c = self.mul(r[dr], inv_lead);
            let shift = dr - db;
            q[shift] = c;
            for (i, &y) in b.iter().enumerate() {
                r[i + shift] = self.sub(r[i + shift], self.mul(c, y));
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Poly {
        self.div_rem(a, b).1
    }

    pub fn make_monic(&self, a: &mut Poly) {
        if let Some(&lead) = a.last() {
            let inv = self.inv(lead);
            for c in a.iter_mut() {
                *c = self.mul(*c, inv);
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Poly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.make_monic(&mut x);
        x
    }

    pub fn mul_mod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
        self.rem(&self.mul_poly(a, b), m)
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, base: &[u64], mut e: u64, m: &[u64]) -> Poly {
        let mut result: Poly = self.rem(&[1], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_mod(&result, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_mod(&b, &b, m);
            }
        }
        result
    }

    /// Product of the distinct monic irreducible factors of a nonzero `a`.
    pub fn radical(&self, a: &[u64]) -> Poly {
        let mut a = a.to_vec();
        trim(&mut a);
        self.make_monic(&mut a);
        if a.len() <= 1 {
            return a;
        }
        let d = self.derivative(&a);
        if d.is_empty() {
            // a(x) = b(x^p) = b(x)^p since Frobenius fixes F_p.
            let p = self.p as usize;
            let root: Poly = a.iter().step_by(p).copied().collect();
            return self.radical(&root);
        }
        let g = self.gcd(&a, &d);
        if g.len() == 1 {
            return a;
        }
        let (simple, _) = self.div_rem(&a, &g);
        let rg = self.radical(&g);
        // lcm(simple, rad(g))
        let common = self.gcd(&simple, &rg);
        let (rest, _) = self.div_rem(&rg, &common);
        let mut r = self.mul_poly(&simple, &rest);
        self.make_monic(&mut r);
        r
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    ///
    /// Returns `(d, k)` pairs: the input has exactly `k` irreducible factors
    /// of degree `d`, ascending in `d`.
    pub fn distinct_degree(&self, s: &[u64]) -> Vec<(u32, u32)> {
        let mut s = s.to_vec();
        trim(&mut s);
        let mut out = Vec::new();
        let x: Poly = vec![0, 1];
        let mut h = self.rem(&x, &s);
        let mut d = 0usize;
        while s.len() > 1 {
            d += 1;
            let deg_s = s.len() - 1;
            if deg_s < 2 * d {
                out.push((deg_s as u32, 1));
                break;
            }
            h = self.pow_mod(&h, self.p, &s);
            let g = self.gcd(&s, &self.sub_poly(&h, &x));
            let dg = g.len() - 1;
            if dg > 0 {
                out.push((d as u32, (dg / d) as u32));
                s = self.div_rem(&s, &g).0;
                h = self.rem(&h, &s);
            }
        }
        out
    }
}

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}
