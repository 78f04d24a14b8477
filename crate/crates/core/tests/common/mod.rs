//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod quadrature on `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 || (b - a).abs() < 1e-13 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(&f, a, b, tol, 50)
}

/// `∫₀^∞ f` split at `breaks` and truncated where the integrand has decayed
/// below `e^{-x/2}` at `x = last + 90`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> f64 {
    let mut pts = vec![0.0];
    pts.extend(breaks.iter().copied().filter(|&b| b > 0.0));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let last = *pts.last().unwrap();
    pts.push(last + 90.0);
    pts.windows(2).map(|w| integrate(&f, w[0], w[1], tol)).sum()
}

/// Length of `(−a, a) ∩ (x − b, x + b)`.
pub fn overlap(a: f64, b: f64, x: f64) -> f64 {
    ((x + b).min(a) - (x - b).max(-a)).max(0.0)
}

/// Dense polynomial arithmetic over `F_p`, coefficients constant first.
pub mod brute {
    pub fn trim(v: &mut Vec<i64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    pub fn inv(a: i64, p: i64) -> i64 {
        (1..p).find(|&b| a * b % p == 1).unwrap()
    }

    /// Quotient and remainder of `a / b` for nonzero `b`.
    pub fn div_rem(a: &[i64], b: &[i64], p: i64) -> (Vec<i64>, Vec<i64>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        if r.len() < b.len() {
            return (vec![0], r);
        }
        let mut q = vec![0; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db] * lead_inv % p;
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] - c * bj).rem_euclid(p);
            }
        }
        r.truncate(db.max(1));
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    fn is_zero(v: &[i64]) -> bool {
        v.iter().all(|&c| c == 0)
    }

    /// All monic polynomials of degree `d`.
    pub fn monic(d: usize, p: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let total = (p as usize).pow(d as u32);
        for mut idx in 0..total {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push((idx % p as usize) as i64);
                idx /= p as usize;
            }
            v.push(1);
            out.push(v);
        }
        out
    }

    /// Monic irreducibles of degree 1 and 2, found by exhausting roots.
    pub fn small_irreducibles(p: i64) -> Vec<Vec<i64>> {
        let mut out = monic(1, p);
        for q in monic(2, p) {
            if (0..p).all(|x| (q[0] + q[1] * x + x * x) % p != 0) {
                out.push(q);
            }
        }
        out
    }

    /// Multiset of irreducible factor degrees of a monic polynomial of
    /// degree ≤ 4 over `F_p`, as `(degree, multiplicity)` per distinct factor.
    pub fn factor_degrees(f: &[i64], p: i64, irr: &[Vec<i64>]) -> Vec<(usize, usize)> {
        assert!(f.len() <= 5);
        let mut rest: Vec<i64> = f.iter().map(|&c| c.rem_euclid(p)).collect();
        trim(&mut rest);
        let mut out = Vec::new();
        for g in irr {
            let mut mult = 0;
            while rest.len() >= g.len() {
                let (q, r) = div_rem(&rest, g, p);
                if !is_zero(&r) {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g.len() - 1, mult));
            }
        }
        // no factor of degree ≤ 2 left, so what remains is irreducible
        if rest.len() > 1 {
            out.push((rest.len() - 1, 1));
        }
        out
    }
}

/// `(f, count)` pairs grouped from distinct factors, plus whether any factor
/// is repeated.
pub fn group_degrees(factors: &[(usize, usize)]) -> (Vec<(u32, u32)>, bool) {
    let mut by_deg: BTreeMap<u32, u32> = BTreeMap::new();
    for &(d, _) in factors {
        *by_deg.entry(d as u32).or_default() += 1;
    }
    let ramified = factors.iter().any(|&(_, m)| m > 1);
    (by_deg.into_iter().collect(), ramified)
}

/// Complex roots by Durand–Kerner iteration on a monic polynomial given
/// constant first.
pub fn durand_kerner(coeffs: &[f64]) -> Vec<num_complex::Complex64> {
    use num_complex::Complex64;
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}
