mod common;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use grhgen_core::analytic::{self, arch_terms, dilog};
use grhgen_core::numberfield::{FieldOptions, NumberField};
use grhgen_core::quadform::{self, Ldl, LdlState};
use grhgen_core::splitting::{self, sieve_primes, splitting_degrees};
use grhgen_core::{FieldContext, IdealNormTable, IntPolynomial};

use common::durand_kerner;

fn monic_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    (2..=max_deg).prop_flat_map(move |d| {
        prop::collection::vec(-bound..=bound, d).prop_map(|mut v| {
            v.push(1);
            v
        })
    })
}

fn min_separation(roots: &[num_complex::Complex64]) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            sep = sep.min((roots[i] - roots[j]).norm());
        }
    }
    sep
}

fn neg_eigs(a: &[Vec<f64>]) -> (usize, f64) {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let e = SymmetricEigen::new(m).eigenvalues;
    let gap = e.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    (e.iter().filter(|&&x| x < 0.0).count(), gap)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn discriminant_matches_root_product(c in monic_poly(6, 50)) {
        let p = IntPolynomial::from_i64(&c).unwrap();
        let disc = p.discriminant();
        let roots = durand_kerner(&c.iter().map(|&x| x as f64).collect::<Vec<_>>());
        prop_assume!(!disc.is_zero() && min_separation(&roots) > 1e-2);
        let mut prod = num_complex::Complex64::new(1.0, 0.0);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = roots[i] - roots[j];
                prod *= d * d;
            }
        }
        let exact = disc.to_f64().unwrap();
        prop_assert!((prod.re - exact).abs() <= 1e-6 * exact.abs(), "{} vs {}", prod, disc);
        prop_assert!(prod.im.abs() <= 1e-6 * exact.abs());
    }

    #[test]
    fn real_roots_and_signature(c in monic_poly(6, 50)) {
        let p = IntPolynomial::from_i64(&c).unwrap();
        let disc = p.discriminant();
        let roots = durand_kerner(&c.iter().map(|&x| x as f64).collect::<Vec<_>>());
        prop_assume!(!disc.is_zero() && min_separation(&roots) > 1e-2);
        prop_assume!(roots.iter().all(|r| r.im.abs() < 1e-9 || r.im.abs() > 1e-4));
        let numeric = roots.iter().filter(|r| r.im.abs() < 1e-9).count();
        let r1 = p.count_real_roots();
        prop_assert_eq!(r1, numeric);
        let n = c.len() - 1;
        prop_assert_eq!((n - r1) % 2, 0);
        let r2 = (n - r1) / 2;
        prop_assert_eq!(disc.is_negative(), r2 % 2 == 1);
    }

    #[test]
    fn unramified_degrees_sum_to_n(c in monic_poly(6, 50), pi in 0usize..168) {
        let p = IntPolynomial::from_i64(&c).unwrap();
        let disc = p.discriminant();
        prop_assume!(!disc.is_zero());
        let q = sieve_primes(1000)[pi];
        let rec = splitting_degrees(&p, q).unwrap();
        let divides = (&disc % BigInt::from(q)).is_zero();
        prop_assert_eq!(rec.ramified, divides);
        if !divides {
            prop_assert_eq!(rec.degree_sum() as usize, c.len() - 1);
        }
        prop_assert!(rec.validate(c.len() - 1).is_ok());
    }

    #[test]
    fn inertia_matches_eigen_oracle(
        n in 1usize..=12,
        entries in prop::collection::vec(-1.0f64..1.0, 144),
    ) {
        let a: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| entries[i.max(j) * 12 + i.min(j)]).collect())
            .collect();
        let mut ldl = Ldl::new();
        let mut prev = 0;
        let mut well_conditioned = true;
        for k in 0..n {
            ldl.push_row(&a[k][..=k]);
            let now = ldl.neg_count();
            // interlacing: a bordered matrix gains at most one negative eigenvalue
            prop_assert!(now == prev || now == prev + 1);
            prev = now;
            well_conditioned &= ldl.diag()[k].abs() > 1e-6;
        }
        prop_assume!(well_conditioned);
        let (neg, gap) = neg_eigs(&a);
        prop_assume!(gap > 1e-9);
        prop_assert_eq!(ldl.neg_count(), neg);
        prop_assert_eq!(ldl.first_zero(), None);
    }

    #[test]
    fn dilog_reflection(x in 1e-9f64..1.0) {
        let lhs = dilog(x).unwrap() + dilog(1.0 - x).unwrap();
        let rhs = std::f64::consts::PI.powi(2) / 6.0 - x.ln() * (1.0 - x).ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn arch_terms_nonnegative_and_increasing(l in 0.0f64..60.0, h in 1e-6f64..1.0) {
        let (a, b) = arch_terms(l).unwrap();
        let (a2, b2) = arch_terms(l + h).unwrap();
        prop_assert!(a >= 0.0 && b >= 0.0);
        prop_assert!(a2 >= a && b2 >= b);
        // the L-derivatives are ∫_L^∞ dx/(2cosh(x/2)) ≤ π/2 and −log tanh(L/4), both decreasing
        prop_assert!(a2 - a <= 0.5 * h * std::f64::consts::PI + 1e-12);
        prop_assert!(b2 - b <= h * -(l / 4.0).tanh().ln() + 1e-12);
    }
}

#[test]
fn prime_sum_matches_gaussian_double_loop() {
    let k = NumberField::from_coeffs(&[1, 0, 1], &FieldOptions::default()).unwrap();
    let mut t = IdealNormTable::new(&k);
    t.extend(&k, 60.0).unwrap();
    let l = 50f64.ln();
    // prime ideals of Z[i]: 2 ramified, p ≡ 1 (mod 4) split, p ≡ 3 (mod 4) inert
    let mut norms = Vec::new();
    for p in 2u64..=50 {
        if !(2..p).all(|d| p % d != 0) {
            continue;
        }
        match p % 4 {
            2 => norms.push(p),
            1 => norms.extend([p, p]),
            _ => norms.push(p * p),
        }
    }
    let mut expected = 0.0;
    for q in norms {
        let lq = (q as f64).ln();
        let mut m = 1.0;
        while m * lq < l {
            expected += 2.0 * lq * (l - m * lq) / (q as f64).powf(m / 2.0);
            m += 1.0;
        }
    }
    let got = analytic::prime_sum(&t, l).unwrap();
    assert!((got - expected).abs() <= 1e-12 * expected, "{got} vs {expected}");
}

#[test]
fn prime_sum_monotone_and_ell_lipschitz() {
    let mut ctx = FieldContext::new(NumberField::from_coeffs(&[-1, -1, 0, 1], &FieldOptions::default()).unwrap());
    ctx.ensure(8.0).unwrap();
    let mut prev_sum = 0.0;
    let mut prev_ell = 0.0;
    let h = 1e-3;
    let mut worst_slope = 0.0f64;
    for i in 1..=8000 {
        let l = i as f64 * h;
        let e = ctx.ell(l).unwrap();
        assert!(e.prime_sum >= prev_sum);
        worst_slope = worst_slope.max((e.value - prev_ell).abs() / h);
        prev_sum = e.prime_sum;
        prev_ell = e.value;
    }
    // |dℓ/dL| ≤ |constant term| + r1·π/2 + n·(−log tanh(L/4)) + 2 Σ log q Σ_m q^{−m/2}
    let k = ctx.field().clone();
    let prime_rate: f64 = ctx
        .table()
        .entries()
        .iter()
        .filter(|e| e.log_norm < 8.0)
        .map(|e| 2.0 * f64::from(e.count) * e.log_norm / ((-0.5 * e.log_norm).exp().recip() - 1.0))
        .sum();
    let k_lip = analytic::constant_term(&k).abs()
        + k.r1() as f64 * std::f64::consts::FRAC_PI_2
        + k.degree() as f64 * -(h / 4.0).tanh().ln()
        + prime_rate;
    assert!(worst_slope <= k_lip, "{worst_slope} > {k_lip}");
}

#[test]
fn gram_leading_block_is_stable_under_growth() {
    let mut ctx = FieldContext::new(NumberField::from_coeffs(&[-2, 0, 0, 1], &FieldOptions::default()).unwrap());
    let delta = 0.3;
    let mut state = LdlState::new();
    let mut prev: Vec<Vec<f64>> = Vec::new();
    for n in 1..=10 {
        let before = state.ldl().neg_count();
        state.assemble_row(&mut ctx, delta).unwrap();
        let after = state.ldl().neg_count();
        assert!(after == before || after == before + 1);
        let m = state.matrix();
        for i in 0..n - 1 {
            assert_eq!(m[i][..n - 1], prev[i][..]);
        }
        let fresh = quadform::gram_matrix(&mut ctx, grhgen_core::StepParams::new(n, delta).unwrap()).unwrap();
        assert_eq!(m, fresh);
        prev = m;
    }
}

#[test]
fn tables_are_reproducible() {
    let k = NumberField::from_coeffs(&[3, 11, 0, 1], &FieldOptions::default()).unwrap();
    let mut a = IdealNormTable::new(&k);
    a.extend(&k, 20000.0).unwrap();
    let mut b = IdealNormTable::new(&k);
    for lim in [100.0, 5000.0, 12345.0, 20000.0] {
        b.extend(&k, lim).unwrap();
    }
    assert_eq!(splitting::render_cache(&a), splitting::render_cache(&b));
}

#[test]
fn log_abs_examples() {
    use grhgen_core::numberfield::log_abs;
    assert_eq!(log_abs(&BigInt::from(1)).unwrap(), 0.0);
    assert!((log_abs(&BigInt::from(-4)).unwrap() - 4f64.ln()).abs() < 1e-15);
    let big = BigInt::from(1) << 100;
    assert!((log_abs(&big).unwrap() - 100.0 * 2f64.ln()).abs() < 1e-12);
}
