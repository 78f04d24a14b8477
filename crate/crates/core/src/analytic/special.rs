//! Dilogarithm and inverse tangent integral on `[0, 1]`.

use num_complex::Complex64;

use super::{CATALAN, PI};
use crate::{Error, Result};

const EPS: f64 = 1e-17;

/// `B_{2j} / (2j+1)!` for `j = 1..=15`.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = {
    const B: [f64; 15] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
        8553103.0 / 6.0,
        -23749461029.0 / 870.0,
        8615841276005.0 / 14322.0,
    ];
    let mut out = [0.0; 15];
    let mut fact = 1.0f64; // (2j+1)!
    let mut j = 0;
    while j < 15 {
        let k = 2 * (j + 1);
        fact *= (k as f64) * ((k + 1) as f64);
        out[j] = B[j] / fact;
        j += 1;
    }
    out
};

/// `Li₂(x) = Σ_{k≥1} x^k / k²` for `0 ≤ x ≤ 1`.
pub fn dilog(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!("dilog argument {x} outside [0, 1]")));
    }
    if x == 1.0 {
        return Ok(PI * PI / 6.0);
    }
    if x <= 0.5 {
        return Ok(dilog_series(x));
    }
    // Euler reflection
    Ok(PI * PI / 6.0 - x.ln() * (-x).ln_1p() - dilog_series(1.0 - x))
}

fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    let mut k = 1.0f64;
    while pow > EPS * k * k {
        sum += pow / (k * k);
        pow *= x;
        k += 1.0;
    }
    sum
}

/// Complex dilogarithm through its Bernoulli expansion in `u = −log(1 − z)`,
/// valid while `|u| < 2π`.
fn dilog_bernoulli(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    // B_0 u + B_1 u²/2
    let mut sum = u - u2 / 4.0;
    let mut pow = u; // u^{2j+1}
    for &c in &BERNOULLI_OVER_FACTORIAL {
        pow *= u2;
        sum += pow * c;
    }
    sum
}

/// Inverse tangent integral `Ti₂(y) = Im Li₂(iy) = Σ_{k≥0} (−1)^k y^{2k+1}/(2k+1)²`
/// for `0 ≤ y ≤ 1`.
pub fn ti2(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::InvalidArgument(format!("ti2 argument {y} outside [0, 1]")));
    }
    if y == 1.0 {
        return Ok(CATALAN);
    }
    if y <= 0.5 {
        let y2 = y * y;
        let mut sum = 0.0;
        let mut pow = y;
        let mut k = 0u32;
        loop {
            let d = f64::from(2 * k + 1);
            let term = pow / (d * d);
            if term < EPS {
                break;
            }
            sum += if k % 2 == 0 { term } else { -term };
            pow *= y2;
            k += 1;
        }
        return Ok(sum);
    }
    Ok(dilog_bernoulli(Complex64::new(0.0, y)).im)
}

/// Closed forms of the archimedean integrals for the triangle function
/// `F_L(x) = (L − |x|)⁺`, with `T = e^L`:
///
/// - `∫₀^∞ (F_L(0) − F_L(x)) / (2 cosh(x/2)) dx = 4C − 4 Ti₂(T^{−1/2})`
/// - `∫₀^∞ (F_L(0) − F_L(x)) / (2 sinh(x/2)) dx = π²/2 − 4 Li₂(T^{−1/2}) + Li₂(T^{−1})`
pub fn arch_terms(l: f64) -> Result<(f64, f64)> {
    if !(l >= 0.0) {
        return Err(Error::InvalidArgument(format!("support parameter {l} is negative")));
    }
    let y = (-0.5 * l).exp();
    let arch_r1 = 4.0 * CATALAN - 4.0 * ti2(y)?;
    let arch_n = PI * PI / 2.0 - 4.0 * dilog(y)? + dilog(y * y)?;
    Ok((arch_r1, arch_n))
}
