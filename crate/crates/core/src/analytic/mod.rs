//! The explicit-formula linear form `ℓ_K` evaluated on triangle functions.
//!
//! For `F_L(x) = (L − |x|)⁺` (so `F_L(0) = L` and `T = e^L`),
//!
//! ```text
//! ℓ_K(F_L) = −2 Σ_𝔭 Σ_{m≥1} log N𝔭 · F_L(m log N𝔭) / N𝔭^{m/2}
//!            + L (log Δ_K − n γ − n log 8π − r₁ π/2)
//!            + r₁ ∫₀^∞ (L − F_L(x)) / (2 cosh(x/2)) dx
//!            + n  ∫₀^∞ (L − F_L(x)) / (2 sinh(x/2)) dx
//! ```
//!
//! A negative value certifies that prime ideals of norm below `T` generate
//! the class group (under GRH).

mod special;

use serde::{Deserialize, Serialize};

pub use special::{arch_terms, dilog, ti2};

use crate::numberfield::NumberField;
use crate::splitting::IdealNormTable;
use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const CATALAN: f64 = 0.915_965_594_177_219;
pub const PI: f64 = std::f64::consts::PI;

/// `c₁ = π²/2`.
pub const C1: f64 = PI * PI / 2.0;
/// `c₂ = 4C`.
pub const C2: f64 = 4.0 * CATALAN;

/// `ℓ_K(F_L)` together with its components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllValue {
    pub l: f64,
    pub prime_sum: f64,
    pub arch_r1: f64,
    pub arch_n: f64,
    pub value: f64,
}

/// `log Δ_K − n γ − n log 8π − r₁ π/2`, the coefficient of `F(0)`.
pub fn constant_term(field: &NumberField) -> f64 {
    let n = field.degree() as f64;
    let r1 = field.r1() as f64;
    field.log_abs_disc() - n * EULER_GAMMA - n * (8.0 * PI).ln() - r1 * PI / 2.0
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `2 Σ count · log q · (L − m log q) / q^{m/2}` over table entries `q` and
/// `m ≥ 1` with `m log q < L`.
pub fn prime_sum(table: &IdealNormTable, l: f64) -> Result<f64> {
    table.check_covers(l)?;
    let mut acc = Kahan::default();
    for e in table.entries() {
        if e.log_norm >= l {
            break;
        }
        let lq = e.log_norm;
        let inv_sqrt = (-0.5 * lq).exp();
        let mut weight = inv_sqrt;
        let mut x = lq;
        let mut inner = Kahan::default();
        while x < l {
            inner.add((l - x) * weight);
            weight *= inv_sqrt;
            x += lq;
        }
        acc.add(f64::from(e.count) * lq * inner.sum);
    }
    Ok(2.0 * acc.sum)
}

/// `ℓ_K(F_L)`.
pub fn ell(field: &NumberField, table: &IdealNormTable, l: f64) -> Result<EllValue> {
    if !(l >= 0.0) {
        return Err(Error::InvalidArgument(format!("support parameter {l} is negative")));
    }
    let prime_sum = prime_sum(table, l)?;
    let (arch_r1, arch_n) = arch_terms(l)?;
    let value = -prime_sum
        + l * constant_term(field)
        + field.r1() as f64 * arch_r1
        + field.degree() as f64 * arch_n;
    Ok(EllValue {
        l,
        prime_sum,
        arch_r1,
        arch_n,
        value,
    })
}

/// Right-hand side minus left-hand side of the inequality for the
/// normalized triangle function `F_L / L`, i.e. `ℓ_K(F_L) / L`.
pub fn grh_check(field: &NumberField, table: &IdealNormTable, log_t: f64) -> Result<f64> {
    if !(log_t > 0.0) {
        return Err(Error::InvalidArgument(format!("log T = {log_t} must be positive")));
    }
    Ok(ell(field, table, log_t)?.value / log_t)
}

/// Right-hand side minus left-hand side of the corollary form
///
/// ```text
/// 2 Σ_{N𝔭^m < T} (log N𝔭 / N𝔭^{m/2}) (1 − m log N𝔭 / log T)
///     > log Δ − n (γ + log 8π − c₁/log T) − r₁ (π/2 − c₂/log T)
/// ```
///
/// where the archimedean integrals are replaced by their `T → ∞` limits.
/// A negative return value means `T` qualifies. Strictly decreasing in
/// `log T`.
pub fn grh_check_coro(field: &NumberField, table: &IdealNormTable, log_t: f64) -> Result<f64> {
    if !(log_t > 0.0) {
        return Err(Error::InvalidArgument(format!("log T = {log_t} must be positive")));
    }
    let n = field.degree() as f64;
    let r1 = field.r1() as f64;
    let rhs = field.log_abs_disc()
        - n * (EULER_GAMMA + (8.0 * PI).ln() - C1 / log_t)
        - r1 * (PI / 2.0 - C2 / log_t);
    Ok(rhs - prime_sum(table, log_t)? / log_t)
}
