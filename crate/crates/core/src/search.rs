//! Drivers for the basic bound `T(K)` and the improved bound `T₁(K)`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analytic::{EULER_GAMMA, PI};
use crate::context::FieldContext;
use crate::numberfield::{DiscSource, Irreducibility, NumberField};
use crate::quadform::{self, StepParams};
use crate::{Error, Result};

/// Upper limit for bracketing `T(K)`.
pub const T_CAP: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundConfig {
    /// Increment of the δ scan at the initial `N`.
    pub delta_step: f64,
    /// Initial number of steps.
    pub n0: usize,
    /// Largest `N` the doubling loop may reach.
    pub n_cap: usize,
    pub basic_only: bool,
    pub record_timings: bool,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            delta_step: 0.0625,
            n0: 8,
            n_cap: 1 << 14,
            basic_only: false,
            record_timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    /// Index-suspect primes were left out of the prime sums.
    UntrustedPrimesExcluded,
    IrreducibilityUnverified,
    /// Part of the discriminant was not factored and may hide index divisors
    /// beyond the trial-division limit.
    CofactorUnresolved,
    UserLogDisc,
    /// `log Δ ≤ e`: only the `4.01 log² Δ` cap was used for `T₀`.
    T0FormulaSkipped,
    /// The improved search ended above `⌈T₀⌉` and was capped.
    T0CapApplied,
    /// The improved search ended above `T(K)` and was capped.
    BasicCapApplied,
    /// A binary search result failed re-verification and was repaired by a
    /// linear scan.
    MonotonicityFallback,
    /// A zero pivot forced an eigen-decomposition.
    InertiaFallback,
    /// After doubling `N` the previous bound was not re-certified.
    DoublingStalled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub basic_ms: f64,
    pub improved_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub polynomial: String,
    pub field_id: String,
    pub degree: usize,
    pub r1: usize,
    pub r2: usize,
    pub log_abs_disc: f64,
    pub disc_source: DiscSource,
    pub t0_cap: f64,
    pub t_basic: u64,
    pub ideal_count_basic: u64,
    pub t_improved: Option<u64>,
    pub ideal_count_improved: Option<u64>,
    /// Final good `(N, δ)` with `2Nδ = log T`.
    pub witness: Option<StepParams>,
    pub flags: Vec<Flag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Smallest integer `T ≥ 2` passing the corollary check
/// ([`grh_check_coro`](crate::analytic::grh_check_coro) `< 0`).
///
/// The check is strictly decreasing in `log T`: the archimedean part is
/// `a + b / log T` with `b > 0`, and the prime part `Σ w (1 − m log q / log T)`
/// only grows. So bracketing by doubling followed by bisection is exact; the
/// defining property is re-checked on the result.
pub fn bdydf(ctx: &mut FieldContext) -> Result<u64> {
    let mut passes = |t: u64| -> Result<bool> { Ok(ctx.grh_check_coro((t as f64).ln())? < 0.0) };
    if passes(2)? {
        return Ok(2);
    }
    let (mut lo, mut hi) = (2u64, 4u64);
    while !passes(hi)? {
        lo = hi;
        hi *= 2;
        if hi as f64 > T_CAP {
            return Err(Error::CapExceeded(format!(
                "no basic bound below {T_CAP:e}"
            )));
        }
    }
    // passes(lo) is false, passes(hi) is true
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(passes(hi)? && !passes(hi - 1)?);
    Ok(hi)
}

#[derive(Debug, Default, Clone, Copy)]
struct SearchStats {
    inertia_fallback: bool,
    monotonicity_fallback: bool,
}

fn good_at(ctx: &mut FieldContext, n: usize, t: u64, stats: &mut SearchStats) -> Result<bool> {
    if t < 2 {
        return Ok(false);
    }
    let delta = (t as f64).ln() / (2.0 * n as f64);
    let r = quadform::ndelta_detailed(ctx, delta, n)?;
    stats.inertia_fallback |= r.fallback;
    Ok(r.n > 0)
}

/// Smallest integer `T ∈ [t_lo, t_hi]` such that `(N, log T / 2N)` is good.
///
/// Bisection assumes the predicate is monotone in `T`. The answer is
/// re-verified and repaired by an upward scan if that assumption failed.
pub fn optimal_t(ctx: &mut FieldContext, n: usize, t_lo: f64, t_hi: f64) -> Result<u64> {
    let mut stats = SearchStats::default();
    optimal_t_inner(ctx, n, t_lo, t_hi, &mut stats)
}

fn optimal_t_inner(
    ctx: &mut FieldContext,
    n: usize,
    t_lo: f64,
    t_hi: f64,
    stats: &mut SearchStats,
) -> Result<u64> {
    if n == 0 || !(t_lo >= 1.0) || !(t_hi >= t_lo) {
        return Err(Error::InvalidArgument(format!(
            "optimal_t needs N ≥ 1 and 1 ≤ t_lo ≤ t_hi, got N = {n}, [{t_lo}, {t_hi}]"
        )));
    }
    let mut lo = (t_lo.ceil() as u64).max(2);
    let hi_start = (t_hi.ceil() as u64).max(lo);
    let mut hi = hi_start;
    if !good_at(ctx, n, hi, stats)? {
        return Err(Error::PredicateFalseAtUpper(hi));
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if good_at(ctx, n, mid, stats)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if good_at(ctx, n, hi, stats)? {
        return Ok(hi);
    }
    stats.monotonicity_fallback = true;
    for t in hi + 1..=hi_start {
        if good_at(ctx, n, t, stats)? {
            return Ok(t);
        }
    }
    Ok(hi_start)
}

/// `T₀` initializer and whether the first formula had to be skipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct T0Init {
    pub value: f64,
    pub formula_skipped: bool,
}

/// `min(4 (logΔ + loglogΔ − (γ + log 2π) n + 1 + (n+1) log(7 logΔ)/logΔ)², 4.01 log²Δ)`.
pub fn t0_init(field: &NumberField) -> T0Init {
    t0_from(field.log_abs_disc(), field.degree())
}

pub fn t0_from(log_disc: f64, n: usize) -> T0Init {
    let cap = 4.01 * log_disc * log_disc;
    if !(log_disc > std::f64::consts::E) {
        return T0Init {
            value: cap,
            formula_skipped: true,
        };
    }
    let n = n as f64;
    let inner = log_disc + log_disc.ln() - (EULER_GAMMA + (2.0 * PI).ln()) * n
        + 1.0
        + (n + 1.0) * (7.0 * log_disc).ln() / log_disc;
    T0Init {
        value: (4.0 * inner * inner).min(cap),
        formula_skipped: false,
    }
}

/// Computes `T(K)` and, unless `basic_only`, the improved bound `T₁(K)`.
///
/// The improved search starts with `N = n0` and scans `δ` on a grid until
/// `(N, δ)` is good, refines the integer `T` in the last grid cell, then
/// doubles `N` and re-optimizes `T ∈ [1, T_h]` for as long as this lowers
/// `T`.
pub fn bound(ctx: &mut FieldContext, config: &BoundConfig) -> Result<BoundReport> {
    if config.n0 == 0 || !(config.delta_step > 0.0) {
        return Err(Error::InvalidArgument("n0 ≥ 1 and delta step > 0 required".into()));
    }
    let field = ctx.field().clone();
    let t0 = t0_init(&field);
    let t0_ceil = t0.value.ceil() as u64;

    let start = Instant::now();
    let t_basic = bdydf(ctx)?;
    let basic_ms = start.elapsed().as_secs_f64() * 1e3;
    let ideal_count_basic = ctx.count_up_to(t_basic)?;

    let mut flags = Vec::new();
    if !field.index_suspects().is_empty() {
        flags.push(Flag::UntrustedPrimesExcluded);
    }
    if field.irreducibility() == Irreducibility::Unverified {
        flags.push(Flag::IrreducibilityUnverified);
    }
    if field.cofactor_unresolved() {
        flags.push(Flag::CofactorUnresolved);
    }
    if field.disc_source() == DiscSource::UserSupplied {
        flags.push(Flag::UserLogDisc);
    }
    if t0.formula_skipped {
        flags.push(Flag::T0FormulaSkipped);
    }

    let mut report = BoundReport {
        polynomial: field.poly().canonical(),
        field_id: field.id(),
        degree: field.degree(),
        r1: field.r1(),
        r2: field.r2(),
        log_abs_disc: field.log_abs_disc(),
        disc_source: field.disc_source(),
        t0_cap: t0.value,
        t_basic,
        ideal_count_basic,
        t_improved: None,
        ideal_count_improved: None,
        witness: None,
        flags,
        timings: None,
    };
    if config.basic_only {
        if config.record_timings {
            report.timings = Some(Timings {
                basic_ms,
                improved_ms: 0.0,
            });
        }
        return Ok(report);
    }

    let start = Instant::now();
    let mut stats = SearchStats::default();
    let (t_found, witness) = improved_search(ctx, config, &mut stats, &mut report.flags)?;
    let improved_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut t_improved = t_found;
    if t_improved > t_basic {
        t_improved = t_basic;
        report.flags.push(Flag::BasicCapApplied);
    }
    if t_improved > t0_ceil {
        t_improved = t0_ceil;
        report.flags.push(Flag::T0CapApplied);
    }
    if stats.inertia_fallback {
        report.flags.push(Flag::InertiaFallback);
    }
    if stats.monotonicity_fallback {
        report.flags.push(Flag::MonotonicityFallback);
    }
    report.flags.sort();
    report.flags.dedup();
    report.t_improved = Some(t_improved);
    report.ideal_count_improved = Some(ctx.count_up_to(t_improved)?);
    report.witness = Some(witness);
    if config.record_timings {
        report.timings = Some(Timings {
            basic_ms,
            improved_ms,
        });
    }
    Ok(report)
}

fn improved_search(
    ctx: &mut FieldContext,
    config: &BoundConfig,
    stats: &mut SearchStats,
    flags: &mut Vec<Flag>,
) -> Result<(u64, StepParams)> {
    let mut n = config.n0;
    let step = config.delta_step;
    let mut k = 1u32;
    loop {
        let delta = f64::from(k) * step;
        let r = quadform::ndelta_detailed(ctx, delta, n)?;
        stats.inertia_fallback |= r.fallback;
        if r.n > 0 {
            break;
        }
        if 2.0 * n as f64 * delta > T_CAP.ln() {
            return Err(Error::CapExceeded(format!("δ scan passed log T = {}", T_CAP.ln())));
        }
        k += 1;
    }
    let delta = f64::from(k) * step;
    let span = 2.0 * n as f64;
    let lo = (span * (delta - step)).exp().max(1.0);
    let hi = (span * delta).exp();
    let mut t_h = optimal_t_inner(ctx, n, lo, hi, stats)?;
    let mut witness = StepParams::new(n, (t_h as f64).ln() / span)?;
    loop {
        let t = t_h;
        let next_n = 2 * n;
        if next_n > config.n_cap {
            return Err(Error::CapExceeded(format!("N would exceed {}", config.n_cap)));
        }
        match optimal_t_inner(ctx, next_n, 1.0, t as f64, stats) {
            Ok(v) => t_h = v,
            Err(Error::PredicateFalseAtUpper(_)) => {
                flags.push(Flag::DoublingStalled);
                return Ok((t, witness));
            }
            Err(e) => return Err(e),
        }
        n = next_n;
        if t_h < t {
            witness = StepParams::new(n, (t_h as f64).ln() / (2.0 * n as f64))?;
        } else {
            return Ok((t, witness));
        }
    }
}
