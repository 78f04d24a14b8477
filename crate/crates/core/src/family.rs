//! Pure and biquadratic field families and their batch statistics.
//!
//! Pure members are `xⁿ ± p` with `p` the first prime after `10^a`. A
//! biquadratic member `Q(√p₁, √p₂)` is given by the minimal polynomial
//! `x⁴ − 2(p₁+p₂)x² + (p₁−p₂)²` of `√p₁ + √p₂`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use crate::numberfield::{arith, IntPolynomial};
use crate::search::{t0_from, BoundReport};
use crate::{Error, Result};

/// Largest estimated `T₀` a batch accepts without forcing. Sieving to `T₀`
/// costs about `T₀ log log T₀` operations plus one factorization per prime.
pub const T0_GUARD: f64 = 1e8;

pub const CSV_HEADER: &str = "label,log_disc,loglog_disc,t_basic,t_improved,ratio,scaled";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be + or -, got {s:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One field of a family, before any bound is computed.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub label: String,
    pub poly: IntPolynomial,
}

/// A family member described by its parameters, cheap to inspect before the
/// primes `nextprime(10^a)` are searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberSpec {
    Pure { n: usize, sign: Sign, a: u32 },
    Biquadratic { a1: u32, a2: u32 },
}

impl MemberSpec {
    pub fn label(&self) -> String {
        match *self {
            MemberSpec::Pure { n, sign, a } => format!("x^{n}{sign}p(10^{a})"),
            MemberSpec::Biquadratic { a1, a2 } => format!("biquadratic({a1};{a2})"),
        }
    }

    /// `log |disc P|` with every prime `nextprime(10^a)` replaced by `10^a`.
    ///
    /// `disc(xⁿ ± p) = ±nⁿ pⁿ⁻¹` and `disc(x⁴ + bx² + c) = 16c(b² − 4c)²`,
    /// which for the biquadratic polynomial is `4096 p₁² p₂² (p₁ − p₂)²`.
    pub fn estimated_log_disc(&self) -> f64 {
        let ln10 = std::f64::consts::LN_10;
        match *self {
            MemberSpec::Pure { n, a, .. } => {
                let n = n as f64;
                n * n.ln() + (n - 1.0) * f64::from(a) * ln10
            }
            MemberSpec::Biquadratic { a1, a2 } => {
                let hi = f64::from(a1.max(a2));
                4096f64.ln() + 2.0 * f64::from(a1 + a2) * ln10 + 2.0 * hi * ln10
            }
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            MemberSpec::Pure { n, .. } => n,
            MemberSpec::Biquadratic { .. } => 4,
        }
    }

    pub fn estimated_t0(&self) -> f64 {
        t0_from(self.estimated_log_disc(), self.degree()).value
    }

    /// Refuses members whose estimated `T₀` exceeds [`T0_GUARD`] unless forced.
    pub fn check_guard(&self, force: bool) -> Result<()> {
        let t0 = self.estimated_t0();
        if t0 > T0_GUARD && !force {
            return Err(Error::CapExceeded(format!(
                "{}: estimated T0 = {t0:.3e} exceeds {T0_GUARD:e}; use --force to run anyway",
                self.label()
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<FamilyMember> {
        match *self {
            MemberSpec::Pure { n, sign, a } => pure_member(n, sign, a),
            MemberSpec::Biquadratic { a1, a2 } => biquadratic_member(a1, a2),
        }
    }
}

fn prime_after_power_of_ten(a: u32) -> BigUint {
    arith::next_prime(&BigUint::from(10u32).pow(a))
}

/// `xⁿ ± nextprime(10^a)`.
pub fn pure_member(n: usize, sign: Sign, a: u32) -> Result<FamilyMember> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let p = BigInt::from(prime_after_power_of_ten(a));
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = match sign {
        Sign::Plus => p,
        Sign::Minus => -p,
    };
    coeffs[n] = BigInt::one();
    Ok(FamilyMember {
        label: MemberSpec::Pure { n, sign, a }.label(),
        poly: IntPolynomial::new(coeffs)?,
    })
}

/// Minimal polynomial of `√p₁ + √p₂` with `p₁ = nextprime(10^a1)` and
/// `p₂ = nextprime(10^a2)`, taking the next prime for `p₂` on a tie.
pub fn biquadratic_member(a1: u32, a2: u32) -> Result<FamilyMember> {
    let p1 = prime_after_power_of_ten(a1);
    let mut p2 = prime_after_power_of_ten(a2);
    if p2 == p1 {
        p2 = arith::next_prime(&p2);
    }
    let (p1, p2) = (BigInt::from(p1), BigInt::from(p2));
    let diff = &p1 - &p2;
    let coeffs = vec![
        &diff * &diff,
        BigInt::zero(),
        -BigInt::from(2) * (&p1 + &p2),
        BigInt::zero(),
        BigInt::one(),
    ];
    Ok(FamilyMember {
        label: MemberSpec::Biquadratic { a1, a2 }.label(),
        poly: IntPolynomial::new(coeffs)?,
    })
}

pub fn pure_family(n: usize, sign: Sign, a_min: u32, a_max: u32) -> Vec<MemberSpec> {
    (a_min..=a_max).map(|a| MemberSpec::Pure { n, sign, a }).collect()
}

/// All pairs `(a1, a2)` from the two inclusive ranges.
pub fn biquadratic_family(a1: (u32, u32), a2: (u32, u32)) -> Vec<MemberSpec> {
    (a1.0..=a1.1)
        .flat_map(|x| (a2.0..=a2.1).map(move |y| MemberSpec::Biquadratic { a1: x, a2: y }))
        .collect()
}

/// One output row of a batch run.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub label: String,
    pub log_disc: f64,
    pub loglog_disc: f64,
    pub t_basic: u64,
    pub t_improved: u64,
    pub ratio: f64,
    /// `ratio · (log log Δ)²`.
    pub scaled: f64,
}

impl FamilyRow {
    pub fn new(label: String, log_disc: f64, t_basic: u64, t_improved: u64) -> Self {
        let loglog_disc = log_disc.ln();
        let ratio = t_improved as f64 / t_basic as f64;
        Self {
            label,
            log_disc,
            loglog_disc,
            t_basic,
            t_improved,
            ratio,
            scaled: ratio * loglog_disc * loglog_disc,
        }
    }

    /// Needs a report with the improved bound.
    pub fn from_report(label: &str, report: &BoundReport) -> Result<Self> {
        let t1 = report.t_improved.ok_or_else(|| {
            Error::InvalidArgument(format!("{label}: report has no improved bound"))
        })?;
        Ok(Self::new(label.to_string(), report.log_abs_disc, report.t_basic, t1))
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.label,
            self.log_disc,
            self.loglog_disc,
            self.t_basic,
            self.t_improved,
            self.ratio,
            self.scaled
        )
    }

    /// Parses a CSV line. The derived columns are recomputed from
    /// `log_disc`, `t_basic` and `t_improved`.
    pub fn parse_csv(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad family row {line:?}"));
        let cols: Vec<&str> = line.trim_end().split(',').collect();
        if cols.len() != 7 {
            return Err(bad());
        }
        let log_disc: f64 = cols[1].parse().map_err(|_| bad())?;
        let t_basic: u64 = cols[3].parse().map_err(|_| bad())?;
        let t_improved: u64 = cols[4].parse().map_err(|_| bad())?;
        if t_basic == 0 {
            return Err(bad());
        }
        Ok(Self::new(cols[0].to_string(), log_disc, t_basic, t_improved))
    }
}

pub fn render_csv(rows: &[FamilyRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<FamilyRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Parse("missing family CSV header".into()));
    }
    lines.filter(|l| !l.trim().is_empty()).map(FamilyRow::parse_csv).collect()
}

pub fn mean_scaled(rows: &[FamilyRow]) -> Option<f64> {
    if rows.is_empty() {
        return None;
    }
    Some(rows.iter().map(|r| r.scaled).sum::<f64>() / rows.len() as f64)
}

/// Two whitespace-separated columns `log Δ` and `scaled`, ascending in `log Δ`.
pub fn render_plot_data(rows: &[FamilyRow]) -> String {
    let mut sorted: Vec<&FamilyRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.log_disc.total_cmp(&b.log_disc));
    let mut out = String::from("# columns: log_disc scaled\n");
    for r in sorted {
        out.push_str(&format!("{} {}\n", r.log_disc, r.scaled));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_members() {
        let m = pure_member(2, Sign::Minus, 1).unwrap();
        assert_eq!(m.poly.canonical(), "-11,0,1");
        let m = pure_member(3, Sign::Plus, 2).unwrap();
        assert_eq!(m.poly.canonical(), "101,0,0,1");
        let big = pure_member(2, Sign::Minus, 30).unwrap();
        assert_eq!(big.poly.coeffs()[0], -BigInt::from(10u128.pow(30) + 57));
        assert!(pure_member(1, Sign::Plus, 1).is_err());
        assert!(pure_family(2, Sign::Minus, 5, 4).is_empty());
        assert_eq!(biquadratic_family((1, 2), (3, 3)).len(), 2);
    }

    #[test]
    fn biquadratic_tie_takes_next_prime() {
        let m = biquadratic_member(1, 1).unwrap();
        assert_eq!(m.poly.canonical(), "4,0,-48,0,1");
        let m = biquadratic_member(1, 2).unwrap();
        // p1 = 11, p2 = 101
        assert_eq!(m.poly.canonical(), "8100,0,-224,0,1");
    }

    #[test]
    fn estimated_log_disc_matches_exact() {
        for spec in [
            MemberSpec::Pure { n: 2, sign: Sign::Minus, a: 8 },
            MemberSpec::Pure { n: 5, sign: Sign::Plus, a: 6 },
            MemberSpec::Biquadratic { a1: 3, a2: 5 },
        ] {
            let exact = arith::log_abs(&spec.build().unwrap().poly.discriminant()).unwrap();
            assert!((exact - spec.estimated_log_disc()).abs() < 0.05, "{spec:?}");
        }
    }

    #[test]
    fn guard_uses_t0_estimate() {
        let small = MemberSpec::Pure { n: 2, sign: Sign::Minus, a: 5 };
        assert!(small.estimated_t0() < T0_GUARD);
        assert!(small.check_guard(false).is_ok());
        let huge = MemberSpec::Pure { n: 2, sign: Sign::Minus, a: 2500 };
        assert!(matches!(huge.check_guard(false), Err(Error::CapExceeded(_))));
        assert!(huge.check_guard(true).is_ok());
    }

    #[test]
    fn csv_round_trip_recomputes_scaled() {
        let rows = vec![
            FamilyRow::new("a".into(), 124.0, 19162, 11071),
            FamilyRow::new("b".into(), 10.5, 60, 41),
        ];
        let text = render_csv(&rows);
        assert_eq!(parse_csv(&text).unwrap(), rows);
        let tampered = text.replace(&rows[1].scaled.to_string(), "99");
        assert_eq!(parse_csv(&tampered).unwrap(), rows);
        assert_eq!(parse_csv(&render_csv(&[])).unwrap(), vec![]);
        assert!(parse_csv("x\n").is_err());
        let r = &rows[0];
        assert!((r.scaled - r.ratio * r.loglog_disc.powi(2)).abs() <= 1e-12 * r.scaled);
    }

    #[test]
    fn plot_data_sorted() {
        let rows = vec![
            FamilyRow::new("a".into(), 50.0, 100, 60),
            FamilyRow::new("b".into(), 20.0, 100, 70),
        ];
        let text = render_plot_data(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with('#'));
        assert!(lines[1].starts_with("20 "));
        assert!(lines[2].starts_with("50 "));
        assert_eq!(mean_scaled(&[]), None);
    }
}
