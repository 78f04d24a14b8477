//! The quadratic form `q_K(Φ) = ℓ_K(Φ ∗ Φ)` restricted to step functions of
//! fixed width, and an incremental test for a negative eigenvalue.
//!
//! `S(N, δ)` has basis `Φ_i = 1_{(−iδ, iδ)}` for `1 ≤ i ≤ N`, and
//! `Φ_i ∗ Φ_j = F_{(i+j)δ} − F_{|i−j|δ}`, so with `tab[k] = ℓ_K(F_{kδ})` the
//! Gram matrix is `A[i][j] = tab[i+j] − tab[|i−j|]`. The basis is nested in
//! `N`, so growing `N` only appends a row, and the LDLᵀ factorization can be
//! extended in `O(N²)`. By Sylvester's law of inertia the number of negative
//! pivots is the number of negative eigenvalues.

use serde::{Deserialize, Serialize};

use crate::context::FieldContext;
use crate::{Error, Result};

/// Relative pivot tolerance.
pub const PIVOT_TOL: f64 = 1e-10;

/// A pair `(N, δ)` naming `S(N, δ)`: width-`δ` step functions supported in
/// `[−Nδ, Nδ]`, whose autocorrelations are supported in `[−2Nδ, 2Nδ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepParams {
    pub n: usize,
    pub delta: f64,
}

impl StepParams {
    pub fn new(n: usize, delta: f64) -> Result<Self> {
        if n == 0 || !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "step parameters need N ≥ 1 and δ > 0, got N = {n}, δ = {delta}"
            )));
        }
        Ok(Self { n, delta })
    }

    /// `log T = 2Nδ`.
    pub fn log_t(&self) -> f64 {
        2.0 * self.n as f64 * self.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pivot {
    Positive,
    Negative,
    /// `|d| ≤ tol`: inertia from this row on is not trustworthy.
    Zero,
}

/// Incremental LDLᵀ of a symmetric matrix grown one row at a time.
#[derive(Debug, Clone, Default)]
pub struct Ldl {
    /// Assembled rows, lower triangle including the diagonal.
    rows: Vec<Vec<f64>>,
    /// Strict lower part of the unit lower-triangular factor.
    lower: Vec<Vec<f64>>,
    diag: Vec<f64>,
    zero: Vec<bool>,
    row_abs_sums: Vec<f64>,
    neg_count: usize,
}

impl Ldl {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn neg_count(&self) -> usize {
        self.neg_count
    }

    /// Index of the first pivot flagged as zero.
    pub fn first_zero(&self) -> Option<usize> {
        self.zero.iter().position(|&z| z)
    }

    /// `‖A‖_∞` of the assembled matrix.
    pub fn norm_inf(&self) -> f64 {
        self.row_abs_sums.iter().copied().fold(0.0, f64::max)
    }

    pub fn tolerance(&self) -> f64 {
        PIVOT_TOL * self.norm_inf().max(1.0)
    }

    /// Appends row `k = dim` given as `A[k][0..=k]`.
    pub fn push_row(&mut self, row: &[f64]) -> Pivot {
        let k = self.dim();
        assert_eq!(row.len(), k + 1, "row length must be dim + 1");
        let mut l = vec![0.0; k];
        for j in 0..k {
            if self.zero[j] {
                continue;
            }
            let lj = &self.lower[j];
            let s: f64 = (0..j).map(|i| l[i] * lj[i] * self.diag[i]).sum();
            l[j] = (row[j] - s) / self.diag[j];
        }
        let d = row[k] - (0..k).map(|i| l[i] * l[i] * self.diag[i]).sum::<f64>();

        let mut own = 0.0;
        for (j, &a) in row[..k].iter().enumerate() {
            self.row_abs_sums[j] += a.abs();
            own += a.abs();
        }
        self.row_abs_sums.push(own + row[k].abs());
        self.rows.push(row.to_vec());

        let tol = self.tolerance();
        let pivot = if d.abs() <= tol {
            Pivot::Zero
        } else if d < 0.0 {
            self.neg_count += 1;
            Pivot::Negative
        } else {
            Pivot::Positive
        };
        self.lower.push(l);
        self.diag.push(d);
        self.zero.push(pivot == Pivot::Zero);
        pivot
    }

    /// The leading `m × m` block as a dense symmetric matrix.
    pub fn leading_block(&self, m: usize) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..=i {
                a[i][j] = self.rows[i][j];
                a[j][i] = self.rows[i][j];
            }
        }
        a
    }

    /// `L·D·Lᵀ` rebuilt from the factors.
    pub fn reconstruct(&self) -> Vec<Vec<f64>> {
        let m = self.dim();
        let l_at = |i: usize, j: usize| -> f64 {
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => 1.0,
                std::cmp::Ordering::Greater => self.lower[i][j],
                std::cmp::Ordering::Less => 0.0,
            }
        };
        let mut a = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..m {
                a[i][j] = (0..=i.min(j)).map(|k| l_at(i, k) * self.diag[k] * l_at(j, k)).sum();
            }
        }
        a
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>]) -> Vec<f64> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Gram matrix state for one `δ`: the table of `ℓ_K(F_{kδ})` values and the
/// growing factorization.
#[derive(Debug, Clone)]
pub struct LdlState {
    tab: Vec<f64>,
    ldl: Ldl,
}

impl Default for LdlState {
    fn default() -> Self {
        Self::new()
    }
}

impl LdlState {
    pub fn new() -> Self {
        Self {
            tab: vec![0.0],
            ldl: Ldl::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ldl.dim()
    }

    pub fn tab(&self) -> &[f64] {
        &self.tab
    }

    pub fn ldl(&self) -> &Ldl {
        &self.ldl
    }

    /// Grows the matrix from `N − 1` to `N` given `tab[2N−1]` and `tab[2N]`.
    pub fn push_tab_pair(&mut self, odd: f64, even: f64) -> Pivot {
        let n = self.dim() + 1;
        self.tab.push(odd);
        self.tab.push(even);
        let row: Vec<f64> = (1..=n).map(|i| self.tab[n + i] - self.tab[n - i]).collect();
        self.ldl.push_row(&row)
    }

    /// Evaluates `ℓ_K(F_{(2N−1)δ})`, `ℓ_K(F_{2Nδ})` and appends row `N`.
    pub fn assemble_row(&mut self, ctx: &mut FieldContext, delta: f64) -> Result<Pivot> {
        let n = (self.dim() + 1) as f64;
        let odd = ctx.ell((2.0 * n - 1.0) * delta)?.value;
        let even = ctx.ell(2.0 * n * delta)?.value;
        Ok(self.push_tab_pair(odd, even))
    }

    /// Whether a reliable negative pivot has been seen: one that precedes
    /// every zero-flagged pivot.
    pub fn has_negative(&self) -> bool {
        let first_neg = self.ldl.diag.iter().zip(&self.ldl.zero).position(|(&d, &z)| !z && d < 0.0);
        match (first_neg, self.ldl.first_zero()) {
            (Some(neg), Some(zero)) => neg < zero,
            (Some(_), None) => true,
            _ => false,
        }
    }

    /// The assembled `dim × dim` Gram matrix.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.ldl.leading_block(self.dim())
    }
}

/// Outcome of a negative-eigenvalue search over `N = 1, 2, …, n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NDelta {
    /// Smallest `N` found with a negative eigenvalue, or 0.
    pub n: usize,
    /// Whether a zero pivot forced the eigen-decomposition fallback.
    pub fallback: bool,
}

/// Searches for the first `N ≤ n_max` whose Gram block has a negative
/// eigenvalue. `tab_pair(N)` supplies `(tab[2N−1], tab[2N])`.
pub fn ndelta_with<F>(mut tab_pair: F, n_max: usize) -> Result<NDelta>
where
    F: FnMut(usize) -> Result<(f64, f64)>,
{
    search(n_max, |state| {
        let (odd, even) = tab_pair(state.dim() + 1)?;
        state.push_tab_pair(odd, even);
        Ok(())
    })
}

fn search<G>(n_max: usize, mut grow: G) -> Result<NDelta>
where
    G: FnMut(&mut LdlState) -> Result<()>,
{
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut state = LdlState::new();
    for n in 1..=n_max {
        grow(&mut state)?;
        if state.has_negative() {
            return Ok(NDelta { n, fallback: false });
        }
    }
    let Some(zero) = state.ldl.first_zero() else {
        return Ok(NDelta { n: 0, fallback: false });
    };
    // Pivots before `zero` were all positive. Negativity of the leading block
    // is monotone in its size (Cauchy interlacing), so bisect on it.
    let negative = |m: usize| -> bool {
        let block = state.ldl.leading_block(m);
        let tol = PIVOT_TOL * block_norm_inf(&block).max(1.0);
        jacobi_eigenvalues(&block).into_iter().any(|e| e < -tol)
    };
    if !negative(n_max) {
        return Ok(NDelta { n: 0, fallback: true });
    }
    let (mut lo, mut hi) = (zero + 1, n_max);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if negative(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(NDelta { n: hi, fallback: true })
}

fn block_norm_inf(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Smallest `N ≤ n_max` such that `(N, δ)` is good for the field, or 0.
pub fn ndelta(ctx: &mut FieldContext, delta: f64, n_max: usize) -> Result<usize> {
    Ok(ndelta_detailed(ctx, delta, n_max)?.n)
}

pub fn ndelta_detailed(ctx: &mut FieldContext, delta: f64, n_max: usize) -> Result<NDelta> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("δ = {delta} must be positive")));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    ctx.ensure(2.0 * n_max as f64 * delta)?;
    ndelta_with(
        |n| {
            let n = n as f64;
            let odd = ctx.ell((2.0 * n - 1.0) * delta)?.value;
            let even = ctx.ell(2.0 * n * delta)?.value;
            Ok((odd, even))
        },
        n_max,
    )
}

/// Builds the full Gram matrix `A_N` for `(N, δ)`.
pub fn gram_matrix(ctx: &mut FieldContext, params: StepParams) -> Result<Vec<Vec<f64>>> {
    let mut state = LdlState::new();
    for _ in 0..params.n {
        state.assemble_row(ctx, params.delta)?;
    }
    Ok(state.matrix())
}
