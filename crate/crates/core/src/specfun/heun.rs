//! Biconfluent Heun functions `H_B(α, β, γ, δ; ρ)`.
//!
//! `H_B` is the solution regular at the origin, normalized to `H_B(0) = 1`, of
//!
//! ```text
//! ρ U'' + (1 + α - βρ - 2ρ²) U' + ((γ - 2 - α) ρ - ½(δ + (1 + α) β)) U = 0.
//! ```
//!
//! Substituting `U = Σ c_k ρ^k` and collecting `ρ^k`:
//!
//! ```text
//! (k+1)(k+1+α) c_{k+1} = [β k + ½(δ + (1+α)β)] c_k + [2(k-1) - (γ - α - 2)] c_{k-1}
//! c_0 = 1,  c_{-1} = 0
//! ```
//!
//! The `ρ^{k-1}` contributions are `k(k-1) c_k + (1+α) k c_k` from the first
//! two terms, the `ρ^k` ones `-β k c_k - ½(δ + (1+α)β) c_k`, and the `ρ^{k+1}`
//! ones `-2k c_k + (γ - 2 - α) c_k`; shifting indices gives the line above.
//!
//! With `γ = α + 2 + 2n` the `c_{k-1}` coefficient vanishes at `k = n + 1`, so
//! `c_{n+1} = 0` forces every later coefficient to zero and `H_B` is a
//! degree-`n` polynomial. `c_{n+1}` is a degree-`(n+1)` polynomial in `δ`;
//! its roots are the eigenvalues (times two) of the `(n+1)×(n+1)` tridiagonal
//! matrix read off the recurrence, whose off-diagonal products
//! `2(n-k)(k+1)(k+1+α)` are positive for `α > -1`. The roots are therefore
//! real and simple, and Sturm bisection finds all of them.

use crate::error::{Error, Result};
use crate::oracle::tridiag::{kth_eigenvalue, TridiagonalOperator};

/// Default number of series terms.
pub const DEFAULT_TERMS: usize = 200;
/// Largest relative tail `|c_K ρ^K| / |Σ|` accepted by [`heun_eval`].
pub const TAIL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl HeunParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        Self { alpha, beta, gamma, delta }
    }

    /// `n` with `γ = α + 2 + 2n`, when `(γ - α - 2)/2` is a non-negative
    /// integer to within `1e-10`.
    pub fn termination_index(&self) -> Option<usize> {
        let x = (self.gamma - self.alpha - 2.0) / 2.0;
        let n = x.round();
        if n >= 0.0 && (x - n).abs() <= 1e-10 * (1.0 + x.abs()) {
            Some(n as usize)
        } else {
            None
        }
    }
}

/// Power-series coefficients of `H_B` around the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct HeunSeries {
    pub params: HeunParams,
    pub coeffs: Vec<f64>,
    /// `Some(n)` when the series is known to stop at degree `n`.
    pub degree: Option<usize>,
}

impl HeunSeries {
    pub fn truncation_k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Relative size of the last two retained terms at `rho`; zero for a
    /// polynomial.
    pub fn tail_bound(&self, rho: f64) -> f64 {
        if self.degree.is_some() {
            return 0.0;
        }
        let k = self.truncation_k();
        let (sum, _, _) = self.sum(rho);
        let last = (self.coeffs[k] * rho.powi(k as i32)).abs();
        let prev = if k > 0 { (self.coeffs[k - 1] * rho.powi(k as i32 - 1)).abs() } else { 0.0 };
        let tail = last.max(prev);
        if tail == 0.0 {
            0.0
        } else {
            tail / sum.abs()
        }
    }

    /// Value, first and second derivative by Horner's scheme.
    fn sum(&self, rho: f64) -> (f64, f64, f64) {
        let mut y = 0.0;
        let mut dy = 0.0;
        let mut d2y = 0.0;
        for &c in self.coeffs.iter().rev() {
            d2y = d2y * rho + 2.0 * dy;
            dy = dy * rho + y;
            y = y * rho + c;
        }
        (y, dy, d2y)
    }

    /// `(H, H', H'')` at `rho`, subject to the same tail check as
    /// [`heun_eval`].
    pub fn eval_with_derivatives(&self, rho: f64) -> Result<(f64, f64, f64)> {
        if rho < 0.0 {
            return Err(Error::Domain(format!("H_B evaluated at negative rho = {rho}")));
        }
        let tail = self.tail_bound(rho);
        if tail > TAIL_TOL || !tail.is_finite() {
            return Err(Error::Truncation { rho, tail, tol: TAIL_TOL });
        }
        Ok(self.sum(rho))
    }
}

fn check_branch(alpha: f64) -> Result<()> {
    if alpha > -1.0 {
        Ok(())
    } else {
        Err(Error::HeunBranch(alpha))
    }
}

fn recurrence(params: &HeunParams, terms: usize) -> Vec<f64> {
    let HeunParams { alpha, beta, gamma, delta } = *params;
    let mut c = Vec::with_capacity(terms + 1);
    c.push(1.0);
    let mut prev = 0.0;
    for k in 0..terms {
        let kf = k as f64;
        let a = beta * kf + 0.5 * (delta + (1.0 + alpha) * beta);
        let b = 2.0 * (kf - 1.0) - (gamma - alpha - 2.0);
        let next = (a * c[k] + b * prev) / ((kf + 1.0) * (kf + 1.0 + alpha));
        prev = c[k];
        c.push(next);
    }
    c
}

/// Coefficients `c_0..c_K` of `H_B`.
pub fn heun_coeffs(params: HeunParams, k: usize) -> Result<HeunSeries> {
    check_branch(params.alpha)?;
    if k == 0 {
        return Err(Error::Domain("series needs at least one term beyond c_0".into()));
    }
    Ok(HeunSeries { params, coeffs: recurrence(&params, k), degree: None })
}

/// The terminated polynomial, if `γ = α + 2 + 2n` and
/// `|c_{n+1}| <= tol · max_{k<=n} |c_k|`.
pub fn heun_polynomial(params: HeunParams, tol: f64) -> Result<Option<HeunSeries>> {
    check_branch(params.alpha)?;
    let Some(n) = params.termination_index() else {
        return Ok(None);
    };
    let mut c = recurrence(&params, n + 1);
    let last = c.pop().unwrap_or(0.0);
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if last.abs() <= tol * scale {
        Ok(Some(HeunSeries { params, coeffs: c, degree: Some(n) }))
    } else {
        Ok(None)
    }
}

/// `Σ_{k<=K} c_k ρ^k`; errors when the retained tail exceeds [`TAIL_TOL`].
pub fn heun_eval(series: &HeunSeries, rho: f64) -> Result<f64> {
    series.eval_with_derivatives(rho).map(|(y, _, _)| y)
}

/// `|c_{n+1}| / max_{k<=n} |c_k|` for `γ = α + 2 + 2n` and the given `δ`.
pub fn termination_residual(alpha: f64, beta: f64, n: usize, delta: f64) -> f64 {
    let params = HeunParams::new(alpha, beta, alpha + 2.0 + 2.0 * n as f64, delta);
    let c = recurrence(&params, n + 1);
    let scale = c[..=n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    c[n + 1].abs() / scale
}

/// All real `δ` for which `H_B(α, β, α + 2 + 2n, δ; ρ)` is a degree-`n`
/// polynomial, in ascending order.
pub fn heun_termination_deltas(alpha: f64, beta: f64, n: usize) -> Result<Vec<f64>> {
    check_branch(alpha)?;
    let size = n + 1;
    let diag: Vec<f64> = (0..size).map(|k| -beta * (k as f64 + 0.5 * (1.0 + alpha))).collect();
    let off: Vec<f64> = (0..n)
        .map(|k| {
            let kf = k as f64;
            ((kf + 1.0) * (kf + 1.0 + alpha) * 2.0 * (n as f64 - kf)).sqrt()
        })
        .collect();
    let op = TridiagonalOperator::new(diag, off)?;
    let (lo, hi) = op.gershgorin();
    let tol = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    (0..size).map(|k| kth_eigenvalue(&op, k, tol).map(|d| 2.0 * d)).collect()
}
