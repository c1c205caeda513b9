//! Adaptive Simpson quadrature and radial normalization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integration measure for normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// `ρ dρ`, the cylindrical radial measure.
    Rho,
    /// `dρ`.
    Flat,
}

impl Measure {
    fn weight(&self, rho: f64) -> f64 {
        match self {
            Measure::Rho => rho,
            Measure::Flat => 1.0,
        }
    }
}

const PANELS: usize = 64;
const MAX_DEPTH: u32 = 48;

struct Simpson<'a> {
    f: &'a dyn Fn(f64) -> Result<f64>,
}

impl Simpson<'_> {
    #[allow(clippy::too_many_arguments)]
    fn rec(&self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = ((self.f)(lm)?, (self.f)(rm)?);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(self.rec(a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
            + self.rec(m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
    }
}

/// `∫_a^b f` by adaptive Simpson to relative tolerance `rel_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(b > a && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    let s = Simpson { f: &f };
    let h = (b - a) / PANELS as f64;
    let mut panels = Vec::with_capacity(PANELS);
    let mut coarse = 0.0;
    for i in 0..PANELS {
        let (x0, x1) = (a + i as f64 * h, if i + 1 == PANELS { b } else { a + (i + 1) as f64 * h });
        let (f0, fm, f1) = (f(x0)?, f(0.5 * (x0 + x1))?, f(x1)?);
        let w = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        coarse += w.abs();
        panels.push((x0, x1, f0, fm, f1, w));
    }
    let tol = rel_tol * coarse.max(f64::MIN_POSITIVE) / PANELS as f64;
    let mut total = 0.0;
    for (x0, x1, f0, fm, f1, w) in panels {
        total += s.rec(x0, x1, f0, fm, f1, w, tol, MAX_DEPTH)?;
    }
    if !total.is_finite() {
        return Err(Error::Integration("integral is not finite".into()));
    }
    Ok(total)
}

/// `N` with `N² ∫_a^b |f|² w dρ = 1`.
///
/// For `a > 0` the piece `[0, a]` is added from the local power law of the
/// integrand, and an integrand growing at least like `1/ρ` there is reported
/// as divergent.
pub fn normalize_radial<F>(f: F, measure: Measure, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let dens = |r: f64| -> Result<f64> {
        let v = f(r)?;
        Ok(v * v * measure.weight(r))
    };
    let mut total = integrate(dens, a, b, 1e-10)?;
    if a > 0.0 {
        let (outer, inner) = (dens(a)?, dens(a / 4.0)?);
        if outer > 0.0 && inner > 0.0 {
            let s = (outer / inner).ln() / 4f64.ln();
            if s <= -1.0 + 1e-6 {
                return Err(Error::Integration(format!(
                    "|f|² ~ ρ^{s:.3} at the origin is not integrable"
                )));
            }
            total += a * outer / (s + 1.0);
        }
    }
    if !(total > 0.0) {
        return Err(Error::Degenerate("function has zero norm".into()));
    }
    Ok(1.0 / total.sqrt())
}
