//! Pointwise residuals of second-order linear ODEs.

use crate::error::{Error, Result};

use super::heun::HeunParams;

/// A linear homogeneous second-order ODE whose left-hand side is a sum of
/// terms that vanishes on a solution.
pub trait LinearOde {
    fn terms(&self, rho: f64, y: f64, dy: f64, d2y: f64) -> Vec<f64>;
}

/// The two forms in which the biconfluent Heun equation appears.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeunOde {
    /// `y'' + [(1-α²)/(4ρ²) - δ/(2ρ) - βρ - ρ² + γ - β²/4] y = 0`, the
    /// Schrödinger-like form of the Model III (R) and Model IV (U) equations.
    Normal(HeunParams),
    /// `ρy'' + (1 + α - βρ - 2ρ²) y' + ((γ - 2 - α)ρ - ½(δ + (1+α)β)) y = 0`.
    Biconfluent(HeunParams),
}

// Composite coefficients are split into monomials so that cancellation
// happens in the sum and the scale sees the uncancelled magnitudes.
impl LinearOde for HeunOde {
    fn terms(&self, rho: f64, y: f64, dy: f64, d2y: f64) -> Vec<f64> {
        match *self {
            HeunOde::Normal(HeunParams { alpha, beta, gamma, delta }) => vec![
                d2y,
                (1.0 - alpha * alpha) / (4.0 * rho * rho) * y,
                -delta / (2.0 * rho) * y,
                -beta * rho * y,
                -rho * rho * y,
                gamma * y,
                -beta * beta / 4.0 * y,
            ],
            HeunOde::Biconfluent(HeunParams { alpha, beta, gamma, delta }) => vec![
                rho * d2y,
                (1.0 + alpha) * dy,
                -beta * rho * dy,
                -2.0 * rho * rho * dy,
                gamma * rho * y,
                -(2.0 + alpha) * rho * y,
                -0.5 * delta * y,
                -0.5 * (1.0 + alpha) * beta * y,
            ],
        }
    }
}

impl<F> LinearOde for F
where
    F: Fn(f64, f64, f64, f64) -> Vec<f64>,
{
    fn terms(&self, rho: f64, y: f64, dy: f64, d2y: f64) -> Vec<f64> {
        self(rho, y, dy, d2y)
    }
}

/// Largest relative residual over `points`.
///
/// At each point the sum of the ODE's terms is divided by the largest term
/// magnitude. `solution` returns `(y, y', y'')`; see [`fd_derivatives`] when
/// only values are available.
pub fn ode_residual<O, S>(ode: &O, solution: S, points: &[f64]) -> Result<f64>
where
    O: LinearOde + ?Sized,
    S: Fn(f64) -> Result<(f64, f64, f64)>,
{
    let mut worst = 0.0f64;
    let mut any = false;
    for &rho in points {
        if !(rho > 0.0) {
            return Err(Error::Domain(format!("residual sample point must be > 0, got {rho}")));
        }
        let (y, dy, d2y) = solution(rho)?;
        if y != 0.0 || dy != 0.0 || d2y != 0.0 {
            any = true;
        }
        let terms = ode.terms(rho, y, dy, d2y);
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        if scale == 0.0 {
            continue;
        }
        let sum: f64 = terms.iter().sum();
        worst = worst.max(sum.abs() / scale);
    }
    if any {
        Ok(worst)
    } else {
        Err(Error::Degenerate("function vanishes at every sample point".into()))
    }
}

/// `(f, f', f'')` at `x` by central differences with one Richardson step,
/// using a step proportional to `x`.
pub fn fd_derivatives<F>(f: F, x: f64) -> Result<(f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = 0.01 * x.abs().clamp(1e-3, 1.0);
    let f0 = f(x)?;
    let d1 = |h: f64| -> Result<(f64, f64)> {
        let p = f(x + h)?;
        let m = f(x - h)?;
        Ok(((p - m) / (2.0 * h), (p - 2.0 * f0 + m) / (h * h)))
    };
    let (a1, a2) = d1(h)?;
    let (b1, b2) = d1(h / 2.0)?;
    Ok((f0, (4.0 * b1 - a1) / 3.0, (4.0 * b2 - a2) / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::heun::{heun_polynomial, heun_termination_deltas};

    #[test]
    fn exact_degree_zero_solution() {
        let (alpha, beta) = (0.5, -2.0);
        let p = HeunParams::new(alpha, beta, alpha + 2.0, -(1.0 + alpha) * beta);
        let s = heun_polynomial(p, 1e-12).unwrap().unwrap();
        let pts: Vec<f64> = (1..=50).map(|i| 0.1 * i as f64).collect();
        let r = ode_residual(&HeunOde::Biconfluent(p), |x| s.eval_with_derivatives(x), &pts).unwrap();
        assert!(r <= 1e-10, "{r}");
    }

    #[test]
    fn perturbed_solution_is_detected() {
        let (alpha, beta, n) = (1.2, 0.8, 3);
        let delta = heun_termination_deltas(alpha, beta, n).unwrap()[1];
        let p = HeunParams::new(alpha, beta, alpha + 2.0 + 2.0 * n as f64, delta);
        let mut s = heun_polynomial(p, 1e-10).unwrap().unwrap();
        let pts: Vec<f64> = (1..=50).map(|i| 0.1 * i as f64).collect();
        let ode = HeunOde::Biconfluent(p);
        assert!(ode_residual(&ode, |x| s.eval_with_derivatives(x), &pts).unwrap() <= 1e-9);
        for c in s.coeffs.iter_mut().skip(1) {
            *c *= 1.01;
        }
        assert!(ode_residual(&ode, |x| s.eval_with_derivatives(x), &pts).unwrap() > 1e-3);
    }

    #[test]
    fn zero_function_is_rejected() {
        let p = HeunParams::new(0.5, 0.0, 2.5, 0.0);
        let r = ode_residual(&HeunOde::Normal(p), |_| Ok((0.0, 0.0, 0.0)), &[0.5, 1.0]);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn finite_differences_of_smooth_function() {
        let (y, dy, d2y) = fd_derivatives(|x| Ok(x.sin() * x.exp()), 1.3).unwrap();
        let x: f64 = 1.3;
        assert!((y - x.sin() * x.exp()).abs() < 1e-15);
        assert!((dy - (x.sin() + x.cos()) * x.exp()).abs() < 1e-9);
        assert!((d2y - 2.0 * x.cos() * x.exp()).abs() < 1e-8);
    }
}
