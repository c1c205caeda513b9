//! Shooting cross-check, independent of any grid.
//!
//! In `x = ln ρ` with `U = ρ^{1/2} W` the radial equation reads
//! `W'' = c(x) W`, `c = ρ²(q(ρ; E) - target) + 1/4`. The regular solution is
//! started as `e^{sx}` at the inner end, the decaying one with the local WKB
//! slope `-sqrt(c)` at the outer end, and both are carried to the outer
//! classical turning point by Dormand-Prince 5(4). At an eigenvalue the two
//! logarithmic derivatives agree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::RadialProblem;

use super::grid::Form;

/// Integrator controls; the defaults suit every acceptance level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShootingControls {
    pub rtol: f64,
    /// Largest step in `ln ρ`, small enough never to skip a node.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for ShootingControls {
    fn default() -> Self {
        Self { rtol: 1e-12, max_step: 0.02, max_steps: 2_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingReport {
    /// `|L_out - L_in| / max(1, |L_in|)` with `L = W'/W` at the matching point.
    pub mismatch: f64,
    pub nodes: usize,
    pub match_rho: f64,
}

const RESCALE: f64 = 1e150;

/// Integrates `W'' = c(x) W` from `x0` to `x1`; returns the final state and
/// the number of sign changes of `W` along the way.
fn integrate<C>(c: &C, x0: f64, x1: f64, y0: [f64; 2], ctl: &ShootingControls) -> Result<([f64; 2], usize)>
where
    C: Fn(f64) -> Result<f64>,
{
    // Dormand-Prince tableau
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const C_NODES: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let dir = (x1 - x0).signum();
    let span = (x1 - x0).abs();
    let mut x = x0;
    let mut y = y0;
    let mut h = ctl.max_step.min(span) * dir;
    let mut nodes = 0;
    for _ in 0..ctl.max_steps {
        if (x1 - x) * dir <= 0.0 {
            return Ok((y, nodes));
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        let mut k = [[0.0f64; 2]; 7];
        for s in 0..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s - 1][j];
                ys[0] += h * a * kj[0];
                ys[1] += h * a * kj[1];
            }
            k[s] = [ys[1], c(x + C_NODES[s] * h)? * ys[0]];
        }
        let mut y5 = y;
        let mut err = [0.0; 2];
        for s in 0..7 {
            for i in 0..2 {
                y5[i] += h * B5[s] * k[s][i];
                err[i] += h * (B5[s] - B4[s]) * k[s][i];
            }
        }
        let scale = y[0].abs().max(y[1].abs()).max(y5[0].abs()).max(y5[1].abs());
        let e = err[0].abs().max(err[1].abs()) / (ctl.rtol * scale).max(f64::MIN_POSITIVE);
        if !e.is_finite() {
            return Err(Error::Integration(format!("non-finite step at x = {x}")));
        }
        if e <= 1.0 {
            if y5[0] != 0.0 && y[0] != 0.0 && y5[0].signum() != y[0].signum() {
                nodes += 1;
            }
            x += h;
            y = y5;
            let big = y[0].abs().max(y[1].abs());
            if big > RESCALE {
                y = [y[0] / big, y[1] / big];
            }
            if !(y[0].is_finite() && y[1].is_finite()) {
                return Err(Error::Integration(format!("overflow at x = {x}")));
            }
        }
        let grow = (0.9 * e.powf(-0.2)).clamp(0.2, 5.0);
        h = (h * grow).abs().min(ctl.max_step) * dir;
        if h.abs() < 1e-14 * span {
            return Err(Error::Integration(format!("step size underflow at x = {x}")));
        }
    }
    Err(Error::Integration("step budget exhausted".into()))
}

/// Outer classical turning point of `c(x)` on `(x0, x1)`, if any.
fn turning_point<C>(c: &C, x0: f64, x1: f64) -> Option<f64>
where
    C: Fn(f64) -> Result<f64>,
{
    let n = 4000;
    let mut prev = None;
    for i in (0..=n).rev() {
        let x = x0 + (x1 - x0) * i as f64 / n as f64;
        let v = c(x).ok()? - 0.25;
        if v < 0.0 {
            return Some(prev.unwrap_or(x));
        }
        prev = Some(x);
    }
    None
}

/// Log-derivative mismatch and node count of the regular solution at `energy`.
pub fn shooting_check(
    problem: &RadialProblem,
    form: Form,
    energy: f64,
    rho_min: f64,
    rho_max: f64,
    ctl: &ShootingControls,
) -> Result<ShootingReport> {
    form.check(problem)?;
    if !(rho_min > 0.0 && rho_max > rho_min) {
        return Err(Error::Domain(format!("bad shooting interval [{rho_min}, {rho_max}]")));
    }
    let target = form.target(problem);
    let c = |x: f64| -> Result<f64> {
        let r = x.exp();
        Ok(r * r * (form.q(problem, r, energy)? - target) + 0.25)
    };
    let (x0, x1) = (rho_min.ln(), rho_max.ln());
    let xm = turning_point(&c, x0, x1).unwrap_or(0.5 * (x0 + x1));
    let s = c(x0)?.max(0.0).sqrt();
    let (out, n_out) = integrate(&c, x0, xm, [1.0, s], ctl)?;
    let kappa = c(x1)?.max(0.0).sqrt();
    let (inw, n_in) = integrate(&c, x1, xm, [1.0, -kappa], ctl)?;
    if out[0] == 0.0 || inw[0] == 0.0 {
        return Err(Error::Integration("solution vanishes at the matching point".into()));
    }
    let (l_out, l_in) = (out[1] / out[0], inw[1] / inw[0]);
    Ok(ShootingReport {
        mismatch: (l_out - l_in).abs() / l_in.abs().max(1.0),
        nodes: n_out + n_in,
        match_rho: xm.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::radial_level;
    use crate::model::{FieldConfig, PseudoharmonicParams, RadialModel};

    fn setup(m: i64, n: u32) -> (RadialProblem, f64) {
        let f = FieldConfig::new(1.0, 2.0, 0.0).unwrap();
        let pot = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let model = RadialModel::I { eta: 1.0, pot };
        let e = radial_level(&model, &f, m, 1.0, n).unwrap().energy.unwrap();
        (RadialProblem::new(model, f, m, 1.0).unwrap(), e)
    }

    #[test]
    fn converged_level_matches() {
        let (p, e) = setup(1, 0);
        let r = shooting_check(&p, Form::U, e, 1e-8, 20.0, &ShootingControls::default()).unwrap();
        assert!(r.mismatch <= 1e-6, "{r:?}");
        assert_eq!(r.nodes, 0);
        let d = shooting_check(&p, Form::U, 1.01 * e, 1e-8, 20.0, &ShootingControls::default()).unwrap();
        assert!(d.mismatch > 1e-2, "{d:?}");
    }

    #[test]
    fn excited_level_has_one_node() {
        let (p, e) = setup(3, 1);
        let r = shooting_check(&p, Form::U, e, 1e-8, 25.0, &ShootingControls::default()).unwrap();
        assert!(r.mismatch <= 1e-6, "{r:?}");
        assert_eq!(r.nodes, 1);
    }
}
