//! Closed-form radial eigenfunctions.
//!
//! Every model's reduced solution has the shape
//! `U(ρ) = ρ^a exp(-bρ - cρ²) P(ρ)` with `P` either a terminating Kummer
//! function of `Ωρ²/2` or a biconfluent Heun series, and `R = ρ^p U` with
//! `p` fixed by `R = sqrt(g/ρ) U` (constant factors of `g` dropped).
//! Values are unnormalized; see [`crate::oracle::quad`] for a normalizer.

use crate::error::{Error, Result};
use crate::model::{m_tilde, FieldConfig, RadialModel};
use crate::specfun::heun::{heun_coeffs, heun_polynomial, HeunSeries, DEFAULT_TERMS};
use crate::specfun::{kummer_1f1, HeunParams};

use super::levels::{heun_level, radial_level, LevelResult};

#[derive(Debug, Clone, PartialEq)]
enum Factor {
    /// `₁F₁(-n; b; kρ²)`.
    Kummer { n: u32, b: f64, k: f64 },
    Heun(HeunSeries),
}

impl Factor {
    fn eval(&self, rho: f64) -> Result<(f64, f64, f64)> {
        match self {
            Factor::Kummer { n, b, k } => {
                let a = -(*n as f64);
                let t = k * rho * rho;
                let m0 = kummer_1f1(a, *b, t)?;
                let m1 = a / b * kummer_1f1(a + 1.0, b + 1.0, t)?;
                let m2 = a * (a + 1.0) / (b * (b + 1.0)) * kummer_1f1(a + 2.0, b + 2.0, t)?;
                let dt = 2.0 * k * rho;
                Ok((m0, m1 * dt, m2 * dt * dt + m1 * 2.0 * k))
            }
            Factor::Heun(s) => s.eval_with_derivatives(rho),
        }
    }
}

/// `R(ρ)` and the reduced `U(ρ)` of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    pub level: LevelResult,
    a: f64,
    b: f64,
    c: f64,
    p: f64,
    factor: Factor,
}

impl RadialFunction {
    /// Builds the eigenfunction of a valid level; non-terminating Heun
    /// levels get a truncated series that only evaluates inside its
    /// convergence window.
    pub fn new(model: &RadialModel, field: &FieldConfig, m: i64, kz2: f64, n_rho: u32) -> Result<Self> {
        let level = radial_level(model, field, m, kz2, n_rho)?;
        let Some(energy) = level.energy.filter(|_| level.is_valid()) else {
            return Err(Error::Domain(format!(
                "level (n_rho = {n_rho}, m = {m}) of {} is invalid",
                model.id()
            )));
        };
        let mt = m_tilde(m, field);
        let eb = field.eb();
        let osc = |ell: f64, omega: f64, p: f64| Self {
            level: level.clone(),
            a: ell + 0.5,
            b: 0.0,
            c: omega / 4.0,
            p,
            factor: Factor::Kummer { n: n_rho, b: ell + 1.0, k: omega / 2.0 },
        };
        Ok(match *model {
            RadialModel::I { eta, pot } => {
                let ell = (mt * mt + pot.v2() + 0.25).sqrt();
                let omega = (4.0 * pot.v1() + eb * eb - 4.0 * eta * energy).sqrt();
                osc(ell, omega, 0.5)
            }
            RadialModel::II { eta, pot } => {
                let ell = (mt * mt + pot.v2() + 0.25 - eta * energy).max(0.0).sqrt();
                let omega = (4.0 * pot.v1() + eb * eb).sqrt();
                osc(ell, omega, -1.5)
            }
            RadialModel::ConstantMass { pot } => {
                let ell = (mt * mt + pot.v2()).sqrt();
                let omega = (4.0 * pot.v1() + eb * eb).sqrt();
                osc(ell, omega, -0.5)
            }
            RadialModel::III { .. } | RadialModel::IV { .. } => {
                let h = heun_level(model, field, m, kz2, n_rho, energy)?;
                let params = HeunParams::new(h.alpha_t, h.beta_t, h.gamma_t, h.delta_t);
                let series = match heun_polynomial(params, 1e-8)? {
                    Some(s) => s,
                    None => heun_coeffs(params, DEFAULT_TERMS)?,
                };
                let p = if matches!(model, RadialModel::III { .. }) { 0.0 } else { -1.5 };
                Self {
                    level,
                    a: (1.0 + h.alpha_t) / 2.0,
                    b: h.beta_t / 2.0,
                    c: 0.5,
                    p,
                    factor: Factor::Heun(series),
                }
            }
        })
    }

    pub fn energy(&self) -> f64 {
        self.level.energy.unwrap_or(f64::NAN)
    }

    /// Leading power of `R` at the origin.
    pub fn r_exponent(&self) -> f64 {
        self.a + self.p
    }

    /// `(U, U', U'')`.
    pub fn u(&self, rho: f64) -> Result<(f64, f64, f64)> {
        if !(rho > 0.0) {
            return Err(Error::Domain(format!("radial function needs rho > 0, got {rho}")));
        }
        let (f0, f1, f2) = self.factor.eval(rho)?;
        let w = (self.a * rho.ln() - self.b * rho - self.c * rho * rho).exp();
        // w'/w and (w'/w)'
        let l = self.a / rho - self.b - 2.0 * self.c * rho;
        let dl = -self.a / (rho * rho) - 2.0 * self.c;
        Ok((w * f0, w * (l * f0 + f1), w * ((l * l + dl) * f0 + 2.0 * l * f1 + f2)))
    }

    /// `R(ρ)`.
    pub fn r(&self, rho: f64) -> Result<f64> {
        Ok(self.u(rho)?.0 * rho.powf(self.p))
    }

    /// Sign changes of `R` on a uniform sample of `(0, rho_max]`.
    pub fn node_count(&self, rho_max: f64, samples: usize) -> Result<usize> {
        let mut nodes = 0;
        let mut last = 0.0f64;
        for i in 1..=samples {
            let v = self.r(rho_max * i as f64 / samples as f64)?;
            if v != 0.0 {
                if last != 0.0 && v.signum() != last.signum() {
                    nodes += 1;
                }
                last = v;
            }
        }
        Ok(nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{KillingbeckParams, PseudoharmonicParams, RadialProblem};
    use crate::specfun::{ode_residual, HeunOde};

    fn field() -> FieldConfig {
        FieldConfig::new(1.0, 2.0, 0.0).unwrap()
    }

    fn pts() -> Vec<f64> {
        (0..50).map(|i| 0.2 + 3.8 * i as f64 / 49.0).collect()
    }

    /// Residual of `-U'' + [(m̃² - 1/4)/ρ² + V_eff(ρ; E)] U = Ẽ U`.
    fn u_form_residual(model: RadialModel, m: i64, kz2: f64, n: u32) -> f64 {
        let f = RadialFunction::new(&model, &field(), m, kz2, n).unwrap();
        let prob = RadialProblem::new(model, field(), m, kz2).unwrap();
        let e = f.energy();
        let ode = |rho: f64, y: f64, _dy: f64, d2y: f64| {
            vec![-d2y, prob.u_form_potential(rho, e).unwrap() * y, -prob.e_tilde() * y]
        };
        ode_residual(&ode, |x| f.u(x), &pts()).unwrap()
    }

    #[test]
    fn model1_solves_reduced_equation() {
        let pot = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let model = RadialModel::I { eta: 1.0, pot };
        assert!(u_form_residual(model, 1, 1.0, 0) < 1e-8);
        let pot = PseudoharmonicParams::new(1.5, 0.8).unwrap();
        let model = RadialModel::I { eta: 0.7, pot };
        for n in 0..3 {
            assert!(u_form_residual(model, 2, 0.3, n) < 1e-8);
        }
    }

    #[test]
    fn model1_shape() {
        let pot = PseudoharmonicParams::new(0.0, 1.0).unwrap();
        let model = RadialModel::I { eta: 1.0, pot };
        let f = RadialFunction::new(&model, &field(), 1, 1.0, 0).unwrap();
        assert!((f.r_exponent() - (1.0 + 1.25f64.sqrt())).abs() < 1e-15);
        assert_eq!(f.node_count(8.0, 800).unwrap(), 0);
        let g = RadialFunction::new(&model, &field(), 3, 1.0, 1).unwrap();
        assert_eq!(g.node_count(12.0, 1200).unwrap(), 1);
    }

    #[test]
    fn model2_solves_reduced_equation() {
        let pot = PseudoharmonicParams::new(1.0, 1.0).unwrap();
        let model = RadialModel::II { eta: 1.0, pot };
        assert!(u_form_residual(model, 1, 0.0, 0) < 1e-8);
        assert!(u_form_residual(model, 2, 0.0, 0) < 1e-8);
        let f = RadialFunction::new(&model, &field(), 1, 0.0, 0).unwrap();
        assert!((f.r_exponent() - (2f64.sqrt() - 2.0)).abs() < 1e-12);
        assert!(RadialFunction::new(&model, &field(), 1, 0.0, 1).is_err());
    }

    #[test]
    fn constant_mass_solves_reduced_equation() {
        let pot = PseudoharmonicParams::new(0.5, 1.2).unwrap();
        let model = RadialModel::ConstantMass { pot };
        for (m, n) in [(0, 0), (1, 1), (2, 2), (-1, 1)] {
            assert!(u_form_residual(model, m, 0.4, n) < 1e-8);
        }
    }

    #[test]
    fn model3_terminated_case() {
        let kb = KillingbeckParams { v3: 2.371708245126284, ..Default::default() };
        let model = RadialModel::III { lambda: 1.0, pot: kb };
        let f = RadialFunction::new(&model, &field(), 0, 0.0, 0).unwrap();
        assert!(f.level.flags.termination_ok);
        assert!((f.r_exponent() - 0.75).abs() < 1e-15);
        assert!(u_form_residual(model, 0, 0.0, 0) < 1e-8);
        // and the normal Heun form directly
        let h = heun_level(&model, &field(), 0, 0.0, 0, f.energy()).unwrap();
        let p = HeunParams::new(h.alpha_t, h.beta_t, h.gamma_t, h.delta_t);
        let ode = HeunOde::Normal(p);
        assert!(ode_residual(&ode, |x| f.u(x), &pts()).unwrap() < 1e-8);
    }

    #[test]
    fn model4_terminated_case() {
        let kb = KillingbeckParams::default();
        let model = RadialModel::IV { lambda: 1.0, pot: kb };
        let f = RadialFunction::new(&model, &field(), 3, 0.0, 0).unwrap();
        assert!((f.r_exponent() - 1.0).abs() < 1e-15);
        assert!(u_form_residual(model, 3, 0.0, 0) < 1e-8);
        let kb = KillingbeckParams { v1: 0.6, ..Default::default() };
        let model = RadialModel::IV { lambda: 1.0, pot: kb };
        let r = radial_level(&model, &field(), 4, 0.0, 0).unwrap();
        if r.flags.termination_ok {
            assert!(u_form_residual(model, 4, 0.0, 0) < 1e-8);
        }
    }

    #[test]
    fn non_terminating_series_is_window_limited() {
        let model = RadialModel::IV { lambda: 1.0, pot: KillingbeckParams::default() };
        let f = RadialFunction::new(&model, &field(), 3, 0.0, 1).unwrap();
        assert!(!f.level.flags.termination_ok);
        assert!(f.r(0.5).is_ok());
        assert!(matches!(f.r(40.0), Err(Error::Truncation { .. })));
    }
}
