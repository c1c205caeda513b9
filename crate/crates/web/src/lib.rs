//! Browser bindings: energy against flux, sampled radial functions and Heun
//! termination roots.

use pdm_core::analytic::{radial_level, RadialFunction};
use pdm_core::model::{heun_constraint_check, Model, HEUN_CONSTRAINT_TOL};
use pdm_core::oracle::{choose_rho_max, normalize_radial, Form, Measure};
use pdm_core::specfun::heun_termination_deltas;
use pdm_core::{Error, FieldConfig, KillingbeckParams, PseudoharmonicParams, RadialModel, RadialProblem, Result};
use wasm_bindgen::prelude::*;

/// One mass profile and potential in a field of fixed strength; the flux
/// is supplied per call.
#[wasm_bindgen]
pub struct System {
    model: RadialModel,
    e: f64,
    b0: f64,
    kz2: f64,
}

fn to_js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

impl System {
    /// `potential` is `[V0, rho0]` for the pseudoharmonic models and
    /// `[V0, V1, V2, V3, V4]` for the Killingbeck ones; `coupling` is η or λ.
    pub fn build(model: &str, coupling: f64, potential: &[f64], e: f64, b0: f64, kz2: f64) -> Result<Self> {
        let id: Model = model.parse()?;
        let pseudo = || match potential {
            [v0, rho0] => PseudoharmonicParams::new(*v0, *rho0),
            _ => Err(Error::Config(format!("{id} takes [V0, rho0]"))),
        };
        let kb = || match potential {
            [v0, v1, v2, v3, v4] => KillingbeckParams::new(*v0, *v1, *v2, *v3, *v4),
            _ => Err(Error::Config(format!("{id} takes [V0, V1, V2, V3, V4]"))),
        };
        let model = match id {
            Model::I => RadialModel::I { eta: coupling, pot: pseudo()? },
            Model::II => RadialModel::II { eta: coupling, pot: pseudo()? },
            Model::III => RadialModel::III { lambda: coupling, pot: kb()? },
            Model::IV => RadialModel::IV { lambda: coupling, pot: kb()? },
            Model::ConstantMass => RadialModel::ConstantMass { pot: pseudo()? },
        };
        model.validate()?;
        let field = FieldConfig::new(e, b0, 0.0)?;
        if id.is_heun() {
            let c = heun_constraint_check(&field, kb()?.v2, HEUN_CONSTRAINT_TOL);
            if !c.passed {
                return Err(Error::Config(format!("needs e²B0²/4 + V2 = 1, got {}", c.gamma_sq)));
            }
        }
        Ok(Self { model, e, b0, kz2 })
    }

    fn field(&self, alpha: f64) -> Result<FieldConfig> {
        FieldConfig::from_alpha(self.e, self.b0, alpha)
    }

    /// Radial energy at `samples` evenly spaced fluxes; NaN marks invalid levels.
    pub fn energy_curve(&self, m: i32, n_rho: u32, alpha_min: f64, alpha_max: f64, samples: usize) -> Result<Vec<f64>> {
        let step = if samples > 1 { (alpha_max - alpha_min) / (samples - 1) as f64 } else { 0.0 };
        (0..samples)
            .map(|i| {
                let level = radial_level(&self.model, &self.field(alpha_min + i as f64 * step)?, m as i64, self.kz2, n_rho)?;
                Ok(if level.is_valid() { level.energy.unwrap_or(f64::NAN) } else { f64::NAN })
            })
            .collect()
    }

    /// `R(ρ_i)` normalized with `ρ dρ`, at `ρ_i = i·ρ_max/samples`, `i = 1..=samples`.
    pub fn radial(&self, alpha: f64, m: i32, n_rho: u32, rho_max: f64, samples: usize) -> Result<Vec<f64>> {
        let field = self.field(alpha)?;
        let rf = RadialFunction::new(&self.model, &field, m as i64, self.kz2, n_rho)?;
        let problem = RadialProblem::new(self.model, field, m as i64, self.kz2)?;
        let hi = 1.5 * choose_rho_max(&problem, Form::U, rf.energy());
        let norm = normalize_radial(|r| rf.r(r), Measure::Rho, 1e-6, hi)?;
        (1..=samples).map(|i| Ok(norm * rf.r(rho_max * i as f64 / samples as f64)?)).collect()
    }
}

#[wasm_bindgen]
impl System {
    #[wasm_bindgen(constructor)]
    pub fn new(model: &str, coupling: f64, potential: &[f64], e: f64, b0: f64, kz2: f64) -> std::result::Result<System, JsError> {
        Self::build(model, coupling, potential, e, b0, kz2).map_err(to_js)
    }

    #[wasm_bindgen(js_name = energyVsFlux)]
    pub fn energy_vs_flux(
        &self,
        m: i32,
        n_rho: u32,
        alpha_min: f64,
        alpha_max: f64,
        samples: usize,
    ) -> std::result::Result<Vec<f64>, JsError> {
        self.energy_curve(m, n_rho, alpha_min, alpha_max, samples).map_err(to_js)
    }

    #[wasm_bindgen(js_name = radialSamples)]
    pub fn radial_samples(
        &self,
        alpha: f64,
        m: i32,
        n_rho: u32,
        rho_max: f64,
        samples: usize,
    ) -> std::result::Result<Vec<f64>, JsError> {
        self.radial(alpha, m, n_rho, rho_max, samples).map_err(to_js)
    }
}

/// The `n + 1` values of δ̃ truncating `H_B(α̃, β̃, α̃+2+2n, δ̃)` at degree `n`.
#[wasm_bindgen(js_name = heunRoots)]
pub fn heun_roots(alpha: f64, beta: f64, n: usize) -> std::result::Result<Vec<f64>, JsError> {
    heun_termination_deltas(alpha, beta, n).map_err(to_js)
}
