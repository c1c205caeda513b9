//! Closed-form energies of the radial problem.
//!
//! Models I, II and the constant-mass case reduce to the two-dimensional
//! oscillator `-U'' + (ℓ̃² - 1/4)/ρ² U + (Ω²/4)ρ² U = ε U` with
//! `ε = Ω(2n_ρ + 1 + |ℓ̃|)`. Models III and IV reduce to the normal form of
//! the biconfluent Heun equation, which is quantized by `γ̃ = α̃ + 2 + 2n_ρ`
//! and terminates only if in addition `δ̃` is a root of `c_{n+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    heun_constraint_check, m_tilde, FieldConfig, KillingbeckParams, Model, PseudoharmonicParams,
    QuantumNumbers, RadialModel, HEUN_CONSTRAINT_TOL,
};
use crate::specfun::heun_termination_deltas;

/// Relative distance within which `2V₃` counts as a termination root.
pub const TERMINATION_TOL: f64 = 1e-8;

/// Relative slack under which a vanishing `|ℓ̃|` or `α̃` is called borderline.
const BORDERLINE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LevelFlags {
    /// The closed form's own sign/positivity conditions hold.
    pub precondition_ok: bool,
    /// The radial factor is a polynomial times the asymptotic envelope.
    pub termination_ok: bool,
    /// `∫|R|² ρ dρ` converges at the origin.
    pub normalizable: bool,
    /// `|ℓ̃|` sits on the edge of its domain.
    pub borderline: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelResult {
    pub model: Model,
    pub qn: QuantumNumbers,
    pub alpha: f64,
    pub m_tilde: f64,
    pub kz2: f64,
    /// Re-derived closed form; `None` when it has no real value.
    pub energy: Option<f64>,
    /// The commonly quoted closed form for the same level, where it differs.
    pub literal: Option<f64>,
    pub flags: LevelFlags,
}

impl LevelResult {
    pub fn is_valid(&self) -> bool {
        self.flags.precondition_ok && self.energy.is_some()
    }

    /// Valid and terminating; the levels the oracle must reproduce.
    pub fn is_gated(&self) -> bool {
        self.is_valid() && self.flags.termination_ok
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn base(model: Model, field: &FieldConfig, m: i64, kz2: f64, n_rho: u32) -> LevelResult {
    LevelResult {
        model,
        qn: QuantumNumbers::new(n_rho, m, 0),
        alpha: field.alpha(),
        m_tilde: m_tilde(m, field),
        kz2,
        energy: None,
        literal: None,
        flags: LevelFlags::default(),
    }
}

/// Model I, `g = ηρ²`:
/// `E = [4𝒱₁ + e²B₀² - ((2𝒱₀ + eB₀m̃ - k_z²)/(2n_ρ + 1 + |ℓ̃|))²] / 4η`
/// with `|ℓ̃| = sqrt(m̃² + 𝒱₂ + 1/4)`.
pub fn model1_energy(
    eta: f64,
    field: &FieldConfig,
    pot: &PseudoharmonicParams,
    m: i64,
    kz2: f64,
    n_rho: u32,
) -> LevelResult {
    let mut r = base(Model::I, field, m, kz2, n_rho);
    let mt = r.m_tilde;
    let eb = field.eb();
    let ell = (mt * mt + pot.v2() + 0.25).sqrt();
    let drive = 2.0 * pot.v0_chem + eb * mt - kz2;
    let omega = drive / (2.0 * n_rho as f64 + 1.0 + ell);
    let e = (4.0 * pot.v1() + eb * eb - omega * omega) / (4.0 * eta);
    r.energy = finite(e);
    r.literal = r.energy;
    r.flags = LevelFlags {
        precondition_ok: drive > 0.0,
        termination_ok: true,
        normalizable: true,
        borderline: false,
    };
    r
}

/// Model II, `g = η/ρ²`:
/// `E = [m̃² + 𝒱₂ + 1/4 - |ℓ̃|²] / η` with
/// `|ℓ̃| = (2𝒱₀ + eB₀m̃ - k_z²)/sqrt(4𝒱₁ + e²B₀²) - (2n_ρ + 1)`,
/// which must come out non-negative.
pub fn model2_energy(
    eta: f64,
    field: &FieldConfig,
    pot: &PseudoharmonicParams,
    m: i64,
    kz2: f64,
    n_rho: u32,
) -> LevelResult {
    let mut r = base(Model::II, field, m, kz2, n_rho);
    let mt = r.m_tilde;
    let eb = field.eb();
    let omega = (4.0 * pot.v1() + eb * eb).sqrt();
    let drive = 2.0 * pot.v0_chem + eb * mt - kz2;
    let count = 2.0 * n_rho as f64 + 1.0;
    let ell = drive / omega - count;
    let e = (mt * mt + pot.v2() + 0.25 - ell * ell) / eta;
    let borderline = ell.abs() <= BORDERLINE_TOL * count.max(drive.abs() / omega);
    r.energy = finite(e);
    r.literal = r.energy;
    r.flags = LevelFlags {
        precondition_ok: omega > 0.0 && (ell > 0.0 || borderline),
        termination_ok: true,
        // R ~ ρ^{|ℓ̃|-1}
        normalizable: ell > 0.0 && !borderline,
        borderline,
    };
    r
}

/// `g = 1`: `E = Ω(2n_ρ + 1 + sqrt(m̃² + 𝒱₂)) - 2𝒱₀ - eB₀m̃ + k_z²`,
/// `Ω = sqrt(4𝒱₁ + e²B₀²)`.
pub fn constant_mass_energy(
    field: &FieldConfig,
    pot: &PseudoharmonicParams,
    m: i64,
    kz2: f64,
    n_rho: u32,
) -> LevelResult {
    let mut r = base(Model::ConstantMass, field, m, kz2, n_rho);
    let mt = r.m_tilde;
    let eb = field.eb();
    let omega = (4.0 * pot.v1() + eb * eb).sqrt();
    let ell = (mt * mt + pot.v2()).sqrt();
    let e = omega * (2.0 * n_rho as f64 + 1.0 + ell) - 2.0 * pot.v0_chem - eb * mt + kz2;
    r.energy = finite(e);
    r.literal = r.energy;
    r.flags = LevelFlags {
        precondition_ok: omega > 0.0,
        termination_ok: true,
        normalizable: true,
        borderline: ell == 0.0,
    };
    r
}

fn require_constraint(field: &FieldConfig, kb: &KillingbeckParams) -> Result<()> {
    let c = heun_constraint_check(field, kb.v2, HEUN_CONSTRAINT_TOL);
    if c.passed {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "Killingbeck models need e²B₀²/4 + V₂ = 1, got {}",
            c.gamma_sq
        )))
    }
}

/// Whether `δ̃` is one of the termination roots for `(α̃, β̃, n)`.
pub fn terminates(alpha_t: f64, beta_t: f64, n: u32, delta_t: f64) -> bool {
    if !(alpha_t > -1.0 && beta_t.is_finite() && delta_t.is_finite()) {
        return false;
    }
    match heun_termination_deltas(alpha_t, beta_t, n as usize) {
        Ok(roots) => roots
            .iter()
            .any(|d| (d - delta_t).abs() <= TERMINATION_TOL * d.abs().max(1.0)),
        Err(_) => false,
    }
}

/// Biconfluent Heun parameters `(α̃, β̃, γ̃, δ̃)` of a Model III/IV level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunLevel {
    pub alpha_t: f64,
    pub beta_t: f64,
    pub gamma_t: f64,
    pub delta_t: f64,
}

/// `α̃ = 2 sqrt(m̃² + V₄ + 1/16)` and
/// `D = 2[n_ρ + 1 + sqrt(m̃² + V₄ + 1/16)] - eB₀m̃ + k_z² + V₀`.
fn model3_parts(field: &FieldConfig, kb: &KillingbeckParams, mt: f64, kz2: f64, n_rho: u32) -> (f64, f64) {
    let root = (mt * mt + kb.v4 + 1.0 / 16.0).sqrt();
    let d = 2.0 * (n_rho as f64 + 1.0 + root) - field.eb() * mt + kz2 + kb.v0;
    (2.0 * root, d)
}

/// Model III, `g = λρ`: `E = (V₁ + 2 sqrt(D)) / λ` on the branch
/// `λE - V₁ = +2 sqrt(D)`.
pub fn model3_energy(
    lambda: f64,
    field: &FieldConfig,
    kb: &KillingbeckParams,
    m: i64,
    kz2: f64,
    n_rho: u32,
) -> Result<LevelResult> {
    require_constraint(field, kb)?;
    let mut r = base(Model::III, field, m, kz2, n_rho);
    let (alpha_t, d) = model3_parts(field, kb, r.m_tilde, kz2, n_rho);
    let e = (kb.v1 + 2.0 * d.sqrt()) / lambda;
    r.energy = finite(e);
    r.literal = finite((kb.v1 + 2.0 * d).sqrt() / lambda);
    let ok = alpha_t.is_finite() && d >= 0.0 && r.energy.is_some();
    r.flags = LevelFlags {
        precondition_ok: ok,
        termination_ok: ok && terminates(alpha_t, kb.v1 - lambda * e, n_rho, 2.0 * kb.v3),
        normalizable: ok,
        borderline: d == 0.0,
    };
    Ok(r)
}

/// `α̃ = γ̃ - 2 - 2n_ρ` with `γ̃ = eB₀m̃ - k_z² - V₀ + V₁²/4`.
fn model4_alpha(field: &FieldConfig, kb: &KillingbeckParams, mt: f64, kz2: f64, n_rho: u32) -> (f64, f64) {
    let gamma_t = field.eb() * mt - kz2 - kb.v0 + kb.v1 * kb.v1 / 4.0;
    (gamma_t - 2.0 - 2.0 * n_rho as f64, gamma_t)
}

/// Model IV, `g = λ/ρ²`: `E = (m̃² + V₄ + 1/4 - α̃²/4) / λ`, `α̃ > 0`.
pub fn model4_energy(
    lambda: f64,
    field: &FieldConfig,
    kb: &KillingbeckParams,
    m: i64,
    kz2: f64,
    n_rho: u32,
) -> Result<LevelResult> {
    require_constraint(field, kb)?;
    let mut r = base(Model::IV, field, m, kz2, n_rho);
    let mt = r.m_tilde;
    let (alpha_t, gamma_t) = model4_alpha(field, kb, mt, kz2, n_rho);
    let head = mt * mt + kb.v4 + 0.25;
    r.energy = finite((head - alpha_t * alpha_t / 4.0) / lambda);
    r.literal = finite((head - alpha_t * alpha_t) / lambda);
    let ok = alpha_t > BORDERLINE_TOL * gamma_t.abs().max(1.0) && r.energy.is_some();
    r.flags = LevelFlags {
        precondition_ok: ok,
        termination_ok: ok && terminates(alpha_t, kb.v1, n_rho, 2.0 * kb.v3),
        // R ~ ρ^{(α̃-2)/2}
        normalizable: ok,
        borderline: false,
    };
    Ok(r)
}

/// Dispatches on the model; the `n_z` field of the result is zero.
pub fn radial_level(
    model: &RadialModel,
    field: &FieldConfig,
    m: i64,
    kz2: f64,
    n_rho: u32,
) -> Result<LevelResult> {
    model.validate()?;
    Ok(match model {
        RadialModel::I { eta, pot } => model1_energy(*eta, field, pot, m, kz2, n_rho),
        RadialModel::II { eta, pot } => model2_energy(*eta, field, pot, m, kz2, n_rho),
        RadialModel::III { lambda, pot } => model3_energy(*lambda, field, pot, m, kz2, n_rho)?,
        RadialModel::IV { lambda, pot } => model4_energy(*lambda, field, pot, m, kz2, n_rho)?,
        RadialModel::ConstantMass { pot } => constant_mass_energy(field, pot, m, kz2, n_rho),
    })
}

/// Heun parameters of a Model III/IV level at the given energy.
pub fn heun_level(
    model: &RadialModel,
    field: &FieldConfig,
    m: i64,
    kz2: f64,
    n_rho: u32,
    energy: f64,
) -> Result<HeunLevel> {
    let mt = m_tilde(m, field);
    match *model {
        RadialModel::III { lambda, pot } => {
            let (alpha_t, _) = model3_parts(field, &pot, mt, kz2, n_rho);
            Ok(HeunLevel {
                alpha_t,
                beta_t: pot.v1 - lambda * energy,
                gamma_t: alpha_t + 2.0 + 2.0 * n_rho as f64,
                delta_t: 2.0 * pot.v3,
            })
        }
        RadialModel::IV { pot, .. } => {
            let (alpha_t, gamma_t) = model4_alpha(field, &pot, mt, kz2, n_rho);
            Ok(HeunLevel { alpha_t, beta_t: pot.v1, gamma_t, delta_t: 2.0 * pot.v3 })
        }
        _ => Err(Error::Domain(format!("model {} has no Heun reduction", model.id()))),
    }
}
