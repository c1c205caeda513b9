use anyhow::{Context, Result};
use pdm_core::analytic::{spectrum_table, total_energy, LevelResult, RadialFunction, ZChannel};
use pdm_core::oracle::solve::z_domain;
use pdm_core::oracle::{choose_rho_max, normalize_radial, Form, Measure};
use pdm_core::specfun::{heun_termination_deltas, termination_residual};
use pdm_core::validate::{validate_table, LevelValidation, Summary};
use pdm_core::{QuantumNumbers, RadialProblem};
use serde::Serialize;

use crate::config::{ConfigError, Format, Job};
use crate::output::{flag, g17, opt, Csv, SCHEMA_VERSION};

/// Residual below which a termination root counts as a polynomial.
const POLYNOMIAL_TOL: f64 = 1e-8;

/// Rendered artifact plus the process exit status it implies.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    config_hash: &'a str,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<Summary>,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(env: &Envelope<'_, T>) -> Result<String> {
    let mut s = serde_json::to_string_pretty(env).context("serializing JSON output")?;
    s.push('\n');
    Ok(s)
}

fn meta(job: &Job, command: &str) -> Vec<(&'static str, String)> {
    vec![
        ("schema_version", SCHEMA_VERSION.to_string()),
        ("config_hash", format!("sha256:{}", job.hash)),
        ("command", command.to_string()),
        ("model", job.model.id().to_string()),
    ]
}

fn qn_cells(qn: &QuantumNumbers) -> [String; 3] {
    [qn.n_rho.to_string(), qn.m.to_string(), qn.n_z.to_string()]
}

#[derive(Serialize)]
struct Levels<'a, T> {
    levels: &'a [T],
}

pub fn spectrum(job: &Job, format: Format) -> Result<Outcome> {
    let table = spectrum_table(&job.model, &job.z, &job.field, &job.ranges)?;
    let text = match format {
        Format::Json => json(&Envelope {
            schema_version: SCHEMA_VERSION,
            config_hash: &job.hash,
            command: "spectrum",
            model: Some(job.model.id().to_string()),
            summary: None,
            body: Levels { levels: &table },
        })?,
        Format::Csv => spectrum_csv(job, &table),
    };
    Ok(Outcome { text, code: 0 })
}

fn spectrum_csv(job: &Job, table: &[LevelResult]) -> String {
    let mut csv = Csv::new(
        &meta(job, "spectrum"),
        &[
            "n_rho", "m", "n_z", "alpha", "m_tilde", "kz2", "E", "E_literal", "valid", "precondition_ok",
            "termination_ok", "normalizable", "borderline",
        ],
    );
    for r in table {
        let mut cells: Vec<String> = qn_cells(&r.qn).into();
        cells.extend([
            g17(r.alpha),
            g17(r.m_tilde),
            g17(r.kz2),
            opt(r.energy),
            opt(r.literal),
            flag(r.is_valid()).into(),
            flag(r.flags.precondition_ok).into(),
            flag(r.flags.termination_ok).into(),
            flag(r.flags.normalizable).into(),
            flag(r.flags.borderline).into(),
        ]);
        csv.row(cells);
    }
    csv.finish()
}

pub fn validate(job: &Job, format: Format) -> Result<Outcome> {
    let report = validate_table(&job.model, &job.z, &job.field, &job.ranges, &job.validation)?;
    let summary = Summary::of(&report);
    eprintln!(
        "validate: {} PASS, {} FAIL, {} NO-ROOT; {} gated level(s) not passing",
        summary.pass, summary.fail, summary.no_root, summary.gated_failures
    );
    let text = match format {
        Format::Json => json(&Envelope {
            schema_version: SCHEMA_VERSION,
            config_hash: &job.hash,
            command: "validate",
            model: Some(job.model.id().to_string()),
            summary: Some(summary),
            body: Levels { levels: &report },
        })?,
        Format::Csv => validate_csv(job, &report, &summary),
    };
    Ok(Outcome { text, code: if summary.ok() { 0 } else { 3 } })
}

fn validate_csv(job: &Job, report: &[LevelValidation], s: &Summary) -> String {
    let mut head = meta(job, "validate");
    head.push((
        "summary",
        format!("pass:{} fail:{} no_root:{} gated_failures:{}", s.pass, s.fail, s.no_root, s.gated_failures),
    ));
    let mut csv = Csv::new(
        &head,
        &[
            "n_rho", "m", "n_z", "m_tilde", "kz2", "kz2_oracle", "E", "E_literal", "E_oracle",
            "E_oracle_err", "delta", "delta_literal", "valid", "termination_ok", "gated", "nodes",
            "shooting_mismatch", "shooting_nodes", "status", "note",
        ],
    );
    for r in report {
        let l = &r.level;
        let mut cells: Vec<String> = qn_cells(&l.qn).into();
        cells.extend([
            g17(l.m_tilde),
            g17(l.kz2),
            opt(r.kz2_oracle),
            opt(l.energy),
            opt(l.literal),
            opt(r.oracle_energy),
            opt(r.oracle_error),
            opt(r.delta),
            opt(r.delta_literal),
            flag(l.is_valid()).into(),
            flag(l.flags.termination_ok).into(),
            flag(r.gated).into(),
            r.nodes.map(|n| n.to_string()).unwrap_or_default(),
            opt(r.shooting_mismatch),
            r.shooting_nodes.map(|n| n.to_string()).unwrap_or_default(),
            r.status.to_string(),
            r.note.clone(),
        ]);
        csv.row(cells);
    }
    csv.finish()
}

#[derive(Serialize)]
struct Sample {
    rho: f64,
    z: f64,
    r: f64,
    z_factor: f64,
    density: f64,
}

#[derive(Serialize)]
struct Wave<'a> {
    level: &'a LevelResult,
    norm_r: f64,
    norm_z: f64,
    samples: Vec<Sample>,
}

pub fn wavefunction(job: &Job, format: Format) -> Result<Outcome> {
    let wf = job
        .raw
        .wavefunction
        .ok_or_else(|| ConfigError("the wavefunction command needs a 'wavefunction' section".into()))?;
    let qn = wf.level;
    let level = total_energy(&job.model, &job.z, &job.field, qn).map_err(|e| ConfigError(e.to_string()))?;
    if !level.is_valid() {
        return Err(ConfigError(format!(
            "level (n_rho = {}, m = {}, n_z = {}) has no valid closed form",
            qn.n_rho, qn.m, qn.n_z
        ))
        .into());
    }
    let radial = RadialFunction::new(&job.model, &job.field, qn.m, level.kz2, qn.n_rho)
        .map_err(|e| ConfigError(e.to_string()))?;

    let (norm_r, norm_z) = if wf.normalize {
        let problem = RadialProblem::new(job.model, job.field, qn.m, level.kz2)?;
        let rho_hi = 1.5 * choose_rho_max(&problem, Form::U, radial.energy());
        let nr = normalize_radial(|r| radial.r(r), Measure::Rho, 1e-6, rho_hi)
            .context("normalizing R")?;
        let nz = match &job.z {
            ZChannel::Potential(p) => {
                let (lo, hi) = z_domain(p);
                normalize_radial(|z| job.z.eigenfunction(qn.n_z, z), Measure::Flat, lo, hi)
                    .context("normalizing Z")?
            }
            ZChannel::Fixed(_) => 1.0,
        };
        (nr, nz)
    } else {
        (1.0, 1.0)
    };

    let rs: Vec<f64> = wf.rho.points();
    let zs: Vec<f64> = wf.z.points();
    let r_vals = rs.iter().map(|&r| radial.r(r).map(|v| norm_r * v)).collect::<Result<Vec<_>, _>>()?;
    let z_vals = zs
        .iter()
        .map(|&z| job.z.eigenfunction(qn.n_z, z).map(|v| norm_z * v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut samples = Vec::with_capacity(rs.len() * zs.len());
    for (i, &rho) in rs.iter().enumerate() {
        for (j, &z) in zs.iter().enumerate() {
            let psi = r_vals[i] * z_vals[j];
            samples.push(Sample { rho, z, r: r_vals[i], z_factor: z_vals[j], density: psi * psi });
        }
    }

    let text = match format {
        Format::Json => json(&Envelope {
            schema_version: SCHEMA_VERSION,
            config_hash: &job.hash,
            command: "wavefunction",
            model: Some(job.model.id().to_string()),
            summary: None,
            body: Wave { level: &level, norm_r, norm_z, samples },
        })?,
        Format::Csv => {
            let mut head = meta(job, "wavefunction");
            head.extend([
                ("level", format!("{} {} {}", qn.n_rho, qn.m, qn.n_z)),
                ("E", opt(level.energy)),
                ("norm_R", g17(norm_r)),
                ("norm_Z", g17(norm_z)),
            ]);
            let mut csv = Csv::new(&head, &["rho", "z", "R", "Z", "psi2"]);
            for s in &samples {
                csv.row(vec![g17(s.rho), g17(s.z), g17(s.r), g17(s.z_factor), g17(s.density)]);
            }
            csv.finish()
        }
    };
    Ok(Outcome { text, code: 0 })
}

#[derive(Serialize)]
struct Root {
    delta: f64,
    v3: f64,
    residual: f64,
    polynomial: bool,
}

#[derive(Serialize)]
struct Roots {
    alpha: f64,
    beta: f64,
    n: usize,
    roots: Vec<Root>,
}

pub fn heun_terminate(alpha: f64, beta: f64, n: usize, format: Format) -> Result<Outcome> {
    let deltas = heun_termination_deltas(alpha, beta, n).map_err(|e| ConfigError(e.to_string()))?;
    let roots: Vec<Root> = deltas
        .into_iter()
        .map(|d| {
            let residual = termination_residual(alpha, beta, n, d);
            Root { delta: d, v3: d / 2.0, residual, polynomial: residual <= POLYNOMIAL_TOL }
        })
        .collect();
    let body = Roots { alpha, beta, n, roots };
    let canonical = serde_json::to_vec(&(alpha, beta, n))?;
    let hash = {
        use sha2::{Digest, Sha256};
        Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect::<String>()
    };
    let text = match format {
        Format::Json => json(&Envelope {
            schema_version: SCHEMA_VERSION,
            config_hash: &hash,
            command: "heun-terminate",
            model: None,
            summary: None,
            body,
        })?,
        Format::Csv => {
            let mut csv = Csv::new(
                &[
                    ("schema_version", SCHEMA_VERSION.to_string()),
                    ("config_hash", format!("sha256:{hash}")),
                    ("command", "heun-terminate".into()),
                    ("alpha", g17(alpha)),
                    ("beta", g17(beta)),
                    ("n", n.to_string()),
                ],
                &["delta", "V3", "residual", "polynomial"],
            );
            for r in &body.roots {
                csv.row(vec![g17(r.delta), g17(r.v3), g17(r.residual), flag(r.polynomial).into()]);
            }
            csv.finish()
        }
    };
    Ok(Outcome { text, code: 0 })
}
