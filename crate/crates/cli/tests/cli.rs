use std::path::PathBuf;
use std::process::{Command, Stdio};

use pdm_core::analytic::RadialFunction;
use pdm_core::{FieldConfig, PseudoharmonicParams, RadialModel};

fn config(name: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs")).join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pdm-spectra"))
        .args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn spectrum_spot_value_and_header() {
    let (code, out) = run(&["spectrum", "--config", config("model1.json").to_str().unwrap()], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("#schema_version=1\n#config_hash=sha256:"));
    let r = rows(&out);
    assert_eq!(r.len(), 9);
    assert_eq!(&r[0][..3], ["0", "1", "0"]);
    assert!((num(&r[0][6]) - 0.944272).abs() < 1e-6);
}

#[test]
fn empty_ranges_give_header_only() {
    let text = std::fs::read_to_string(config("model1.json")).unwrap().replace("[1, 2, 3]", "[]");
    let (code, out) = run(&["spectrum"], Some(&text));
    assert_eq!(code, 0);
    assert!(rows(&out).is_empty());
    assert!(out.lines().last().unwrap().starts_with("n_rho,m,n_z"));
}

#[test]
fn validate_model4_ground_level_passes() {
    let (code, out) = run(&["validate", "--config", config("model4.json").to_str().unwrap()], None);
    assert_eq!(code, 0);
    let r = rows(&out);
    assert_eq!(r[0][18], "PASS");
    assert!(num(&r[0][10]) <= 1e-5);
    assert_eq!(r[1][13], "false");
}

#[test]
fn model3_without_coulomb_term_is_informational() {
    let text = std::fs::read_to_string(config("model3.json")).unwrap().replace("2.371708245126284", "0");
    let (code, out) = run(&["validate"], Some(&text));
    let r = rows(&out);
    assert_eq!(r[0][13], "false");
    assert_eq!(r[0][14], "false");
    assert_eq!(code, 0, "a non-terminating level must not gate the exit status");
}

#[test]
fn wavefunction_columns() {
    let (code, out) = run(&["wavefunction", "--config", config("wavefunction_model1.json").to_str().unwrap()], None);
    assert_eq!(code, 0);
    let r = rows(&out);
    let pi = std::f64::consts::PI;
    // the well factor vanishes on both walls
    for row in &r {
        let z = num(&row[1]);
        if z == 0.0 || z == pi {
            assert_eq!(num(&row[3]), 0.0);
        }
    }
    // R is the library's radial function times one constant
    let field = FieldConfig::new(1.0, 2.0, 0.0).unwrap();
    let model = RadialModel::I { eta: 1.0, pot: PseudoharmonicParams::new(2.0, 1.0).unwrap() };
    let rf = RadialFunction::new(&model, &field, 1, 1.0, 1).unwrap();
    let norm: f64 = out.lines().find_map(|l| l.strip_prefix("#norm_R=")).map(num).unwrap();
    let mut signs = Vec::new();
    for row in r.iter().filter(|row| num(&row[1]) == 0.0) {
        let rho = num(&row[0]);
        let want = norm * rf.r(rho).unwrap();
        assert!((num(&row[2]) - want).abs() <= 1e-12 * want.abs().max(1e-300));
        signs.push(num(&row[2]).signum());
    }
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(changes, 1);
}

#[test]
fn heun_terminate_examples() {
    let (code, out) = run(&["heun-terminate", "--alpha", "0.5", "--beta", "-3.162278", "--n", "0"], None);
    assert_eq!(code, 0);
    let r = rows(&out);
    assert_eq!(r.len(), 1);
    assert!((num(&r[0][0]) - 4.743417).abs() < 1e-6);
    assert!((num(&r[0][1]) - 2.371708).abs() < 1e-6);
    assert_eq!(r[0][3], "true");

    let (_, out) = run(&["heun-terminate", "--alpha", "1.7", "--beta", "0", "--n", "0"], None);
    assert_eq!(num(&rows(&out)[0][0]), 0.0);

    let (_, out) = run(&["heun-terminate", "--alpha", "0.5", "--beta", "0", "--n", "1", "--format", "json"], None);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    // c₂ = 0 at β = 0 reduces to δ² = 8(1 + α)
    for root in roots {
        let d = root["delta"].as_f64().unwrap();
        assert!((d * d - 12.0).abs() < 1e-12);
        assert_eq!(root["polynomial"], true);
    }
}

#[test]
fn config_errors_exit_2() {
    let (code, _) = run(&["spectrum", "--config", "/nonexistent/job.json"], None);
    assert_eq!(code, 2);
    let (code, _) = run(&["spectrum"], Some("{ not json"));
    assert_eq!(code, 2);
    let text = std::fs::read_to_string(config("wavefunction_model1.json")).unwrap().replace("\"m\": 1, \"n_z\": 0", "\"m\": -4, \"n_z\": 0");
    let (code, _) = run(&["wavefunction"], Some(&text));
    assert_eq!(code, 2);
}
