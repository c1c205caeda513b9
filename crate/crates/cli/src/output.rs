//! Deterministic table emission.

use std::fmt::Write as _;

pub const SCHEMA_VERSION: u32 = 1;

/// C's `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e17)`.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(g17).unwrap_or_default()
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// CSV with `#key=value` header lines; cells are never quoted, so free text
/// has its commas and newlines replaced.
pub struct Csv {
    out: String,
    width: usize,
}

impl Csv {
    pub fn new(meta: &[(&str, String)], columns: &[&str]) -> Self {
        let mut out = String::new();
        for (k, v) in meta {
            let _ = writeln!(out, "#{k}={v}");
        }
        out.push_str(&columns.join(","));
        out.push('\n');
        Self { out, width: columns.len() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.width);
        let cells: Vec<String> = cells.into_iter().map(|c| c.replace([',', '\n', '\r'], ";")).collect();
        self.out.push_str(&cells.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf() {
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(-2.5), "-2.5");
        assert_eq!(g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(1e17), "1e+17");
        assert_eq!(g17(5.25), "5.25");
        assert_eq!(g17(1e-4), "0.0001");
        assert_eq!(g17(12345678901234567.0), "12345678901234568");
    }

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, -7.25e-300, 6.02e23, f64::MAX, f64::MIN_POSITIVE] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }
}
