//! Confluent hypergeometric function `₁F₁(a; b; x)`.

use crate::error::{Error, Result};

use super::dd::Dd;

/// Relative size of the first neglected term at which the series stops.
const SERIES_RTOL: f64 = 1e-17;
const MAX_TERMS: usize = 100_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `₁F₁(a; b; x) = Σ (a)_k / (b)_k x^k / k!`.
///
/// For `a = -n` the sum is the exact finite polynomial of `n + 1` terms,
/// accumulated in double-double so alternating cancellation does not leak
/// into the result. Otherwise the power series is summed until the next term
/// drops below `1e-17` of the partial sum; negative `x` goes through Kummer's
/// transformation `e^x ₁F₁(b - a; b; -x)` first.
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument to 1F1({a}; {b}; {x})")));
    }
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(b));
    }
    if is_nonpositive_integer(a) {
        return Ok(terminating(-a as u64, b, x));
    }
    if x < 0.0 {
        return Ok(x.exp() * series(b - a, b, -x)?);
    }
    series(a, b, x)
}

fn terminating(n: u64, b: f64, x: f64) -> f64 {
    let a = -(n as f64);
    let x = Dd::from_f64(x);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..n {
        let kf = k as f64;
        let num = Dd::from_f64(a + kf) * x;
        let den = Dd::from_f64(b + kf) * Dd::from_f64(kf + 1.0);
        term = term * num.div(den);
        sum = sum + term;
    }
    sum.to_f64()
}

fn series(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
        if term.abs() <= SERIES_RTOL * sum.abs() {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::Convergence(format!("1F1({a}; {b}; {x}) series did not converge")))
}
