//! Symmetric tridiagonal pencils `A - λ W` with diagonal positive `W`.
//!
//! `W = I` is the ordinary eigenproblem. Eigenvalues are located by Sturm
//! counts: by Sylvester's law of inertia the number of negative pivots in
//! the LDLᵀ factorization of `A - λW` equals the number of eigenvalues
//! strictly below `λ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Seed for the inverse-iteration start vector.
pub const INVERSE_ITERATION_SEED: u64 = 0x00C0_FFEE_D15C_0B01;

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    /// Diagonal of `W`; `None` means identity.
    pub weight: Option<Vec<f64>>,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        Self::with_weight(diag, offdiag, None)
    }

    pub fn with_weight(diag: Vec<f64>, offdiag: Vec<f64>, weight: Option<Vec<f64>>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::Domain("empty operator".into()));
        }
        if offdiag.len() + 1 != n {
            return Err(Error::Domain(format!(
                "off-diagonal length {} does not match dimension {n}",
                offdiag.len()
            )));
        }
        if let Some(w) = &weight {
            if w.len() != n || w.iter().any(|&x| !(x > 0.0)) {
                return Err(Error::Domain("weight must be positive with one entry per row".into()));
            }
        }
        Ok(Self { diag, offdiag, weight })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    fn w(&self, i: usize) -> f64 {
        self.weight.as_ref().map_or(1.0, |w| w[i])
    }

    /// Gershgorin bounds of `W^{-1/2} A W^{-1/2}`.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let wi = self.w(i);
            let mut r = 0.0;
            if i > 0 {
                r += self.offdiag[i - 1].abs() / (wi * self.w(i - 1)).sqrt();
            }
            if i + 1 < n {
                r += self.offdiag[i].abs() / (wi * self.w(i + 1)).sqrt();
            }
            let c = self.diag[i] / wi;
            lo = lo.min(c - r);
            hi = hi.max(c + r);
        }
        (lo, hi)
    }

    /// Dense `W^{-1/2} A W^{-1/2}` in row-major order, for small checks.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = self.diag[i] / self.w(i);
            if i + 1 < n {
                let v = self.offdiag[i] / (self.w(i) * self.w(i + 1)).sqrt();
                m[i * n + i + 1] = v;
                m[(i + 1) * n + i] = v;
            }
        }
        m
    }
}

/// Number of eigenvalues strictly below `lambda`.
pub fn sturm_count(op: &TridiagonalOperator, lambda: f64) -> usize {
    let n = op.dim();
    let mut count = 0;
    let mut pivot = 0.0;
    for i in 0..n {
        let a = op.diag[i] - lambda * op.w(i);
        let coupling = if i > 0 { op.offdiag[i - 1] } else { 0.0 };
        pivot = if i == 0 { a } else { a - coupling * coupling / pivot };
        if pivot == 0.0 || pivot.is_nan() {
            // Exact zero pivot: perturb to the scale of the row.
            let scale = a.abs() + coupling.abs() + lambda.abs() * op.w(i);
            pivot = -f64::EPSILON * scale.max(f64::MIN_POSITIVE);
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// `k`-th smallest eigenvalue (0-based) by Sturm bisection to width `tol`.
pub fn kth_eigenvalue(op: &TridiagonalOperator, k: usize, tol: f64) -> Result<f64> {
    let n = op.dim();
    if k >= n {
        return Err(Error::OutOfRange { k, n });
    }
    let (mut lo, mut hi) = op.gershgorin();
    let pad = 1e-12 * (lo.abs() + hi.abs()) + f64::MIN_POSITIVE;
    lo -= pad;
    hi += pad;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(op, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Solves the tridiagonal system `(A - σW) x = rhs` with partial pivoting.
fn solve_shifted(op: &TridiagonalOperator, sigma: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let n = op.dim();
    // LU of a tridiagonal with row interchanges: U has two superdiagonals.
    let mut d: Vec<f64> = (0..n).map(|i| op.diag[i] - sigma * op.w(i)).collect();
    let mut du: Vec<f64> = op.offdiag.clone();
    let mut dl: Vec<f64> = op.offdiag.clone();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut b = rhs.to_vec();
    let tiny = f64::EPSILON * d.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);

    for i in 0..n.saturating_sub(1) {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let f = dl[i] / d[i];
            dl[i] = f;
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = f;
            let t = du[i];
            du[i] = d[i + 1];
            d[i + 1] = t - f * d[i + 1];
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] *= -f;
            }
            b.swap(i, i + 1);
            b[i + 1] -= f * b[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= du[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= du2[i] * x[i + 2];
        }
        x[i] = s / d[i];
        if !x[i].is_finite() {
            return None;
        }
    }
    Some(x)
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Eigenvector for an eigenvalue located to within solver tolerance.
///
/// Inverse iteration on the pencil from a seeded random start; the result has
/// unit discrete 2-norm and its first significant component is positive.
pub fn eigenvector(op: &TridiagonalOperator, eigenvalue: f64) -> Result<Vec<f64>> {
    let n = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(INVERSE_ITERATION_SEED);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    normalize(&mut v);

    // Nudge off the eigenvalue so the factorization stays finite.
    let sigma = eigenvalue + 1e-10 * eigenvalue.abs().max(1.0);

    let mut last_change = f64::INFINITY;
    for _ in 0..6 {
        let rhs: Vec<f64> = (0..n).map(|i| op.w(i) * v[i]).collect();
        let mut next = solve_shifted(op, sigma, &rhs)
            .ok_or_else(|| Error::Convergence("inverse iteration produced non-finite values".into()))?;
        normalize(&mut next);
        let dot: f64 = next.iter().zip(&v).map(|(a, b)| a * b).sum();
        if dot < 0.0 {
            next.iter_mut().for_each(|x| *x = -*x);
        }
        last_change = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = next;
        if last_change < 1e-12 {
            break;
        }
    }
    if last_change > 1e-6 {
        return Err(Error::Convergence(format!(
            "inverse iteration stalled (last change {last_change:.2e})"
        )));
    }
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-3 * peak) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(v)
}

/// Sign changes in `v`, ignoring components below `rel_floor` of the peak.
pub fn count_nodes(v: &[f64], rel_floor: f64) -> usize {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = rel_floor * peak;
    let mut nodes = 0;
    let mut last = 0.0f64;
    for &x in v {
        if x.abs() <= floor {
            continue;
        }
        if last != 0.0 && x.signum() != last.signum() {
            nodes += 1;
        }
        last = x;
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box_operator(n: usize, length: f64) -> TridiagonalOperator {
        let h = length / (n as f64 + 1.0);
        TridiagonalOperator::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1]).unwrap()
    }

    #[test]
    fn gershgorin_brackets_counts() {
        let op = box_operator(50, 1.0);
        let (lo, hi) = op.gershgorin();
        assert_eq!(sturm_count(&op, lo - 1.0), 0);
        assert_eq!(sturm_count(&op, hi + 1.0), 50);
    }

    #[test]
    fn two_by_two() {
        let op = TridiagonalOperator::new(vec![2.0, 2.0], vec![-1.0]).unwrap();
        assert_eq!(sturm_count(&op, 2.0), 1);
        assert!((kth_eigenvalue(&op, 0, 1e-14).unwrap() - 1.0).abs() < 1e-13);
        assert!((kth_eigenvalue(&op, 1, 1e-14).unwrap() - 3.0).abs() < 1e-13);
        assert!(matches!(kth_eigenvalue(&op, 2, 1e-14), Err(Error::OutOfRange { k: 2, n: 2 })));
    }

    #[test]
    fn rejects_mismatched_shapes() {
        assert!(TridiagonalOperator::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalOperator::with_weight(vec![1.0], vec![], Some(vec![0.0])).is_err());
    }

    #[test]
    fn weighted_pencil_matches_scaled_problem() {
        // A - λW with W = diag(w) has the eigenvalues of W^{-1/2} A W^{-1/2}.
        let a = vec![4.0, 5.0, 6.0];
        let b = vec![-1.0, 0.5];
        let w = vec![2.0, 0.5, 1.5];
        let pencil = TridiagonalOperator::with_weight(a, b, Some(w)).unwrap();
        let dense = pencil.to_dense();
        let scaled = TridiagonalOperator::new(
            vec![dense[0], dense[4], dense[8]],
            vec![dense[1], dense[5]],
        )
        .unwrap();
        for k in 0..3 {
            let x = kth_eigenvalue(&pencil, k, 1e-14).unwrap();
            let y = kth_eigenvalue(&scaled, k, 1e-14).unwrap();
            assert!((x - y).abs() < 1e-12, "{k}: {x} vs {y}");
        }
    }

    #[test]
    fn eigenvector_node_counts() {
        let op = box_operator(200, std::f64::consts::PI);
        for k in 0..4 {
            let lam = kth_eigenvalue(&op, k, 1e-12).unwrap();
            let v = eigenvector(&op, lam).unwrap();
            assert_eq!(count_nodes(&v, 1e-8), k);
        }
    }

    #[test]
    fn eigenvector_is_deterministic() {
        let op = box_operator(100, 1.0);
        let lam = kth_eigenvalue(&op, 2, 1e-12).unwrap();
        assert_eq!(eigenvector(&op, lam).unwrap(), eigenvector(&op, lam).unwrap());
    }
}
