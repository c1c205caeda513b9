/// Generalized Laguerre polynomial `L_n^{(α)}(x)` by the upward recurrence
/// `(k+1) L_{k+1} = (2k + 1 + α - x) L_k - (k + α) L_{k-1}`.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(laguerre(0, 0.8, 3.2), 1.0);
        assert_eq!(laguerre(1, 2.0, 1.0), 2.0);
        assert_eq!(laguerre(2, 0.0, 0.0), 1.0);
    }

    #[test]
    fn explicit_degree_two() {
        // L_2^{(a)}(x) = (x² - 2(a+2)x + (a+1)(a+2)) / 2
        for &(a, x) in &[(0.5, 1.3), (3.0, -2.0), (-0.5, 7.0)] {
            let want = (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)) / 2.0;
            assert!((laguerre(2, a, x) - want).abs() < 1e-13 * want.abs().max(1.0));
        }
    }

    #[test]
    fn value_at_origin_is_binomial() {
        // L_n^{(a)}(0) = C(n + a, n)
        let a = 1.5;
        let mut binom = 1.0;
        for n in 0..15u32 {
            if n > 0 {
                binom *= (n as f64 + a) / n as f64;
            }
            assert!((laguerre(n, a, 0.0) - binom).abs() < 1e-12 * binom);
        }
    }
}
