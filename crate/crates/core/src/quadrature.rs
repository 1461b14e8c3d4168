//! One-dimensional quadrature rules and a reproducible summation helper.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, exact for polynomials of
/// degree `2n - 1`. Nodes are returned in increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    if n == 0 {
        return (nodes, weights);
    }
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Pairwise (cascade) summation of `term(i)` for `i` in `lo..hi`.
///
/// The reduction tree depends only on the range, so results are bit-for-bit
/// reproducible and the rounding error grows like `log n`.
pub fn pairwise_sum(lo: usize, hi: usize, term: &impl Fn(usize) -> Complex64) -> Complex64 {
    const BLOCK: usize = 16;
    if hi - lo <= BLOCK {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in lo..hi {
            acc += term(i);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term)
}

/// Real-valued counterpart of [`pairwise_sum`].
pub fn pairwise_sum_real(lo: usize, hi: usize, term: &impl Fn(usize) -> f64) -> f64 {
    const BLOCK: usize = 16;
    if hi - lo <= BLOCK {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += term(i);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum_real(lo, mid, term) + pairwise_sum_real(mid, hi, term)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_monomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-14, "n={n} deg={deg}: {q} vs {exact}");
            }
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn pairwise_matches_naive() {
        let f = |i: usize| Complex64::new(i as f64, -(i as f64));
        let s = pairwise_sum(0, 1000, &f);
        assert_eq!(s, Complex64::new(499500.0, -499500.0));
        assert_eq!(pairwise_sum_real(3, 3, &|_| 1.0), 0.0);
    }
}
