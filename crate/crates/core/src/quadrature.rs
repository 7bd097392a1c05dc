//! Gauss rules on the unit interval and tensor-product integration.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::linalg::tridiagonal_eigen;
use crate::special::beta;

/// Nodes and weights of a quadrature rule on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫₀¹ f against the rule.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss–Legendre rule with `n` points on [0, 1], exact for polynomials of
/// degree ≤ 2n − 1.
pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root on [-1, 1].
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[n - 1 - i] = 0.5 * w;
        weights[i] = 0.5 * w;
    }
    GaussRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Jacobi rule on [0, 1] for the weight t^a (1 − t)^b, a, b > −1,
/// built by Golub–Welsch from the Jacobi three-term recurrence.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> GaussRule {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    // On [-1, 1] with weight (1-x)^alpha (1+x)^beta, x = 2t - 1.
    let (alpha, beta_) = (b, a);
    let ab = alpha + beta_;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    for (k, d) in diag.iter_mut().enumerate() {
        let kf = k as f64;
        *d = if k == 0 {
            (beta_ - alpha) / (ab + 2.0)
        } else {
            (beta_ * beta_ - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
    }
    for (i, o) in off.iter_mut().enumerate() {
        let k = (i + 1) as f64;
        let b2 = if i == 0 {
            4.0 * (1.0 + alpha) * (1.0 + beta_) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            let s = 2.0 * k + ab;
            4.0 * k * (k + alpha) * (k + beta_) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        *o = b2.sqrt();
    }
    let eig = tridiagonal_eigen(&diag, &off).expect("Jacobi matrix eigen-solve");
    let mu0 = beta(a + 1.0, b + 1.0);
    let nodes = eig.iter().map(|(x, _)| 0.5 * (x + 1.0)).collect();
    let weights = eig.iter().map(|(_, z)| mu0 * z * z).collect();
    GaussRule { nodes, weights }
}

/// Integrates `f` over the product of the given one-dimensional rules.
pub fn integrate_product(rules: &[&GaussRule], mut f: impl FnMut(&[f64]) -> f64) -> f64 {
    let dim = rules.len();
    if dim == 0 {
        return f(&[]);
    }
    let mut idx = vec![0usize; dim];
    let mut point: Vec<f64> = rules.iter().map(|r| r.nodes[0]).collect();
    let mut total = 0.0;
    loop {
        let w: f64 = rules.iter().zip(&idx).map(|(r, &i)| r.weights[i]).product();
        total += w * f(&point);
        // odometer increment
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < rules[d].len() {
                point[d] = rules[d].nodes[idx[d]];
                break;
            }
            idx[d] = 0;
            point[d] = rules[d].nodes[0];
            d += 1;
            if d == dim {
                return total;
            }
        }
    }
}

/// Integrates `f` over the unit cube [0, 1]^dim with one rule per axis.
pub fn integrate_cube(rule: &GaussRule, dim: usize, f: impl FnMut(&[f64]) -> f64) -> f64 {
    let rules = vec![rule; dim];
    integrate_product(&rules, f)
}
