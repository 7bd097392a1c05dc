//! Jacobian determinants of the representation maps φ : Λ × T → Mⁿ, the
//! Vandermonde helpers they are built from, and change-of-variables
//! integrals for volumes and mean moments.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;
use rand::Rng;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mc::{self, Executor, ExperimentReport};
use crate::moments::{dirichlet_integral, sample_uniform_one, volume, SimplexPoint};
use crate::quadrature::{gauss_legendre, integrate_cube, GaussRule};
use crate::special::{factorial, ln_factorial};

/// The eight representation maps: principal/canonical, odd/even order,
/// lower/upper endpoint pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JacobianKind {
    Pol,
    Pou,
    Pel,
    Peu,
    Col,
    Cou,
    Cel,
    Ceu,
}

impl JacobianKind {
    pub const ALL: [JacobianKind; 8] = [
        JacobianKind::Pol,
        JacobianKind::Pou,
        JacobianKind::Pel,
        JacobianKind::Peu,
        JacobianKind::Col,
        JacobianKind::Cou,
        JacobianKind::Cel,
        JacobianKind::Ceu,
    ];

    pub fn is_canonical(self) -> bool {
        matches!(self, Self::Col | Self::Cou | Self::Cel | Self::Ceu)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Self::Pol | Self::Pou | Self::Col | Self::Cou)
    }

    /// Moment order n: 2m − 1 for odd kinds, 2m for even ones.
    pub fn order(self, m: usize) -> usize {
        if self.is_odd() {
            2 * m - 1
        } else {
            2 * m
        }
    }

    pub fn t_dim(self, m: usize) -> usize {
        match self {
            Self::Pol | Self::Pel | Self::Peu | Self::Cel => m,
            Self::Pou | Self::Col | Self::Cou | Self::Ceu => m - 1,
        }
    }

    pub fn lambda_dim(self, m: usize) -> usize {
        match self {
            Self::Pol => m - 1,
            Self::Ceu => m + 1,
            _ => m,
        }
    }

    /// Recovers m from the length of the node vector.
    pub fn m_from_t(self, len: usize) -> usize {
        if self.t_dim(1) == 1 {
            len
        } else {
            len + 1
        }
    }

    /// Dirichlet exponents (a₀ for the slack, then one per λ) of the
    /// weight factor multiplying the closed form.
    fn dirichlet_exponents(self, m: usize) -> Vec<f64> {
        let mut a = vec![1.0; self.lambda_dim(m) + 1];
        match self {
            Self::Pol => {
                a[0] = 2.0;
                a[1..].iter_mut().for_each(|x| *x = 2.0);
            }
            Self::Pel | Self::Peu | Self::Cel => a[1..].iter_mut().for_each(|x| *x = 2.0),
            Self::Pou | Self::Col | Self::Cou => a[2..].iter_mut().for_each(|x| *x = 2.0),
            Self::Ceu => a[2..m + 1].iter_mut().for_each(|x| *x = 2.0),
        }
        a
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Pol => "pol",
            Self::Pou => "pou",
            Self::Pel => "pel",
            Self::Peu => "peu",
            Self::Col => "col",
            Self::Cou => "cou",
            Self::Cel => "cel",
            Self::Ceu => "ceu",
        }
    }
}

/// Δ(t) = ∏_{j<k} (tₖ − tⱼ).
pub fn vandermonde(t: &[f64]) -> f64 {
    let (sign, log) = log_vandermonde(t);
    sign * log.exp()
}

/// (sign, ln|Δ(t)|); a repeated node gives (0, −∞).
pub fn log_vandermonde(t: &[f64]) -> (f64, f64) {
    let mut sign = 1.0;
    let mut log = 0.0;
    for k in 0..t.len() {
        for j in 0..k {
            let d = t[k] - t[j];
            if d == 0.0 {
                return (0.0, f64::NEG_INFINITY);
            }
            if d < 0.0 {
                sign = -sign;
            }
            log += d.abs().ln();
        }
    }
    (sign, log)
}

/// Accumulates ln|x| of a product, short-circuiting on zero factors.
#[derive(Default)]
struct LogProduct {
    log: f64,
    zero: bool,
}

impl LogProduct {
    fn mul(&mut self, x: f64, power: f64) {
        if x == 0.0 {
            self.zero = true;
        } else {
            self.log += power * x.abs().ln();
        }
    }

    fn value(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            self.log.exp()
        }
    }
}

fn check_star(kind: JacobianKind, tstar: Option<f64>) -> Result<f64> {
    match (kind.is_canonical(), tstar) {
        (true, Some(ts)) if (0.0..=1.0).contains(&ts) => Ok(ts),
        (true, Some(_)) => Err(Error::Domain("tstar must lie in [0, 1]")),
        (true, None) => Err(Error::Domain("canonical kinds need tstar")),
        (false, _) => Ok(0.0),
    }
}

/// Closed-form 𝒥 for `kind` at nodes `t` (and t* for canonical kinds).
pub fn jacobian_closed_form(kind: JacobianKind, tstar: Option<f64>, t: &[f64]) -> Result<f64> {
    let ts = check_star(kind, tstar)?;
    // Kinds with m nodes need at least one.
    if kind.t_dim(1) == 1 && t.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let mut p = LogProduct::default();
    let (_, lv) = log_vandermonde(t);
    if lv == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    p.log += 4.0 * lv;
    for &x in t {
        match kind {
            JacobianKind::Pol => {}
            JacobianKind::Pou => {
                p.mul(x, 2.0);
                p.mul(1.0 - x, 2.0);
            }
            JacobianKind::Pel => p.mul(x, 2.0),
            JacobianKind::Peu => p.mul(1.0 - x, 2.0),
            JacobianKind::Col => {
                p.mul(x - ts, 2.0);
                p.mul(x, 2.0);
            }
            JacobianKind::Cou => {
                p.mul(x - ts, 2.0);
                p.mul(1.0 - x, 2.0);
            }
            JacobianKind::Cel => p.mul(x - ts, 2.0),
            JacobianKind::Ceu => {
                p.mul(x - ts, 2.0);
                p.mul(x, 2.0);
                p.mul(1.0 - x, 2.0);
            }
        }
    }
    match kind {
        JacobianKind::Col => p.mul(ts, 1.0),
        JacobianKind::Cou => p.mul(1.0 - ts, 1.0),
        JacobianKind::Ceu => {
            p.mul(ts, 1.0);
            p.mul(1.0 - ts, 1.0);
        }
        _ => {}
    }
    Ok(p.value())
}

/// The λ-dependent factor multiplying 𝒥 in |det dφ|.
pub fn weight_factor(kind: JacobianKind, lambda: &[f64]) -> f64 {
    // Compensated, so a tiny slack keeps its relative accuracy.
    let slack = lambda
        .iter()
        .fold(TwoFloat::from(1.0), |acc, &l| acc - l)
        .hi();
    match kind {
        JacobianKind::Pol => slack * lambda.iter().product::<f64>(),
        JacobianKind::Pel | JacobianKind::Peu | JacobianKind::Cel => lambda.iter().product(),
        JacobianKind::Pou | JacobianKind::Col | JacobianKind::Cou => {
            lambda.iter().skip(1).product()
        }
        JacobianKind::Ceu => lambda[1..lambda.len() - 1].iter().product(),
    }
}

/// Measure φ(λ, t) as (node, weight) pairs.
fn phi_atoms<T: Scalar>(kind: JacobianKind, ts: f64, lambda: &[T], t: &[T]) -> Vec<(T, T)> {
    let (zero, one) = (T::from(0.0), T::from(1.0));
    let slack = lambda.iter().fold(one, |acc, &l| acc - l);
    let mut atoms = Vec::with_capacity(lambda.len() + 2);
    let pairs =
        |t: &[T], l: &[T]| -> Vec<(T, T)> { t.iter().copied().zip(l.iter().copied()).collect() };
    match kind {
        JacobianKind::Pol => {
            atoms.extend(pairs(&t[..t.len() - 1], lambda));
            atoms.push((t[t.len() - 1], slack));
        }
        JacobianKind::Pou => {
            atoms.push((zero, lambda[0]));
            atoms.extend(pairs(t, &lambda[1..]));
            atoms.push((one, slack));
        }
        JacobianKind::Pel | JacobianKind::Peu => {
            atoms.extend(pairs(t, lambda));
            atoms.push((if kind == JacobianKind::Pel { zero } else { one }, slack));
        }
        JacobianKind::Col | JacobianKind::Cou => {
            atoms.push((
                if kind == JacobianKind::Col { zero } else { one },
                lambda[0],
            ));
            atoms.extend(pairs(t, &lambda[1..]));
            atoms.push((T::from(ts), slack));
        }
        JacobianKind::Cel => {
            atoms.extend(pairs(t, lambda));
            atoms.push((T::from(ts), slack));
        }
        JacobianKind::Ceu => {
            let m = lambda.len() - 1;
            atoms.push((zero, lambda[0]));
            atoms.extend(pairs(t, &lambda[1..m]));
            atoms.push((one, lambda[m]));
            atoms.push((T::from(ts), slack));
        }
    }
    atoms
}

/// Arithmetic needed to evaluate φ in either f64 or double-double.
trait Scalar:
    Copy
    + From<f64>
    + core::ops::Add<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Mul<Output = Self>
{
}

impl Scalar for f64 {}
impl Scalar for TwoFloat {}

fn moments_of<T: Scalar>(atoms: &[(T, T)], n: usize) -> Vec<T> {
    let mut pw: Vec<T> = atoms.iter().map(|a| a.1).collect();
    (0..n)
        .map(|_| {
            pw.iter_mut().zip(atoms).fold(T::from(0.0), |acc, (p, a)| {
                *p = *p * a.0;
                acc + *p
            })
        })
        .collect()
}

fn check_dims(kind: JacobianKind, lambda: usize, t: usize) -> Result<usize> {
    let m = kind.m_from_t(t);
    if m == 0 || kind.t_dim(m) != t {
        return Err(Error::DimensionMismatch {
            expected: kind.t_dim(m.max(1)),
            got: t,
        });
    }
    if lambda != kind.lambda_dim(m) {
        return Err(Error::DimensionMismatch {
            expected: kind.lambda_dim(m),
            got: lambda,
        });
    }
    Ok(kind.order(m))
}

/// φ(λ, t): moments q₁..qₙ of the representing measure.
pub fn phi(kind: JacobianKind, tstar: Option<f64>, lambda: &[f64], t: &[f64]) -> Result<Vec<f64>> {
    let ts = check_star(kind, tstar)?;
    let n = check_dims(kind, lambda.len(), t.len())?;
    Ok(moments_of(&phi_atoms(kind, ts, lambda, t), n))
}

/// Base finite-difference step for [`jacobian_numeric`].
pub const FD_STEP: f64 = 1e-2;
/// Richardson levels applied to the central differences.
pub const FD_LEVELS: usize = 5;

/// |det dφ| at (λ, t) from Richardson-extrapolated central differences of
/// φ, carried out in double-double arithmetic. φ is a polynomial of degree
/// ≤ n in each coordinate, so the extrapolation removes the truncation
/// error; the extra precision absorbs the cancellation in the determinant
/// when nodes nearly coincide.
pub fn jacobian_numeric(
    kind: JacobianKind,
    tstar: Option<f64>,
    lambda: &SimplexPoint,
    t: &[f64],
) -> Result<f64> {
    let ts = check_star(kind, tstar)?;
    let lam = lambda.values();
    let n = check_dims(kind, lam.len(), t.len())?;
    let nl = lam.len();
    let lam: Vec<TwoFloat> = lam.iter().map(|&x| TwoFloat::from(x)).collect();
    let t: Vec<TwoFloat> = t.iter().map(|&x| TwoFloat::from(x)).collect();
    let mut cols: Vec<Vec<TwoFloat>> = Vec::with_capacity(n);
    for c in 0..n {
        let eval = |delta: f64| -> Vec<TwoFloat> {
            let (mut l, mut x) = (lam.clone(), t.clone());
            let v = if c < nl { &mut l[c] } else { &mut x[c - nl] };
            *v += TwoFloat::from(delta);
            moments_of(&phi_atoms(kind, ts, &l, &x), n)
        };
        let central = |h: f64| -> Vec<TwoFloat> {
            let (p, m) = (eval(h), eval(-h));
            p.iter()
                .zip(&m)
                .map(|(&a, &b)| (a - b) / TwoFloat::from(2.0 * h))
                .collect()
        };
        // Richardson table in h², halving the step each level.
        let mut prev: Vec<Vec<TwoFloat>> = Vec::new();
        for level in 0..FD_LEVELS {
            let mut row = vec![central(FD_STEP / (1u32 << level) as f64)];
            for k in 1..=level {
                let f = TwoFloat::from(4f64.powi(k as i32));
                let e = row[k - 1]
                    .iter()
                    .zip(&prev[k - 1])
                    .map(|(&a, &b)| (f * a - b) / (f - 1.0));
                row.push(e.collect());
            }
            prev = row;
        }
        cols.push(prev.pop().unwrap_or_default());
    }
    Ok(det_dd(n, |i, c| cols[c][i]).hi().abs())
}

/// Determinant by partial-pivot elimination in double-double.
fn det_dd(n: usize, f: impl Fn(usize, usize) -> TwoFloat) -> TwoFloat {
    let mut a: Vec<TwoFloat> = (0..n * n).map(|k| f(k / n, k % n)).collect();
    let mut det = TwoFloat::from(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| {
                a[r * n + col]
                    .hi()
                    .abs()
                    .total_cmp(&a[s * n + col].hi().abs())
            })
            .unwrap_or(col);
        let pv = a[pivot * n + col];
        if pv.hi() == 0.0 {
            return TwoFloat::from(0.0);
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        det *= pv;
        for r in col + 1..n {
            let factor = a[r * n + col] / pv;
            for k in col..n {
                a[r * n + k] = a[r * n + k] - factor * a[col * n + k];
            }
        }
    }
    det
}

/// |∂ᵐ Δ(t₁,s₁,…,tₘ,sₘ)/∂s₁⋯∂sₘ − Δ⁴ₘ(t)| / Δ⁴ₘ(t) at s = t, using a
/// tensor central difference with one Richardson step.
pub fn karlin_shapley_identity_check(t: &[f64]) -> f64 {
    let m = t.len();
    let mixed = |h: f64| -> f64 {
        let mut total = 0.0;
        for mask in 0..(1usize << m) {
            let mut seq = Vec::with_capacity(2 * m);
            let mut sign = 1.0;
            for (j, &tj) in t.iter().enumerate() {
                let up = mask & (1 << j) != 0;
                if !up {
                    sign = -sign;
                }
                seq.push(tj);
                seq.push(tj + if up { h } else { -h });
            }
            total += sign * vandermonde(&seq);
        }
        total / (2.0 * h).powi(m as i32)
    };
    let h = 1e-3;
    let d = (4.0 * mixed(h / 2.0) - mixed(h)) / 3.0;
    let target = vandermonde(t).powi(4);
    (d.abs() - target).abs() / target
}

/// How to evaluate the t-integral of a volume formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Quadrature { order: usize },
    MonteCarlo { samples: u64, seed: u64 },
}

/// ∫_{I^dim} f by tensor Gauss–Legendre, or by MC over the unit cube.
fn integrate<E: Executor + ?Sized>(
    exec: &E,
    dim: usize,
    method: Method,
    f: impl Fn(&[f64]) -> f64 + Sync + Send,
) -> ExperimentReport {
    match method {
        Method::Quadrature { order } => {
            let rule = gauss_legendre(order);
            ExperimentReport::exact(integrate_cube(&rule, dim, &f))
        }
        Method::MonteCarlo { samples, seed } => mc::estimate_mean(exec, samples, seed, |rng| {
            let x: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
            Some(f(&x))
        }),
    }
}

/// Vol(Mⁿ) by change of variables through a principal map: the simplex
/// factor is a Dirichlet integral and the t-part ∫_{T^N} 𝒥 equals
/// (1/N!) ∫_{I^N} 𝒥 by symmetry.
pub fn volume_by_cov<E: Executor + ?Sized>(
    exec: &E,
    kind: JacobianKind,
    m: usize,
    method: Method,
) -> Result<ExperimentReport> {
    if kind.is_canonical() {
        return Err(Error::Domain("volume_by_cov takes a principal kind"));
    }
    if m == 0 {
        return Err(Error::Domain("m must be >= 1"));
    }
    let simplex = dirichlet_integral(&kind.dirichlet_exponents(m))?;
    let dim = kind.t_dim(m);
    let scale = simplex / factorial(dim);
    let r = integrate(exec, dim, method, |x| {
        jacobian_closed_form(kind, None, x).unwrap_or(0.0)
    });
    Ok(ExperimentReport {
        estimate: r.estimate * scale,
        stderr: r.stderr * scale,
        ..r
    })
}

/// Volume of Mⁿ through the canonical maps at a fixed t*; constant in t*.
pub fn canonical_volume_identity(n: usize, tstar: f64, rule: &GaussRule) -> Result<f64> {
    if !(0.0..=1.0).contains(&tstar) {
        return Err(Error::Domain("tstar must lie in [0, 1]"));
    }
    if n == 0 {
        return Err(Error::Domain("order must be >= 1"));
    }
    let ts = Some(tstar);
    let j = |k: JacobianKind, x: &[f64]| jacobian_closed_form(k, ts, x).unwrap_or(0.0);
    if n % 2 == 1 {
        let m = n.div_ceil(2);
        let c = (-ln_factorial(2 * m - 1) - ln_factorial(m - 1)).exp();
        let s = integrate_cube(rule, m - 1, |x| {
            j(JacobianKind::Col, x) + j(JacobianKind::Cou, x)
        });
        Ok(c * s)
    } else {
        let m = n / 2;
        let cl = (-ln_factorial(2 * m) - ln_factorial(m)).exp();
        let cu = (-ln_factorial(2 * m) - ln_factorial(m - 1)).exp();
        let sl = integrate_cube(rule, m, |x| j(JacobianKind::Cel, x));
        let su = integrate_cube(rule, m - 1, |x| j(JacobianKind::Ceu, x));
        Ok(cl * sl + cu * su)
    }
}

/// Which estimator of ∫_{Mⁿ} qᵢ to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanMomentVia {
    /// Vol(Mⁿ) times the Monte-Carlo mean of qᵢ under the uniform sampler.
    ClosedSampler { samples: u64, seed: u64 },
    /// Change of variables through the canonical maps at t*, by quadrature.
    CanonicalIdentity { tstar: f64, order: usize },
}

/// ∫_{Mⁿ} qᵢ dq, with q₀ = 1.
pub fn mean_moment<E: Executor + ?Sized>(
    exec: &E,
    n: usize,
    i: usize,
    via: MeanMomentVia,
) -> Result<ExperimentReport> {
    if n == 0 || i > n {
        return Err(Error::Domain("need 1 <= n and i <= n"));
    }
    match via {
        MeanMomentVia::ClosedSampler { samples, seed } => {
            let vol = volume(n);
            let r = mc::estimate_mean(exec, samples, seed, |rng| {
                let q = sample_uniform_one(rng, n);
                Some(q.q(i))
            });
            Ok(ExperimentReport {
                estimate: r.estimate * vol,
                stderr: r.stderr * vol,
                ..r
            })
        }
        MeanMomentVia::CanonicalIdentity { tstar, order } => {
            let rule = gauss_legendre(order);
            Ok(ExperimentReport::exact(mean_moment_canonical(
                n, i, tstar, &rule,
            )?))
        }
    }
}

/// Integrates qᵢ ∘ φ · |det dφ| over both canonical maps. The λ-integrals
/// of the atom weights against the weight factor are Dirichlet integrals:
/// an atom carrying one of the product's λⱼ gets twice the weight of the
/// others.
fn mean_moment_canonical(n: usize, i: usize, tstar: f64, rule: &GaussRule) -> Result<f64> {
    if !(0.0..=1.0).contains(&tstar) {
        return Err(Error::Domain("tstar must lie in [0, 1]"));
    }
    let pw = |x: f64| x.powi(i as i32);
    let ts = Some(tstar);
    let j = |k: JacobianKind, x: &[f64]| jacobian_closed_form(k, ts, x).unwrap_or(0.0);
    let sum_pw = |x: &[f64]| x.iter().map(|&v| pw(v)).sum::<f64>();
    if n % 2 == 1 {
        let m = n.div_ceil(2);
        let c = (-ln_factorial(2 * m) - ln_factorial(m - 1)).exp();
        let s = integrate_cube(rule, m - 1, |x| {
            let inner = 2.0 * sum_pw(x) + pw(tstar);
            (pw(0.0) + inner) * j(JacobianKind::Col, x) + (1.0 + inner) * j(JacobianKind::Cou, x)
        });
        Ok(c * s)
    } else {
        let m = n / 2;
        let cl = (-ln_factorial(2 * m + 1) - ln_factorial(m)).exp();
        let cu = (-ln_factorial(2 * m + 1) - ln_factorial(m - 1)).exp();
        let sl = integrate_cube(rule, m, |x| {
            (2.0 * sum_pw(x) + pw(tstar)) * j(JacobianKind::Cel, x)
        });
        let su = integrate_cube(rule, m - 1, |x| {
            (pw(0.0) + 1.0 + 2.0 * sum_pw(x) + pw(tstar)) * j(JacobianKind::Ceu, x)
        });
        Ok(cl * sl + cu * su)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::Sequential;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn vandermonde_examples() {
        assert!((vandermonde(&[0.0, 0.5, 1.0]) - 0.25).abs() < 1e-15);
        assert_eq!(vandermonde(&[0.3]), 1.0);
        assert!((vandermonde(&[0.1, 0.2, 0.4, 0.8]) - 0.001008).abs() < 1e-15);
        assert_eq!(log_vandermonde(&[0.5, 0.2]).0, -1.0);
    }

    #[test]
    fn closed_form_examples() {
        let v = jacobian_closed_form(JacobianKind::Cel, Some(0.5), &[1.0]).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
        assert_eq!(
            jacobian_closed_form(JacobianKind::Col, Some(0.0), &[0.3, 0.6]).unwrap(),
            0.0
        );
        let a = jacobian_closed_form(JacobianKind::Cou, Some(0.0), &[0.3, 0.6]).unwrap();
        let b = jacobian_closed_form(JacobianKind::Pou, None, &[0.3, 0.6]).unwrap();
        assert!(rel(a, b) < 1e-14);
        assert!(jacobian_closed_form(JacobianKind::Col, None, &[0.3]).is_err());
    }

    #[test]
    fn numeric_matches_closed_small() {
        let lam = SimplexPoint::new(vec![0.4]).unwrap();
        let v = jacobian_numeric(JacobianKind::Cel, Some(0.5), &lam, &[0.9]).unwrap();
        assert!(rel(v, 0.064) < 1e-5);
        let empty = SimplexPoint::new(vec![]).unwrap();
        let v = jacobian_numeric(JacobianKind::Pol, None, &empty, &[0.37]).unwrap();
        assert!(rel(v, 1.0) < 1e-9);
    }

    #[test]
    fn karlin_shapley_examples() {
        assert!(karlin_shapley_identity_check(&[0.4]) < 1e-10);
        assert!(karlin_shapley_identity_check(&[0.3, 0.7]) <= 1e-4);
        assert!(karlin_shapley_identity_check(&[0.2, 0.5, 0.8]) <= 1e-3);
    }

    #[test]
    fn principal_volumes() {
        let q = Method::Quadrature { order: 64 };
        let v = volume_by_cov(&Sequential, JacobianKind::Pol, 1, q).unwrap();
        assert!((v.estimate - 1.0).abs() < 1e-14);
        let v = volume_by_cov(&Sequential, JacobianKind::Pel, 1, q).unwrap();
        assert!((v.estimate - 1.0 / 6.0).abs() < 1e-14);
        let v = volume_by_cov(&Sequential, JacobianKind::Pol, 2, q).unwrap();
        assert!((v.estimate - 1.0 / 180.0).abs() < 1e-10);
    }

    #[test]
    fn canonical_volume_examples() {
        let rule = gauss_legendre(16);
        for ts in [0.0, 0.1, 0.5, 0.9, 1.0] {
            let v = canonical_volume_identity(3, ts, &rule).unwrap();
            assert!(rel(v, 1.0 / 180.0) < 1e-12, "ts={ts}");
        }
        let v = canonical_volume_identity(4, 0.5, &rule).unwrap();
        assert!(rel(v, volume(4)) < 1e-12);
    }

    #[test]
    fn mean_moment_examples() {
        let via = MeanMomentVia::CanonicalIdentity {
            tstar: 0.3,
            order: 16,
        };
        let v = mean_moment(&Sequential, 2, 1, via).unwrap().estimate;
        assert!((v - 1.0 / 12.0).abs() < 1e-14);
        for n in 1..=4 {
            let v = mean_moment(&Sequential, n, 0, via).unwrap().estimate;
            assert!(rel(v, volume(n)) < 1e-12, "n={n}");
        }
    }
}
