//! Moment vectors, discrete measures and canonical moments.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mc::{self, Executor, ExperimentReport};
use crate::special::{incomplete_beta_int, ln_gamma};

/// Tolerance for deciding that a canonical moment sits on {0, 1}.
pub const BOUNDARY_ETA: f64 = 1e-12;

/// Truncated moment vector (q₁, …, qₙ); q₀ = 1 is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector(Vec<f64>);

impl MomentVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("moment vector needs order n >= 1"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("moments must be finite"));
        }
        Ok(Self(values))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// qᵢ with q₀ = 1.
    pub fn q(&self, i: usize) -> f64 {
        if i == 0 {
            1.0
        } else {
            self.0[i - 1]
        }
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }

    /// Largest coordinate-wise difference to another vector of the same order.
    pub fn sup_distance(&self, other: &MomentVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Kreĭn index stored as a count of halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KreinIndex(u32);

impl KreinIndex {
    pub fn from_halves(halves: u32) -> Self {
        Self(halves)
    }

    pub fn halves(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for KreinIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Finitely supported probability measure Σ λⱼ δ_{tⱼ} on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub const WEIGHT_TOL: f64 = 1e-12;
    pub const MIN_GAP: f64 = 1e-12;

    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidMeasure(
                "nodes and weights must be non-empty and paired",
            ));
        }
        if nodes.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return Err(Error::InvalidMeasure("nodes must lie in [0, 1]"));
        }
        if nodes.windows(2).any(|w| w[1] - w[0] <= Self::MIN_GAP) {
            return Err(Error::InvalidMeasure("nodes must be strictly increasing"));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidMeasure("weights must be positive"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > Self::WEIGHT_TOL {
            return Err(Error::InvalidMeasure("weights must sum to one"));
        }
        Ok(Self { nodes, weights })
    }

    pub fn dirac(t: f64) -> Result<Self> {
        Self::new(vec![t], vec![1.0])
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn krein_index(&self) -> KreinIndex {
        krein_index(self)
    }

    pub fn moments(&self, n: usize) -> MomentVector {
        moments_of(self, n)
    }

    /// Weight carried by the node closest to `t`, if one is within `tol`.
    pub fn mass_at(&self, t: f64, tol: f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .filter(|(x, _)| (*x - t).abs() <= tol)
            .map(|(_, w)| *w)
            .sum()
    }

    /// True if some node lies in the open ball (t − r, t + r).
    pub fn intersects_ball(&self, t: f64, r: f64) -> bool {
        self.nodes.iter().any(|x| (x - t).abs() < r)
    }
}

/// Interior nodes count 1 and endpoint nodes ½.
pub fn krein_index(mu: &DiscreteMeasure) -> KreinIndex {
    let halves = mu
        .nodes
        .iter()
        .map(|&t| if t == 0.0 || t == 1.0 { 1 } else { 2 })
        .sum();
    KreinIndex(halves)
}

/// Skibinsky coordinates p₁..pₙ, each in (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalMoments(Vec<f64>);

impl CanonicalMoments {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Domain("canonical moments need order n >= 1"));
        }
        for (k, &v) in p.iter().enumerate() {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::BoundaryOrOutside {
                    index: k + 1,
                    value: v,
                });
            }
        }
        Ok(Self(p))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Point of the open simplex Λᴺ: positive coordinates with sum below one.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.iter().any(|&l| !(l > 0.0)) || !(lambda.iter().sum::<f64>() < 1.0) {
            return Err(Error::Domain(
                "simplex point needs positive coordinates summing below 1",
            ));
        }
        Ok(Self(lambda))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// 1 − Σλ.
    pub fn slack(&self) -> f64 {
        1.0 - self.0.iter().sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Interior,
    Boundary,
    Outside,
}

/// qᵢ = Σ λⱼ tⱼⁱ for i = 1..n.
pub fn moments_of(mu: &DiscreteMeasure, n: usize) -> MomentVector {
    let mut q = vec![0.0; n];
    for (&t, &w) in mu.nodes.iter().zip(&mu.weights) {
        let mut tp = 1.0;
        for qi in q.iter_mut() {
            tp *= t;
            *qi += w * tp;
        }
    }
    MomentVector(q)
}

/// ζ₁ = p₁, ζₖ = (1 − pₖ₋₁) pₖ; zero past the end of `p`.
fn zeta(p: &[f64], k: usize) -> f64 {
    match k {
        0 => 0.0,
        1 => p.first().copied().unwrap_or(0.0),
        _ if k <= p.len() => (1.0 - p[k - 2]) * p[k - 1],
        _ => 0.0,
    }
}

/// Monic three-term recurrence coefficients (aᵢ, bᵢ), i = 1.., of the
/// measure with canonical moments `p`: aᵢ = ζ₂ᵢ₋₂ + ζ₂ᵢ₋₁, bᵢ = ζ₂ᵢ₋₁ ζ₂ᵢ.
pub fn recurrence_from_canonical(p: &[f64], len: usize) -> (Vec<f64>, Vec<f64>) {
    let a = (1..=len)
        .map(|i| zeta(p, 2 * i - 2) + zeta(p, 2 * i - 1))
        .collect();
    let b = (1..=len)
        .map(|i| zeta(p, 2 * i - 1) * zeta(p, 2 * i))
        .collect();
    (a, b)
}

/// Moments q₁..qₙ of the measure with canonical moments `p`, which may
/// include terminal values in {0, 1}. Computed as (Jᵏ)₁₁ of the Jacobi
/// matrix in its unsymmetrized form.
pub fn moments_from_canonical_slice(p: &[f64], n: usize) -> Vec<f64> {
    let size = n / 2 + 2;
    let (a, b) = recurrence_from_canonical(p, size);
    let mut v = vec![0.0; size];
    v[0] = 1.0;
    let mut w = vec![0.0; size];
    let mut q = Vec::with_capacity(n);
    for _ in 0..n {
        for i in 0..size {
            let mut s = a[i] * v[i];
            if i + 1 < size {
                s += b[i] * v[i + 1];
            }
            if i > 0 {
                s += v[i - 1];
            }
            w[i] = s;
        }
        core::mem::swap(&mut v, &mut w);
        q.push(v[0]);
    }
    q
}

/// Inverse of [`to_canonical`].
pub fn from_canonical(p: &CanonicalMoments) -> MomentVector {
    MomentVector(moments_from_canonical_slice(&p.0, p.order()))
}

fn hankel_lower(q: &MomentVector, k: isize) -> f64 {
    if k < 0 {
        return 1.0;
    }
    let k = k as usize;
    let m = k / 2;
    let shift = k % 2;
    Matrix::from_fn(m + 1, |i, j| q.q(i + j + shift)).det()
}

fn hankel_upper(q: &MomentVector, k: isize) -> f64 {
    if k <= 0 {
        return 1.0;
    }
    let k = k as usize;
    if k.is_multiple_of(2) {
        let m = k / 2;
        Matrix::from_fn(m, |i, j| q.q(i + j + 1) - q.q(i + j + 2)).det()
    } else {
        let m = k / 2;
        Matrix::from_fn(m + 1, |i, j| q.q(i + j) - q.q(i + j + 1)).det()
    }
}

/// Relative position of qₖ in its admissible range given q₁..qₖ₋₁:
/// (qₖ − qₖ⁻)/(qₖ⁺ − qₖ⁻), from ratios of Hankel determinants.
fn canonical_step(q: &MomentVector, k: usize) -> f64 {
    let k = k as isize;
    let lower = hankel_lower(q, k) / hankel_lower(q, k - 2);
    let upper = hankel_upper(q, k) / hankel_upper(q, k - 2);
    let range = lower + upper;
    if !(range > 0.0) || !range.is_finite() {
        return f64::NAN;
    }
    lower / range
}

enum Scan {
    Interior(Vec<f64>),
    Boundary { index: usize, value: f64 },
    Outside { index: usize, value: f64 },
}

fn scan(q: &MomentVector) -> Scan {
    let n = q.order();
    let mut p = Vec::with_capacity(n);
    for k in 1..=n {
        let pk = canonical_step(q, k);
        if pk.is_nan() || !(-BOUNDARY_ETA..=1.0 + BOUNDARY_ETA).contains(&pk) {
            return Scan::Outside {
                index: k,
                value: pk,
            };
        }
        if pk <= BOUNDARY_ETA || pk >= 1.0 - BOUNDARY_ETA {
            // The measure is determined; the remaining moments must match it.
            p.push(if pk < 0.5 { 0.0 } else { 1.0 });
            let implied = moments_from_canonical_slice(&p, n);
            let scale = 1e-9;
            let ok = implied
                .iter()
                .zip(q.values())
                .skip(k)
                .all(|(a, b)| (a - b).abs() <= scale);
            return if ok {
                Scan::Boundary {
                    index: k,
                    value: pk,
                }
            } else {
                Scan::Outside {
                    index: k,
                    value: pk,
                }
            };
        }
        p.push(pk);
    }
    Scan::Interior(p)
}

/// Canonical moments of an interior moment vector.
pub fn to_canonical(q: &MomentVector) -> Result<CanonicalMoments> {
    match scan(q) {
        Scan::Interior(p) => Ok(CanonicalMoments(p)),
        Scan::Boundary { index, value } | Scan::Outside { index, value } => {
            Err(Error::BoundaryOrOutside { index, value })
        }
    }
}

pub fn classify(q: &MomentVector) -> Classification {
    match scan(q) {
        Scan::Interior(_) => Classification::Interior,
        Scan::Boundary { .. } => Classification::Boundary,
        Scan::Outside { .. } => Classification::Outside,
    }
}

/// Vol(Mⁿ) = ∏ₖ Γ(k)²/Γ(2k).
pub fn volume(n: usize) -> f64 {
    (1..=n)
        .map(|k| {
            let k = k as f64;
            2.0 * ln_gamma(k) - ln_gamma(2.0 * k)
        })
        .sum::<f64>()
        .exp()
}

/// ∫_{Λᴺ} (1 − Σλ)^{a₀−1} ∏ λᵢ^{aᵢ−1} dλ = ∏Γ(aᵢ)/Γ(Σaᵢ).
pub fn dirichlet_integral(a: &[f64]) -> Result<f64> {
    if a.is_empty() || a.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Domain("Dirichlet exponents must be positive"));
    }
    let num: f64 = a.iter().map(|&x| ln_gamma(x)).sum();
    let den = ln_gamma(a.iter().sum());
    Ok((num - den).exp())
}

/// Beta(a, b) variate as X/(X + Y) with X ~ Γ(a), Y ~ Γ(b).
pub fn beta_variate<R: Rng + ?Sized>(rng: &mut R, a: f64, b: f64) -> f64 {
    let x = Gamma::new(a, 1.0).expect("positive shape").sample(rng);
    let y = Gamma::new(b, 1.0).expect("positive shape").sample(rng);
    x / (x + y)
}

/// Canonical moments of a uniform draw from Mⁿ: pₖ ~ Beta(n−k+1, n−k+1).
pub fn sample_canonical<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| {
            let s = (n - k + 1) as f64;
            // Gamma draws can round to an endpoint; keep p strictly inside.
            beta_variate(rng, s, s).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON)
        })
        .collect()
}

/// One uniform draw from Mⁿ.
pub fn sample_uniform_one<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MomentVector {
    MomentVector(moments_from_canonical_slice(&sample_canonical(rng, n), n))
}

/// `count` uniform draws from Mⁿ, reproducible for a given seed regardless
/// of the executor.
pub fn sample_uniform<E: Executor + ?Sized>(
    exec: &E,
    n: usize,
    count: usize,
    seed: u64,
) -> Vec<MomentVector> {
    let plan: Vec<(u64, u64)> = mc::blocks(count as u64, mc::BLOCK_SIZE).collect();
    exec.map_blocks(plan.len(), |i| {
        let (b, len) = plan[i];
        let mut rng = mc::block_rng(seed, b);
        (0..len)
            .map(|_| sample_uniform_one(&mut rng, n))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Fraction of uniform points of the box [0, 1]ⁿ that lie in Mⁿ; this
/// estimates Vol(Mⁿ) since the box has unit volume.
pub fn volume_mc<E: Executor + ?Sized>(
    exec: &E,
    n: usize,
    samples: u64,
    seed: u64,
) -> ExperimentReport {
    mc::estimate_mean(exec, samples, seed, |rng| {
        let q: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let inside = classify(&MomentVector(q)) != Classification::Outside;
        Some(if inside { 1.0 } else { 0.0 })
    })
}

/// I_δ(n, n), the regularized incomplete Beta function at δ ≤ ½.
pub fn incomplete_beta_tail(n: usize, delta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("order must be >= 1"));
    }
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::Domain("delta must lie in [0, 1/2]"));
    }
    Ok(incomplete_beta_int(n, n, delta))
}
