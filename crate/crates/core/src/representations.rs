//! Principal and canonical representing measures of an interior moment
//! vector, and Markov's maximal mass.
//!
//! A representation is the measure whose canonical moments extend
//! (p₁..pₙ) by a terminal 0 or 1, possibly after one free coordinate. Its
//! nodes and weights come from the truncated Jacobi matrix (Golub–Welsch)
//! and are then polished by Newton's method on the moment equations.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{tridiagonal_eigen, Matrix};
use crate::moments::{
    recurrence_from_canonical, to_canonical, CanonicalMoments, DiscreteMeasure, MomentVector,
};

pub use crate::moments::krein_index;

/// Sup-norm residual required of every representation.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Newton iteration cap.
pub const MAX_NEWTON: usize = 50;
/// Minimum distance between t* and any other node.
pub const COLLISION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    PrincipalLower,
    PrincipalUpper,
    CanonicalLower,
    CanonicalUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RepresentationKind {
    pub parity: Parity,
    pub flavor: Flavor,
}

impl RepresentationKind {
    pub fn new(n: usize, flavor: Flavor) -> Self {
        Self {
            parity: Parity::of(n),
            flavor,
        }
    }

    /// Whether the support contains 0 and 1, respectively.
    pub fn endpoints(self) -> (bool, bool) {
        use Flavor::*;
        match (self.parity, self.flavor) {
            (Parity::Odd, PrincipalLower) => (false, false),
            (Parity::Odd, PrincipalUpper) => (true, true),
            (Parity::Even, PrincipalLower) => (true, false),
            (Parity::Even, PrincipalUpper) => (false, true),
            (Parity::Odd, CanonicalLower) => (true, false),
            (Parity::Odd, CanonicalUpper) => (false, true),
            (Parity::Even, CanonicalLower) => (false, false),
            (Parity::Even, CanonicalUpper) => (true, true),
        }
    }
}

/// Canonical representation through a prescribed node.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalRepResult {
    pub measure: DiscreteMeasure,
    /// Mass at t*.
    pub star_weight: f64,
    pub kind: RepresentationKind,
}

/// Extended canonical sequence → support size of the terminated measure.
/// `last` is the position of the last ζ that may be nonzero.
fn support_size(last: usize) -> usize {
    last / 2 + 1
}

/// Nodes and weights from Golub–Welsch on the Jacobi matrix of `p_ext`.
fn gauss_from_canonical(p_ext: &[f64], size: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (a, b) = recurrence_from_canonical(p_ext, size);
    let off: Vec<f64> = b[..size - 1].iter().map(|&x| x.max(0.0).sqrt()).collect();
    let eig = tridiagonal_eigen(&a, &off).ok_or(Error::ConvergenceFailure {
        residual: f64::NAN,
        iterations: 0,
    })?;
    Ok(eig.into_iter().map(|(x, z)| (x, z * z)).unzip())
}

/// Value at `t` of the characteristic polynomial of the size-`size` Jacobi
/// matrix of `p_ext` (the monic orthogonal polynomial of that degree).
fn char_poly(p_ext: &[f64], size: usize, t: f64) -> f64 {
    let (a, b) = recurrence_from_canonical(p_ext, size);
    let (mut prev, mut cur) = (1.0, t - a[0]);
    for k in 1..size {
        let next = (t - a[k]) * cur - b[k - 1] * prev;
        prev = cur;
        cur = next;
    }
    cur
}

struct Pinned {
    zero: bool,
    one: bool,
    star: Option<f64>,
}

/// Snaps pinned nodes to their exact values and polishes the remaining
/// nodes and all weights by Newton's method on Σ wⱼ tⱼⁱ = qᵢ, i = 0..n.
fn polish(
    q: &MomentVector,
    mut nodes: Vec<f64>,
    mut weights: Vec<f64>,
    pins: &Pinned,
) -> Result<DiscreteMeasure> {
    let n = q.order();
    let len = nodes.len();
    let mut fixed = vec![false; len];
    if pins.zero {
        nodes[0] = 0.0;
        fixed[0] = true;
    }
    if pins.one {
        nodes[len - 1] = 1.0;
        fixed[len - 1] = true;
    }
    if let Some(ts) = pins.star {
        let j = (0..len)
            .filter(|&j| !fixed[j])
            .min_by(|&i, &j| (nodes[i] - ts).abs().total_cmp(&(nodes[j] - ts).abs()))
            .ok_or(Error::NodeCollision { tstar: ts })?;
        if (0..len).any(|i| i != j && (nodes[i] - ts).abs() < COLLISION_TOL) {
            return Err(Error::NodeCollision { tstar: ts });
        }
        nodes[j] = ts;
        fixed[j] = true;
    }
    let free: Vec<usize> = (0..len).filter(|&j| !fixed[j]).collect();
    let unknowns = len + free.len();

    let residual = |nodes: &[f64], weights: &[f64]| -> Vec<f64> {
        (0..=n)
            .map(|i| {
                let s: f64 = nodes
                    .iter()
                    .zip(weights)
                    .map(|(t, w)| w * t.powi(i as i32))
                    .sum();
                s - q.q(i)
            })
            .collect()
    };
    let sup = |r: &[f64]| r.iter().fold(0.0f64, |m, x| m.max(x.abs()));

    let mut r = residual(&nodes, &weights);
    let mut iterations = 0;
    if unknowns == n + 1 {
        while iterations < MAX_NEWTON && sup(&r) > 1e-15 {
            iterations += 1;
            let jac = Matrix::from_fn(n + 1, |i, c| {
                if c < len {
                    nodes[c].powi(i as i32)
                } else {
                    let j = free[c - len];
                    if i == 0 {
                        0.0
                    } else {
                        weights[j] * i as f64 * nodes[j].powi(i as i32 - 1)
                    }
                }
            });
            let rhs: Vec<f64> = r.iter().map(|x| -x).collect();
            let Some(step) = jac.solve(&rhs) else { break };
            // Backtrack until the update stays a valid measure and does not
            // increase the residual.
            let mut scale = 1.0;
            let before = sup(&r);
            let mut accepted = false;
            for _ in 0..30 {
                let mut tn = nodes.clone();
                let mut tw = weights.clone();
                for (j, w) in tw.iter_mut().enumerate() {
                    *w += scale * step[j];
                }
                for (c, &j) in free.iter().enumerate() {
                    tn[j] += scale * step[len + c];
                }
                let valid = tw.iter().all(|&w| w > 0.0)
                    && tn.iter().all(|t| (0.0..=1.0).contains(t))
                    && tn.windows(2).all(|w| w[0] < w[1]);
                if valid {
                    let tr = residual(&tn, &tw);
                    if sup(&tr) <= before {
                        nodes = tn;
                        weights = tw;
                        r = tr;
                        accepted = true;
                        break;
                    }
                }
                scale *= 0.5;
            }
            if !accepted {
                break;
            }
        }
    }
    let res = sup(&r);
    if !(res <= RESIDUAL_TOL) {
        return Err(Error::ConvergenceFailure {
            residual: res,
            iterations,
        });
    }
    // Absorb the last rounding of the mass equation.
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    DiscreteMeasure::new(nodes, weights).map_err(|_| Error::ConvergenceFailure {
        residual: res,
        iterations,
    })
}

fn interior_canonical(q: &MomentVector) -> Result<CanonicalMoments> {
    to_canonical(q).map_err(|_| Error::NotInterior)
}

fn principal_from_canonical(
    q: &MomentVector,
    p: &CanonicalMoments,
    side: Side,
) -> Result<DiscreteMeasure> {
    let n = q.order();
    let mut ext = p.values().to_vec();
    let (terminal, last) = match side {
        Side::Lower => (0.0, n),
        Side::Upper => (1.0, n + 1),
    };
    ext.push(terminal);
    let size = support_size(last);
    let (nodes, weights) = gauss_from_canonical(&ext, size)?;
    let flavor = match side {
        Side::Lower => Flavor::PrincipalLower,
        Side::Upper => Flavor::PrincipalUpper,
    };
    let (zero, one) = RepresentationKind::new(n, flavor).endpoints();
    polish(
        q,
        nodes,
        weights,
        &Pinned {
            zero,
            one,
            star: None,
        },
    )
}

/// Lower or upper principal representation: the representing measure of
/// index (n+1)/2 with the endpoint pattern of its parity and side.
pub fn principal_representation(q: &MomentVector, side: Side) -> Result<DiscreteMeasure> {
    let p = interior_canonical(q)?;
    principal_from_canonical(q, &p, side)
}

/// Real roots in [lo, hi] of c₀ + c₁x + c₂x².
fn quadratic_roots(c0: f64, c1: f64, c2: f64, lo: f64, hi: f64) -> Vec<f64> {
    let scale = c0.abs().max(c1.abs()).max(c2.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if c2.abs() <= 1e-13 * scale {
        if c1 != 0.0 {
            roots.push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            let s = disc.sqrt();
            let qq = -0.5 * (c1 + if c1 >= 0.0 { s } else { -s });
            if qq != 0.0 {
                roots.push(qq / c2);
                roots.push(c0 / qq);
            } else {
                roots.push(0.0);
            }
        }
    }
    roots.retain(|&x| x >= lo && x <= hi);
    roots.sort_by(f64::total_cmp);
    roots
}

/// Canonical representation whose support contains `tstar`.
///
/// For t* in (0, 1) the free canonical moment x = pₙ₊₁ is fixed by the
/// requirement that t* be an eigenvalue of the Jacobi matrix of
/// (p₁..pₙ, x, e) with terminal e ∈ {0, 1}; that characteristic polynomial
/// is at most quadratic in x. For t* ∈ {0, 1} the answer is the principal
/// representation containing t*.
pub fn canonical_representation(q: &MomentVector, tstar: f64) -> Result<CanonicalRepResult> {
    if !(0.0..=1.0).contains(&tstar) {
        return Err(Error::Domain("tstar must lie in [0, 1]"));
    }
    let n = q.order();
    let p = interior_canonical(q)?;
    let principal = |side: Side| -> Result<CanonicalRepResult> {
        let measure = principal_from_canonical(q, &p, side)?;
        let flavor = match side {
            Side::Lower => Flavor::PrincipalLower,
            Side::Upper => Flavor::PrincipalUpper,
        };
        let star_weight = measure.mass_at(tstar, COLLISION_TOL);
        Ok(CanonicalRepResult {
            measure,
            star_weight,
            kind: RepresentationKind::new(n, flavor),
        })
    };
    if tstar == 0.0 {
        return principal(if n % 2 == 1 { Side::Upper } else { Side::Lower });
    }
    if tstar == 1.0 {
        return principal(Side::Upper);
    }

    const EDGE: f64 = 1e-12;
    let mut edge_hit: Option<Side> = None;
    let mut last_err = None;
    for (terminal, flavor) in [(0.0, Flavor::CanonicalLower), (1.0, Flavor::CanonicalUpper)] {
        let last = if terminal == 0.0 { n + 1 } else { n + 2 };
        let size = support_size(last);
        let ext_at = |x: f64| {
            let mut e = p.values().to_vec();
            e.push(x);
            e.push(terminal);
            e
        };
        let f = |x: f64| char_poly(&ext_at(x), size, tstar);
        let (f0, fh, f1) = (f(0.0), f(0.5), f(1.0));
        let c2 = 2.0 * (f1 - 2.0 * fh + f0);
        let c1 = f1 - f0 - c2;
        for x in quadratic_roots(f0, c1, c2, -EDGE, 1.0 + EDGE) {
            if x <= EDGE {
                edge_hit = Some(Side::Lower);
                continue;
            }
            if x >= 1.0 - EDGE {
                edge_hit = Some(Side::Upper);
                continue;
            }
            let (nodes, weights) = gauss_from_canonical(&ext_at(x), size)?;
            let kind = RepresentationKind::new(n, flavor);
            let (zero, one) = kind.endpoints();
            match polish(
                q,
                nodes,
                weights,
                &Pinned {
                    zero,
                    one,
                    star: Some(tstar),
                },
            ) {
                Ok(measure) => {
                    let star_weight = measure.mass_at(tstar, 0.0);
                    return Ok(CanonicalRepResult {
                        measure,
                        star_weight,
                        kind,
                    });
                }
                Err(e) => last_err = Some(e),
            }
        }
    }
    if let Some(side) = edge_hit {
        let rep = principal(side)?;
        if rep.star_weight > 0.0 {
            return Ok(rep);
        }
    }
    Err(last_err.unwrap_or(Error::ConvergenceFailure {
        residual: f64::NAN,
        iterations: 0,
    }))
}

/// Largest mass any representing measure of `q` can put at `tstar`.
pub fn maximal_mass(q: &MomentVector, tstar: f64) -> Result<f64> {
    canonical_representation(q, tstar).map(|r| r.star_weight)
}
