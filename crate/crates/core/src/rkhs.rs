//! Polynomial reproducing kernels on [0, 1] built from canonical-
//! representation Jacobians, the Christoffel–Darboux kernel of the order-2
//! associated Legendre polynomials, and an explicit biorthogonal system of
//! Selberg-type integrals.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::jacobians::{jacobian_closed_form, vandermonde, JacobianKind};
use crate::linalg::{symmetric_eigenvalues, Matrix};
use crate::moments::volume;
use crate::poly::{legendre_assoc2, legendre_assoc2_eval, legendre_shifted_derivs, Poly};
use crate::quadrature::{gauss_legendre, integrate_cube, GaussRule};
use crate::special::{factorial, ln_gamma};

/// Gauss–Legendre points per dimension for kernel integrals.
pub const KERNEL_QUADRATURE_ORDER: usize = 128;

/// Largest number of coordinates a kernel marginal integrates out.
pub const MAX_MARGINAL_DIM: usize = 2;

/// Half-width of the band around the diagonal where [`cd_kernel`] switches
/// to its confluent form.
pub const CONFLUENT_BAND: f64 = 1e-6;

/// a_{jk} = (j + k + k²) Γ(j+2) Γ(j) / (Γ(j+k+2) Γ(j−k+1)), j ≥ k ≥ 2.
pub fn a_coefficient(j: usize, k: usize) -> Result<f64> {
    if k < 2 || j < k {
        return Err(Error::Domain("a_jk needs j >= k >= 2"));
    }
    let (jf, kf) = (j as f64, k as f64);
    let ln = ln_gamma(jf + 2.0) + ln_gamma(jf) - ln_gamma(jf + kf + 2.0) - ln_gamma(jf - kf + 1.0);
    Ok((jf + kf + kf * kf) * ln.exp())
}

/// ∫₀¹ r^j Q_k(r) dr in closed form.
pub fn q_moment_integral(j: usize, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain("associated Legendre order 2 needs k >= 2"));
    }
    Ok(match j {
        0 => 1.0 + if k.is_multiple_of(2) { 1.0 } else { -1.0 },
        j if j < k => 1.0,
        j => 1.0 - a_coefficient(j, k)?,
    })
}

/// ∫₀¹ Q_k² = (k+2)! / ((2k+1)(k−2)!).
pub fn q_norm_squared(k: usize) -> f64 {
    factorial(k + 2) / ((2 * k + 1) as f64 * factorial(k - 2))
}

/// Scale factors turning the raw kernels into reproducing kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub m: usize,
    pub normalization: f64,
}

impl KernelSpec {
    /// Ĥ = 2 / (Vol(M^{2m−1}) (2m−1)! (m−1)!) · H on I × I^{m−1}.
    pub fn odd(m: usize) -> Result<Self> {
        check_m(m, 2)?;
        let n = 2 * m - 1;
        Ok(Self {
            m,
            normalization: 2.0 / (volume(n) * factorial(n) * factorial(m - 1)),
        })
    }

    /// Ĥ̄ = 2 / (Vol(M^{2m−1}) (2m−1)! (m−2)!) · H̄ on I × I.
    pub fn odd_marginal(m: usize) -> Result<Self> {
        check_m(m, 2)?;
        let n = 2 * m - 1;
        Ok(Self {
            m,
            normalization: 2.0 / (volume(n) * factorial(n) * factorial(m - 2)),
        })
    }

    /// Ĝ̄ = 2 / (Vol(M^{2m}) (2m)! (m−1)!) · Ḡ on I × I.
    pub fn even_marginal(m: usize) -> Result<Self> {
        check_m(m, 1)?;
        let n = 2 * m;
        Ok(Self {
            m,
            normalization: 2.0 / (volume(n) * factorial(n) * factorial(m - 1)),
        })
    }
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::Domain("kernel order m too small"));
    }
    if m > MAX_MARGINAL_DIM + 2 {
        return Err(Error::Domain("kernel order m exceeds 4"));
    }
    Ok(())
}

/// H(t*, t) = 𝒥ᵖ_ou(t) − 𝒥ᶜ_ol(t*, t) − 𝒥ᶜ_ou(t*, t), t ∈ I^{m−1}.
pub fn kernel_h(m: usize, tstar: f64, t: &[f64]) -> Result<f64> {
    if m < 1 || t.len() != m - 1 {
        return Err(Error::DimensionMismatch {
            expected: m.saturating_sub(1),
            got: t.len(),
        });
    }
    Ok(jacobian_closed_form(JacobianKind::Pou, None, t)?
        - jacobian_closed_form(JacobianKind::Col, Some(tstar), t)?
        - jacobian_closed_form(JacobianKind::Cou, Some(tstar), t)?)
}

/// Integrates f(s, t₂, …) over the trailing `dim` coordinates.
fn marginal(
    rule: &GaussRule,
    s: f64,
    dim: usize,
    f: impl Fn(&[f64]) -> Result<f64>,
) -> Result<f64> {
    if dim > MAX_MARGINAL_DIM {
        return Err(Error::Domain("kernel marginal dimension exceeds 2"));
    }
    let mut err = None;
    let mut point = vec![s; dim + 1];
    let v = integrate_cube(rule, dim, |rest| {
        point[1..].copy_from_slice(rest);
        f(&point).unwrap_or_else(|e| {
            err = Some(e);
            0.0
        })
    });
    err.map_or(Ok(v), Err)
}

/// H̄(t*, s): H with t₁ = s and t₂..t_{m−1} integrated out.
pub fn kernel_h_marginal(m: usize, tstar: f64, s: f64, rule: &GaussRule) -> Result<f64> {
    check_m(m, 2)?;
    marginal(rule, s, m - 2, |t| kernel_h(m, tstar, t))
}

/// Ḡ(t*, s) = 𝒥̄ᶜ_el(0, s) − 𝒥̄ᶜ_el(t*, s) − (m − 1) 𝒥̄ᶜ_eu(t*, s), the
/// even-order counterpart of H̄.
pub fn kernel_g_marginal(m: usize, tstar: f64, s: f64, rule: &GaussRule) -> Result<f64> {
    check_m(m, 1)?;
    let el = |ts: f64| {
        marginal(rule, s, m - 1, |t| {
            jacobian_closed_form(JacobianKind::Cel, Some(ts), t)
        })
    };
    let mut g = el(0.0)? - el(tstar)?;
    if m >= 2 {
        let eu = marginal(rule, s, m - 2, |t| {
            jacobian_closed_form(JacobianKind::Ceu, Some(tstar), t)
        })?;
        g -= (m - 1) as f64 * eu;
    }
    Ok(g)
}

/// Outcome of a reproducing-identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reproduction {
    /// ∫ φ(s) K̂(t*, s) ds
    pub value: f64,
    /// |value − φ(t*)|
    pub residual: f64,
}

fn check_boundary(phi: &Poly, max_degree: usize) -> Result<()> {
    let tol = 1e-12 * phi.coeffs().iter().fold(1.0f64, |a, c| a.max(c.abs()));
    if phi.eval(0.0).abs() > tol || phi.eval(1.0).abs() > tol {
        return Err(Error::Domain("polynomial must vanish at 0 and 1"));
    }
    if phi.degree().is_some_and(|d| d > max_degree) {
        return Err(Error::Domain("polynomial degree too high for the kernel"));
    }
    Ok(())
}

fn reproduce_with(
    phi: &Poly,
    tstar: f64,
    ks: KernelSpec,
    rule: &GaussRule,
    kernel: impl Fn(f64) -> Result<f64>,
) -> Result<Reproduction> {
    let mut value = 0.0;
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        value += w * phi.eval(s) * kernel(s)?;
    }
    value *= ks.normalization;
    Ok(Reproduction {
        value,
        residual: (value - phi.eval(tstar)).abs(),
    })
}

/// Checks φ(t*) = ∫ φ(s) Ĥ̄(t*, s) ds for φ of degree ≤ 2m − 1 vanishing
/// at both endpoints.
pub fn reproduce(phi: &Poly, tstar: f64, m: usize) -> Result<Reproduction> {
    let ks = KernelSpec::odd_marginal(m)?;
    check_boundary(phi, 2 * m - 1)?;
    let rule = gauss_legendre(KERNEL_QUADRATURE_ORDER);
    reproduce_with(phi, tstar, ks, &rule, |s| {
        kernel_h_marginal(m, tstar, s, &rule)
    })
}

/// Even-order variant: φ(t*) = ∫ φ(s) Ĝ̄(t*, s) ds for φ of degree ≤ 2m
/// vanishing at both endpoints.
pub fn reproduce_even(phi: &Poly, tstar: f64, m: usize) -> Result<Reproduction> {
    let ks = KernelSpec::even_marginal(m)?;
    check_boundary(phi, 2 * m)?;
    let rule = gauss_legendre(KERNEL_QUADRATURE_ORDER);
    reproduce_with(phi, tstar, ks, &rule, |s| {
        kernel_g_marginal(m, tstar, s, &rule)
    })
}

/// Christoffel–Darboux form of the L² reproducing kernel of span{Q₂, …,
/// Q_{2m−1}}.
pub fn cd_kernel(m: usize, r1: f64, r2: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain("kernel order m must be at least 2"));
    }
    let n = 2 * m;
    let c = (r1 - r1 * r1) * (r2 - r2 * r2) / (2.0 * ((n - 1) * n * (n + 1)) as f64);
    if (r1 - r2).abs() < CONFLUENT_BAND {
        let r = 0.5 * (r1 + r2);
        let (hi, lo) = (
            legendre_shifted_derivs(n, r),
            legendre_shifted_derivs(n - 1, r),
        );
        return Ok(c * (hi[3] * lo[2] - lo[3] * hi[2]));
    }
    let (hi1, lo1) = (
        legendre_shifted_derivs(n, r1)[2],
        legendre_shifted_derivs(n - 1, r1)[2],
    );
    let (hi2, lo2) = (
        legendre_shifted_derivs(n, r2)[2],
        legendre_shifted_derivs(n - 1, r2)[2],
    );
    Ok(c * (hi1 * lo2 - lo1 * hi2) / (r1 - r2))
}

/// Σ_k Q_k(r₁) Q_k(r₂) / ‖Q_k‖², the same kernel summed directly.
pub fn cd_kernel_direct(m: usize, r1: f64, r2: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain("kernel order m must be at least 2"));
    }
    Ok((2..2 * m)
        .map(|k| legendre_assoc2_eval(k, r1) * legendre_assoc2_eval(k, r2) / q_norm_squared(k))
        .sum())
}

/// The kernel 𝒦(r₁, r₂) = ∫ Ĥ̄(r₁, s) Ĥ̄(r₂, s) ds on a grid, as a Gram
/// matrix.
pub fn marginal_kernel_gram(m: usize, points: &[f64]) -> Result<Matrix> {
    let ks = KernelSpec::odd_marginal(m)?;
    let rule = gauss_legendre(KERNEL_QUADRATURE_ORDER);
    let table = points
        .iter()
        .map(|&r| {
            rule.nodes
                .iter()
                .map(|&s| Ok(ks.normalization * kernel_h_marginal(m, r, s, &rule)?))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(points.len(), |i, j| {
        table[i]
            .iter()
            .zip(&table[j])
            .zip(&rule.weights)
            .map(|((a, b), w)| w * a * b)
            .sum()
    }))
}

/// Comparison of 𝒦 with the Christoffel–Darboux kernel on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelComparison {
    pub points: Vec<f64>,
    /// Smallest eigenvalue of the Gram matrix of 𝒦 − K_{2m−1}.
    pub min_eigenvalue: f64,
    /// Largest |𝒦 − K_{2m−1}| over grid pairs.
    pub max_abs_difference: f64,
}

/// Compares 𝒦 and K_{2m−1} on `n` midpoints of [0, 1].
pub fn compare_kernels(m: usize, n: usize) -> Result<KernelComparison> {
    let points: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let gram = marginal_kernel_gram(m, &points)?;
    let mut diff = Matrix::zeros(n);
    let mut max_abs_difference: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = gram.get(i, j) - cd_kernel(m, points[i], points[j])?;
            diff.set(i, j, d);
            max_abs_difference = max_abs_difference.max(d.abs());
        }
    }
    // Symmetrize against quadrature round-off.
    let sym = Matrix::from_fn(n, |i, j| 0.5 * (diff.get(i, j) + diff.get(j, i)));
    let min_eigenvalue = symmetric_eigenvalues(&sym)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(KernelComparison {
        points,
        min_eigenvalue,
        max_abs_difference,
    })
}

/// Elementary symmetric polynomials e₀..e_len of `t`.
pub fn elementary_symmetric(t: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; t.len() + 1];
    e[0] = 1.0;
    for (i, &x) in t.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

/// e_j(t, t) = Σ_{j₁+j₂=j} e_{j₁}(t) e_{j₂}(t).
pub fn e_diagonal(j: usize, t: &[f64]) -> f64 {
    let e = elementary_symmetric(t);
    let at = |i: usize| e.get(i).copied().unwrap_or(0.0);
    (0..=j).map(|a| at(a) * at(j - a)).sum()
}

/// One term (−1)^{j+1} a_{jk} · e_{index}(t, t) of h̃_k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiorthogonalTerm {
    pub coefficient: f64,
    pub e_index: usize,
}

/// h̃_k = Σ_{j=k}^{2m−1} (−1)^{j+1} a_{jk} e_{2m−1−j}(t, t).
pub fn biorthogonal_coefficients(m: usize, k: usize) -> Result<Vec<BiorthogonalTerm>> {
    if m < 2 || k < 2 || k > 2 * m - 1 {
        return Err(Error::Domain("biorthogonal index k must lie in 2..=2m-1"));
    }
    (k..2 * m)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            Ok(BiorthogonalTerm {
                coefficient: sign * a_coefficient(j, k)?,
                e_index: 2 * m - 1 - j,
            })
        })
        .collect()
}

/// h̃_k evaluated at t ∈ I^{m−1}.
pub fn h_tilde(terms: &[BiorthogonalTerm], t: &[f64]) -> f64 {
    terms
        .iter()
        .map(|b| b.coefficient * e_diagonal(b.e_index, t))
        .sum()
}

/// One entry of the biorthogonality table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiorthogonalEntry {
    /// Index of Q_j in ΣQ_j.
    pub j: usize,
    /// Index of h̃_k.
    pub k: usize,
    pub value: f64,
    pub expected: f64,
    /// Relative on the diagonal, absolute elsewhere.
    pub residual: f64,
}

/// Vol(M^{2m−1}) (2m−1)! (m−1)! (k+2)! / ((8k+4)(k−2)!).
pub fn biorthogonal_diagonal(m: usize, k: usize) -> f64 {
    let n = 2 * m - 1;
    volume(n) * factorial(n) * factorial(m - 1) * factorial(k + 2)
        / ((8 * k + 4) as f64 * factorial(k - 2))
}

/// Integrates h̃_k · ΣQ_j · ∏t² Δ⁴ over I^{m−1} for all j, k ∈ 2..=2m−1.
///
/// Same-parity entries use h̃_k as given and are compared with the
/// diagonal constant (zero off the diagonal). Opposite-parity entries use
/// the reflection-symmetrized weight ĥ_k(t) + (−1)^k ĥ_k(1 − t), with
/// ĥ_k = ∏t² Δ⁴ h̃_k, which must integrate to zero against ΣQ_j.
pub fn verify_biorthogonality(m: usize, order: usize) -> Result<Vec<BiorthogonalEntry>> {
    if m < 2 {
        return Err(Error::Domain("biorthogonality needs m >= 2"));
    }
    let dim = m - 1;
    let rule = gauss_legendre(order);
    let weight = |t: &[f64]| -> f64 {
        let v = vandermonde(t);
        t.iter().map(|x| x * x).product::<f64>() * v * v * v * v
    };
    let sigma_q =
        |j: usize, t: &[f64]| -> f64 { t.iter().map(|&x| legendre_assoc2_eval(j, x)).sum() };
    let mut out = Vec::new();
    for k in 2..2 * m {
        let terms = biorthogonal_coefficients(m, k)?;
        let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
        for j in 2..2 * m {
            let (value, expected, residual);
            if (j + k) % 2 == 0 {
                value = integrate_cube(&rule, dim, |t| {
                    h_tilde(&terms, t) * sigma_q(j, t) * weight(t)
                });
                expected = if j == k {
                    biorthogonal_diagonal(m, k)
                } else {
                    0.0
                };
                residual = if j == k {
                    (value / expected - 1.0).abs()
                } else {
                    value.abs()
                };
            } else {
                let mut reflected = vec![0.0; dim];
                value = integrate_cube(&rule, dim, |t| {
                    reflected.iter_mut().zip(t).for_each(|(r, x)| *r = 1.0 - x);
                    let h = h_tilde(&terms, t) * weight(t)
                        + sign_k * h_tilde(&terms, &reflected) * weight(&reflected);
                    h * sigma_q(j, t)
                });
                expected = 0.0;
                residual = value.abs();
            }
            out.push(BiorthogonalEntry {
                j,
                k,
                value,
                expected,
                residual,
            });
        }
    }
    Ok(out)
}
