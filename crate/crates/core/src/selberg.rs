//! Selberg integrals
//!
//! S_n(α, β, γ) = ∫_{Iⁿ} ∏ tⱼ^{α−1} (1 − tⱼ)^{β−1} |Δ(t)|^{2γ} dt
//!
//! in closed form and numerically, together with two weighted Selberg-type
//! identities and the volume identities relating different orders.

use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::jacobians::log_vandermonde;
use crate::mc::{self, Executor, ExperimentReport};
use crate::moments::beta_variate;
use crate::quadrature::{gauss_jacobi, integrate_product, GaussRule};
use crate::special::{ln_beta, ln_factorial, ln_gamma};

/// Batches used for the Monte-Carlo standard error.
pub const MC_BATCHES: usize = 32;

/// Parameters (n, α, β, γ) of a Selberg integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelbergParams {
    n: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl SelbergParams {
    /// Requires α, β > 0 and γ > −min(1/n, α/(n−1), β/(n−1)).
    pub fn new(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Selberg dimension must be positive"));
        }
        if !(alpha > 0.0 && beta > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain("Selberg exponents need alpha, beta > 0"));
        }
        let mut bound = 1.0 / n as f64;
        if n > 1 {
            let k = (n - 1) as f64;
            bound = bound.min(alpha / k).min(beta / k);
        }
        if gamma <= -bound {
            return Err(Error::Domain("Selberg gamma below the integrability bound"));
        }
        Ok(Self {
            n,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// ln S_n(α, β, γ); S₀ is the empty product 1.
fn ln_selberg(n: usize, a: f64, b: f64, g: f64) -> f64 {
    (0..n)
        .map(|j| {
            let j = j as f64;
            ln_gamma(a + j * g) + ln_gamma(b + j * g) + ln_gamma(1.0 + (j + 1.0) * g)
                - ln_gamma(a + b + (n as f64 + j - 1.0) * g)
                - ln_gamma(1.0 + g)
        })
        .sum()
}

/// Selberg's product formula, evaluated in log space.
pub fn selberg_closed(p: &SelbergParams) -> f64 {
    ln_selberg(p.n, p.alpha, p.beta, p.gamma).exp()
}

/// S_n(α, β, γ) with S₀ = 1; panics on parameters outside the domain.
fn s(n: usize, a: f64, b: f64, g: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    selberg_closed(&SelbergParams::new(n, a, b, g).expect("valid Selberg parameters"))
}

/// Extra factor multiplying the Selberg integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelbergWeight {
    /// Σⱼ tⱼ⁻¹; needs α > 1.
    SumInversePower,
}

/// How [`selberg_numeric`] integrates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelbergMethod {
    /// Gauss–Jacobi tensor product with `order` points per axis.
    Quadrature { order: usize },
    /// Importance sampling from Beta(α, β) with batch-means errors.
    MonteCarlo { samples: u64, seed: u64 },
}

impl SelbergMethod {
    /// Tensor quadrature up to three dimensions, Monte Carlo beyond.
    pub fn auto(n: usize, order: usize, samples: u64, seed: u64) -> Self {
        if n <= 3 {
            Self::Quadrature { order }
        } else {
            Self::MonteCarlo { samples, seed }
        }
    }
}

/// |Δ(t)|^{2γ}
fn vandermonde_power(t: &[f64], gamma: f64) -> f64 {
    let (_, ln) = log_vandermonde(t);
    if ln == f64::NEG_INFINITY {
        return if gamma > 0.0 { 0.0 } else { f64::INFINITY };
    }
    (2.0 * gamma * ln).exp()
}

/// Numerical Selberg integral, optionally weighted.
pub fn selberg_numeric<E: Executor + ?Sized>(
    exec: &E,
    p: &SelbergParams,
    weight: Option<SelbergWeight>,
    method: SelbergMethod,
) -> Result<ExperimentReport> {
    let (n, a, b, g) = (p.n, p.alpha, p.beta, p.gamma);
    if weight.is_some() && a <= 1.0 {
        return Err(Error::Domain("the t^-1 weight needs alpha > 1"));
    }
    match method {
        SelbergMethod::Quadrature { order } => {
            if order == 0 {
                return Err(Error::Domain("quadrature order must be positive"));
            }
            let base = gauss_jacobi(order, a - 1.0, b - 1.0);
            let value = match weight {
                None => integrate_product(&vec_of(&base, n), |t| vandermonde_power(t, g)),
                // The 1/tⱼ factor lowers the Jacobi exponent on axis j.
                Some(SelbergWeight::SumInversePower) => {
                    let shifted = gauss_jacobi(order, a - 2.0, b - 1.0);
                    (0..n)
                        .map(|j| {
                            let mut rules = vec_of(&base, n);
                            rules[j] = &shifted;
                            integrate_product(&rules, |t| vandermonde_power(t, g))
                        })
                        .sum()
                }
            };
            Ok(ExperimentReport::exact(value))
        }
        SelbergMethod::MonteCarlo { samples, seed } => {
            if samples < MC_BATCHES as u64 {
                return Err(Error::Domain("too few Monte-Carlo samples"));
            }
            let ln_norm = n as f64 * ln_beta(a, b);
            let report = mc::estimate_batch_means(exec, samples, seed, MC_BATCHES, |rng| {
                let t: Vec<f64> = (0..n).map(|_| beta_variate(rng, a, b)).collect();
                let (_, lv) = log_vandermonde(&t);
                let mut v = (ln_norm + 2.0 * g * lv).exp();
                if weight.is_some() {
                    v *= t.iter().map(|x| x.recip()).sum::<f64>();
                }
                v
            });
            Ok(report)
        }
    }
}

fn vec_of(rule: &GaussRule, n: usize) -> Vec<&GaussRule> {
    core::iter::repeat_n(rule, n).collect()
}

/// Numeric left side, closed-form right side and their relative gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: ExperimentReport,
    pub rhs: f64,
    pub residual: f64,
}

impl IdentityCheck {
    fn new(lhs: ExperimentReport, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            residual: ((lhs.estimate - rhs) / rhs).abs(),
        }
    }
}

/// ∫_{Iᵐ} Σt⁻¹ ∏tⱼ²(1−tⱼ)² Δ⁴ dt = (S_m(5,1,2) − S_m(3,3,2)) / 2.
pub fn verify_new_identity_odd<E: Executor + ?Sized>(
    exec: &E,
    m: usize,
    method: SelbergMethod,
) -> Result<IdentityCheck> {
    let p = SelbergParams::new(m, 3.0, 3.0, 2.0)?;
    let lhs = selberg_numeric(exec, &p, Some(SelbergWeight::SumInversePower), method)?;
    let rhs = 0.5 * (s(m, 5.0, 1.0, 2.0) - s(m, 3.0, 3.0, 2.0));
    Ok(IdentityCheck::new(lhs, rhs))
}

/// ∫_{Iᵐ} Σt⁻¹ ∏tⱼ² Δ⁴ dt = (m/2) S_{m−1}(5,3,2).
pub fn verify_new_identity_even<E: Executor + ?Sized>(
    exec: &E,
    m: usize,
    method: SelbergMethod,
) -> Result<IdentityCheck> {
    let p = SelbergParams::new(m, 3.0, 1.0, 2.0)?;
    let lhs = selberg_numeric(exec, &p, Some(SelbergWeight::SumInversePower), method)?;
    let rhs = 0.5 * m as f64 * s(m - 1, 5.0, 3.0, 2.0);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// Relative residuals of the two closed-form volume identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeConsistency {
    /// (1/(m−1)!) S_{m−1}(3,3,2) against (1/m!) S_m(1,1,2).
    pub lower_upper: f64,
    /// S_m(1,3,2) against S_m(3,1,2).
    pub reflection: f64,
}

pub fn verify_volume_consistency(m: usize) -> Result<VolumeConsistency> {
    if m == 0 {
        return Err(Error::Domain("m must be positive"));
    }
    let a = ln_selberg(m - 1, 3.0, 3.0, 2.0) - ln_factorial(m - 1);
    let b = ln_selberg(m, 1.0, 1.0, 2.0) - ln_factorial(m);
    let c = ln_selberg(m, 1.0, 3.0, 2.0);
    let d = ln_selberg(m, 3.0, 1.0, 2.0);
    Ok(VolumeConsistency {
        lower_upper: (a - b).exp_m1().abs(),
        reflection: (c - d).exp_m1().abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::Sequential;
    use crate::special::beta;

    #[test]
    fn closed_form_examples() {
        let p = |n, a, b, g| SelbergParams::new(n, a, b, g).unwrap();
        assert!((selberg_closed(&p(2, 1.0, 1.0, 2.0)) - 1.0 / 15.0).abs() < 1e-15);
        assert!((selberg_closed(&p(1, 3.0, 1.0, 2.0)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((selberg_closed(&p(1, 2.5, 0.7, 3.0)) - beta(2.5, 0.7)).abs() < 1e-13);
        assert!(SelbergParams::new(2, 1.0, 1.0, -1.0).is_err());
        assert!(SelbergParams::new(2, 0.0, 1.0, 1.0).is_err());
        assert!(SelbergParams::new(0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn numeric_examples() {
        let q = SelbergMethod::Quadrature { order: 64 };
        let p = SelbergParams::new(2, 1.0, 1.0, 2.0).unwrap();
        let v = selberg_numeric(&Sequential, &p, None, q).unwrap();
        assert!((v.estimate - 1.0 / 15.0).abs() < 1e-12);
        let w = Some(SelbergWeight::SumInversePower);
        let v = selberg_numeric(
            &Sequential,
            &SelbergParams::new(1, 3.0, 3.0, 2.0).unwrap(),
            w,
            q,
        )
        .unwrap();
        assert!((v.estimate - 1.0 / 12.0).abs() < 1e-14);
        let v = selberg_numeric(
            &Sequential,
            &SelbergParams::new(1, 3.0, 1.0, 2.0).unwrap(),
            w,
            q,
        )
        .unwrap();
        assert!((v.estimate - 0.5).abs() < 1e-14);
        assert!(selberg_numeric(&Sequential, &p, w, q).is_err());
    }

    #[test]
    fn identities_small_m() {
        let q = SelbergMethod::Quadrature { order: 16 };
        let odd = verify_new_identity_odd(&Sequential, 1, q).unwrap();
        assert!((odd.rhs - 1.0 / 12.0).abs() < 1e-15 && odd.residual < 1e-13);
        let even = verify_new_identity_even(&Sequential, 1, q).unwrap();
        assert!((even.rhs - 0.5).abs() < 1e-15 && even.residual < 1e-13);
        for m in 2..=3 {
            assert!(verify_new_identity_odd(&Sequential, m, q).unwrap().residual < 1e-10);
            assert!(
                verify_new_identity_even(&Sequential, m, q)
                    .unwrap()
                    .residual
                    < 1e-10
            );
        }
        for m in 1..=10 {
            let v = verify_volume_consistency(m).unwrap();
            assert!(v.lower_upper < 1e-13 && v.reflection < 1e-13, "m={m} {v:?}");
        }
    }

    #[test]
    fn monte_carlo_four_dims() {
        let p = SelbergParams::new(4, 2.0, 2.0, 1.0).unwrap();
        let mc = SelbergMethod::MonteCarlo {
            samples: 200_000,
            seed: 1,
        };
        let r = selberg_numeric(&Sequential, &p, None, mc).unwrap();
        assert!(
            r.within_sigma(selberg_closed(&p), 4.0),
            "{r:?} vs {}",
            selberg_closed(&p)
        );
    }
}
