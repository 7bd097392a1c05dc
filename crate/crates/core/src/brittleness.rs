//! Brittleness of posterior values under moment constraints: closed-form
//! bounds and Monte-Carlo estimates of the events they rest on.
//!
//! The prior is uniform on Mⁿ, the quantity of interest is the mean q₁ and
//! the data map observes a point in B_δ(d). A positive E[θ̂] certifies
//! that the worst-case posterior mean is at least λ = 1 − 2δ′, far from
//! the prior value ½.

use alloc::vec::Vec;
use core::f64::consts::E;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::mc::{self, Executor, ExperimentReport, RunningStats};
use crate::moments::{sample_uniform_one, MomentVector};
use crate::representations::{maximal_mass, principal_representation, Side};

/// Largest fraction of draws whose representation solve may fail.
pub const FAILURE_BUDGET: f64 = 1e-3;

/// max(0, 1 − 4e (2nδ/e)^{1/(2n+1)}), a lower bound on the worst-case
/// posterior mean given data of precision δ.
pub fn bound_closed_form(n: usize, delta: f64) -> Result<f64> {
    if n == 0 || !(delta > 0.0) {
        return Err(Error::Domain("bound needs n >= 1 and delta > 0"));
    }
    let nf = n as f64;
    let v = 1.0 - 4.0 * E * (2.0 * nf * delta / E).powf(1.0 / (2.0 * nf + 1.0));
    Ok(v.max(0.0))
}

/// δ = (δ′)^{2n+1} (2e)^{−2n} / (4n), the largest data precision for which
/// the bound guarantees a posterior mean ≥ 1 − 2δ′.
pub fn solve_delta(n: usize, delta_prime: f64) -> Result<f64> {
    if n == 0 || !(delta_prime > 0.0 && delta_prime < 1.0) {
        return Err(Error::Domain(
            "solve_delta needs n >= 1 and delta' in (0, 1)",
        ));
    }
    let nf = n as f64;
    Ok(delta_prime.powi(2 * n as i32 + 1) * (2.0 * E).powf(-2.0 * nf) / (4.0 * nf))
}

/// (1 − ε)ⁿ, the probability that the maximal mass at a point is ≥ ε.
pub fn mass_sup_law(n: usize, epsilon: f64) -> f64 {
    (1.0 - epsilon).powi(n as i32)
}

/// 1 − h(δ) with h(δ) = δ (2e)^{2n}: lower bound on the probability that
/// some representing measure puts no mass in B_δ.
pub fn mass_inf_bound(n: usize, delta: f64) -> f64 {
    1.0 - delta * (2.0 * E).powi(2 * n as i32)
}

/// [(δ′)ⁿ, (δ′)ⁿ (2e)ⁿ], bracketing P(q₁ > 1 − δ′).
pub fn first_moment_bounds(n: usize, delta_prime: f64) -> (f64, f64) {
    let lo = delta_prime.powi(n as i32);
    (lo, lo * (2.0 * E).powi(n as i32))
}

/// Parameters of one brittleness experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrittlenessConfig {
    pub n: usize,
    /// Observation point.
    pub d: f64,
    /// Data precision: radius of the observation ball.
    pub delta: f64,
    /// Margin: the certified posterior bound is 1 − 2δ′.
    pub delta_prime: f64,
    /// Mass threshold for the supremum event.
    pub epsilon: f64,
    pub samples: u64,
    pub seed: u64,
}

impl BrittlenessConfig {
    /// Derives d = 1 − δ′/2 and ε = (δ′)ⁿ/(2n).
    pub fn new(n: usize, delta_prime: f64, delta: f64, samples: u64, seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            d: 1.0 - 0.5 * delta_prime,
            delta,
            delta_prime,
            epsilon: delta_prime.powi(n as i32) / (2.0 * n.max(1) as f64),
            samples,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("moment order must be >= 1"));
        }
        if !(self.delta > 0.0) {
            return Err(Error::Domain("delta must be positive"));
        }
        if !(self.delta_prime > 0.0 && self.delta_prime < 1.0) {
            return Err(Error::Domain("delta' must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.d) || !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::Domain(
                "observation point and epsilon must lie in [0, 1]",
            ));
        }
        if self.samples == 0 {
            return Err(Error::Domain("sample count must be positive"));
        }
        Ok(())
    }

    /// λ = 1 − 2δ′
    pub fn lambda(&self) -> f64 {
        1.0 - 2.0 * self.delta_prime
    }
}

/// Runs `f` on `samples` uniform draws from Mⁿ and accumulates each of its
/// K outputs. Draws where `f` fails are counted and skipped.
fn run_draws<E, F, const K: usize>(
    exec: &E,
    n: usize,
    samples: u64,
    seed: u64,
    f: F,
) -> Result<[ExperimentReport; K]>
where
    E: Executor + ?Sized,
    F: Fn(&MomentVector) -> Result<[f64; K]> + Sync + Send,
{
    let plan: Vec<(u64, u64)> = mc::blocks(samples, mc::BLOCK_SIZE).collect();
    let parts = exec.map_blocks(plan.len(), |i| {
        let (b, len) = plan[i];
        let mut rng = mc::block_rng(seed, b);
        let mut stats = [RunningStats::default(); K];
        let mut failures = 0u64;
        for _ in 0..len {
            let q = sample_uniform_one(&mut rng, n);
            match f(&q) {
                Ok(v) => stats.iter_mut().zip(v).for_each(|(s, x)| s.push(x)),
                Err(_) => failures += 1,
            }
        }
        (stats, failures)
    });
    let mut total = [RunningStats::default(); K];
    let mut failures = 0;
    for (s, fl) in &parts {
        total.iter_mut().zip(s).for_each(|(t, s)| t.merge(s));
        failures += fl;
    }
    if failures as f64 > FAILURE_BUDGET * samples as f64 {
        return Err(Error::SolverFailureBudgetExceeded {
            failures,
            draws: samples,
        });
    }
    Ok(total.map(|s| ExperimentReport {
        samples: s.count,
        estimate: s.mean,
        stderr: s.stderr(),
        failures,
    }))
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// P(maximal mass at t* ≥ ε) under the uniform prior; equals (1 − ε)ⁿ.
pub fn event_rate_mass_sup<E: Executor + ?Sized>(
    exec: &E,
    cfg: &BrittlenessConfig,
    tstar: f64,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    let [r] = run_draws(exec, cfg.n, cfg.samples, cfg.seed, |q| {
        Ok([indicator(maximal_mass(q, tstar)? >= cfg.epsilon)])
    })?;
    Ok(r)
}

/// P(the lower principal representation puts no node in B_δ(t*)), a
/// witness that the infimum mass in the ball is zero; at least 1 − h(δ).
pub fn event_rate_mass_inf<E: Executor + ?Sized>(
    exec: &E,
    cfg: &BrittlenessConfig,
    tstar: f64,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    if !(cfg.delta < tstar.min(1.0 - tstar)) {
        return Err(Error::Domain("ball B_delta(t*) must stay inside (0, 1)"));
    }
    let [r] = run_draws(exec, cfg.n, cfg.samples, cfg.seed, |q| {
        let mu = principal_representation(q, Side::Lower)?;
        Ok([indicator(!mu.intersects_ball(tstar, cfg.delta))])
    })?;
    Ok(r)
}

/// P(q₁ > 1 − δ′), exactly I_{δ′}(n, n).
pub fn event_rate_first_moment<E: Executor + ?Sized>(
    exec: &E,
    cfg: &BrittlenessConfig,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    if cfg.delta_prime > 0.5 {
        return Err(Error::Domain("delta' must be at most 1/2"));
    }
    let [r] = run_draws(exec, cfg.n, cfg.samples, cfg.seed, |q| {
        Ok([indicator(q.q(1) > 1.0 - cfg.delta_prime)])
    })?;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    /// E[θ̂] − 3σ > 0: the worst-case posterior mean is at least λ.
    LowerBoundCertified,
    Inconclusive,
}

/// Rates of the three events, estimated on the certificate's draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventRates {
    /// Maximal mass at d is ≥ ε.
    pub mass_sup: ExperimentReport,
    /// Lower principal representation avoids B_δ(d).
    pub mass_inf: ExperimentReport,
    /// q₁ > 1 − δ′.
    pub first_moment: ExperimentReport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateReport {
    /// E[θ̂]
    pub estimate: f64,
    pub stderr: f64,
    pub event_rates: EventRates,
    /// E[q₁] under the prior; ½ for every n.
    pub prior: ExperimentReport,
    /// λ = 1 − 2δ′, the certified posterior lower bound.
    pub lambda: f64,
    pub conclusion: Conclusion,
}

/// Estimates E[θ̂] with
///
/// θ̂(q) = (q₁ − λ) · maximal_mass(q, d)                   if q₁ > λ,
/// θ̂(q) = (q₁ − λ) · 𝟙[lower principal rep meets B_δ(d)]  otherwise,
///
/// a pointwise lower bound for sup_μ (q₁ − λ) μ(B_δ(d)).
pub fn brittleness_certificate<E: Executor + ?Sized>(
    exec: &E,
    cfg: &BrittlenessConfig,
) -> Result<CertificateReport> {
    cfg.validate()?;
    let lambda = cfg.lambda();
    let [theta, sup, inf, fm, prior] = run_draws(exec, cfg.n, cfg.samples, cfg.seed, |q| {
        let q1 = q.q(1);
        let mass = maximal_mass(q, cfg.d)?;
        let meets = principal_representation(q, Side::Lower)?.intersects_ball(cfg.d, cfg.delta);
        let theta = if q1 > lambda {
            (q1 - lambda) * mass
        } else {
            (q1 - lambda) * indicator(meets)
        };
        Ok([
            theta,
            indicator(mass >= cfg.epsilon),
            indicator(!meets),
            indicator(q1 > 1.0 - cfg.delta_prime),
            q1,
        ])
    })?;
    let conclusion = if theta.estimate - 3.0 * theta.stderr > 0.0 {
        Conclusion::LowerBoundCertified
    } else {
        Conclusion::Inconclusive
    };
    Ok(CertificateReport {
        estimate: theta.estimate,
        stderr: theta.stderr,
        event_rates: EventRates {
            mass_sup: sup,
            mass_inf: inf,
            first_moment: fm,
        },
        prior,
        lambda,
        conclusion,
    })
}
