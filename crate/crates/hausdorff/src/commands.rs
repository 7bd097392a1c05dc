//! Subcommands: argument definitions and the tables they produce.

use clap::{Args, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use hausdorff_core::brittleness::{
    bound_closed_form, brittleness_certificate, solve_delta, BrittlenessConfig, Conclusion,
};
use hausdorff_core::jacobians::{canonical_volume_identity, volume_by_cov, JacobianKind, Method};
use hausdorff_core::moments::{moments_of, volume, volume_mc, MomentVector};
use hausdorff_core::poly::{legendre_assoc2, legendre_assoc2_eval};
use hausdorff_core::quadrature::gauss_legendre;
use hausdorff_core::representations::{
    canonical_representation, principal_representation, Flavor, Side,
};
use hausdorff_core::rkhs::{
    cd_kernel, cd_kernel_direct, compare_kernels, q_moment_integral, reproduce, reproduce_even,
    verify_biorthogonality,
};
use hausdorff_core::selberg::{
    selberg_closed, selberg_numeric, verify_new_identity_even, verify_new_identity_odd,
    verify_volume_consistency, SelbergMethod, SelbergParams,
};

use crate::checks;
use crate::exec::Rayon;
use crate::output::{Cell, Table};
use crate::CliError;

/// Parses counts such as `1000000` or `1e6`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if v >= 1.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a positive whole number"))
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Volume of the moment space Mⁿ.
    Volume(VolumeArgs),
    /// Principal or canonical representing measure of a moment vector.
    Represent(RepresentArgs),
    /// Selberg integrals and the identities built from them.
    Selberg(SelbergArgs),
    /// Reproducing kernels, Legendre tables and the biorthogonal system.
    Rkhs(RkhsArgs),
    /// Monte-Carlo brittleness certificate, or a sweep over δ.
    Brittleness(BrittlenessArgs),
    /// Runs one acceptance check (1-15), or all of them with `--id 0`.
    Check(CheckArgs),
}

impl Command {
    pub fn run(&self, exec: &Rayon, seed: u64) -> Result<Table, CliError> {
        match self {
            Command::Volume(a) => a.run(exec, seed),
            Command::Represent(a) => a.run(),
            Command::Selberg(a) => a.run(exec, seed),
            Command::Rkhs(a) => a.run(seed),
            Command::Brittleness(a) => a.run(exec, seed),
            Command::Check(a) => a.run(exec, seed),
        }
    }
}

fn blank() -> Cell {
    Cell::Text(String::new())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeMethod {
    /// Γ-product formula.
    Closed,
    /// Membership Monte Carlo over the unit box.
    Mc,
    /// Change of variables through the lower principal map.
    CovLower,
    /// Change of variables through the upper principal map.
    CovUpper,
    /// Change of variables through the canonical maps at `--tstar`.
    Canonical,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VolumeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = VolumeMethod::Closed)]
    pub method: VolumeMethod,
    #[arg(long)]
    pub tstar: Option<f64>,
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub samples: u64,
    /// Gauss–Legendre points per axis.
    #[arg(long, default_value_t = 32)]
    pub order: usize,
}

impl VolumeArgs {
    fn run(&self, exec: &Rayon, seed: u64) -> Result<Table, CliError> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        let expected = volume(n);
        let mut tstar = blank();
        let report = match self.method {
            VolumeMethod::Closed => hausdorff_core::ExperimentReport::exact(expected),
            VolumeMethod::Mc => volume_mc(exec, n, self.samples, seed),
            VolumeMethod::CovLower | VolumeMethod::CovUpper => {
                let lower = self.method == VolumeMethod::CovLower;
                let (kind, m) = match (n % 2 == 1, lower) {
                    (true, true) => (JacobianKind::Pol, n.div_ceil(2)),
                    (true, false) => (JacobianKind::Pou, n.div_ceil(2)),
                    (false, true) => (JacobianKind::Pel, n / 2),
                    (false, false) => (JacobianKind::Peu, n / 2),
                };
                volume_by_cov(exec, kind, m, Method::Quadrature { order: self.order })?
            }
            VolumeMethod::Canonical => {
                let ts = self
                    .tstar
                    .ok_or_else(|| CliError::Usage("--method canonical needs --tstar".into()))?;
                tstar = ts.into();
                let rule = gauss_legendre(self.order);
                hausdorff_core::ExperimentReport::exact(canonical_volume_identity(n, ts, &rule)?)
            }
        };
        let mut t = Table::new(&[
            "n", "method", "tstar", "estimate", "stderr", "expected", "residual",
        ]);
        let method = self
            .method
            .to_possible_value()
            .map(|v| v.get_name().to_owned());
        t.push(vec![
            n.into(),
            method.unwrap_or_default().into(),
            tstar,
            report.estimate.into(),
            report.stderr.into(),
            expected.into(),
            rel(report.estimate, expected).into(),
        ]);
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentKind {
    PrincipalLower,
    PrincipalUpper,
    Canonical,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RepresentArgs {
    /// Moments q₁,…,qₙ, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub q: Vec<f64>,
    #[arg(long, value_enum, default_value_t = RepresentKind::PrincipalLower)]
    pub kind: RepresentKind,
    #[arg(long)]
    pub tstar: Option<f64>,
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::PrincipalLower => "principal-lower",
        Flavor::PrincipalUpper => "principal-upper",
        Flavor::CanonicalLower => "canonical-lower",
        Flavor::CanonicalUpper => "canonical-upper",
    }
}

impl RepresentArgs {
    fn run(&self) -> Result<Table, CliError> {
        let q = MomentVector::new(self.q.clone())?;
        let (mu, name) = match self.kind {
            RepresentKind::PrincipalLower => (
                principal_representation(&q, Side::Lower)?,
                "principal-lower",
            ),
            RepresentKind::PrincipalUpper => (
                principal_representation(&q, Side::Upper)?,
                "principal-upper",
            ),
            RepresentKind::Canonical => {
                let ts = self
                    .tstar
                    .ok_or_else(|| CliError::Usage("--kind canonical needs --tstar".into()))?;
                let r = canonical_representation(&q, ts)?;
                (r.measure, flavor_name(r.kind.flavor))
            }
        };
        let residual = moments_of(&mu, q.order()).sup_distance(&q);
        let index = mu.krein_index().to_string();
        let mut t = Table::new(&["kind", "index", "residual", "node", "weight"]);
        for (&x, &w) in mu.nodes().iter().zip(mu.weights()) {
            t.push(vec![
                name.into(),
                index.clone().into(),
                residual.into(),
                x.into(),
                w.into(),
            ]);
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelbergVerify {
    /// Closed form only.
    Closed,
    /// Quadrature (n ≤ 3) or Monte Carlo against the closed form.
    Numeric,
    /// The two weighted identities and the volume identities at `--m`.
    Identities,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelbergArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = SelbergVerify::Closed)]
    pub verify: SelbergVerify,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub samples: u64,
}

impl SelbergArgs {
    fn run(&self, exec: &Rayon, seed: u64) -> Result<Table, CliError> {
        let mut t = Table::new(&[
            "check", "n", "alpha", "beta", "gamma", "estimate", "stderr", "expected", "residual",
        ]);
        match self.verify {
            SelbergVerify::Closed | SelbergVerify::Numeric => {
                let p = SelbergParams::new(self.n, self.alpha, self.beta, self.gamma)?;
                let closed = selberg_closed(&p);
                let (name, r) = if self.verify == SelbergVerify::Closed {
                    ("closed", hausdorff_core::ExperimentReport::exact(closed))
                } else {
                    let method = SelbergMethod::auto(self.n, self.order, self.samples, seed);
                    ("numeric", selberg_numeric(exec, &p, None, method)?)
                };
                t.push(vec![
                    name.into(),
                    self.n.into(),
                    self.alpha.into(),
                    self.beta.into(),
                    self.gamma.into(),
                    r.estimate.into(),
                    r.stderr.into(),
                    closed.into(),
                    rel(r.estimate, closed).into(),
                ]);
            }
            SelbergVerify::Identities => {
                let m = self
                    .m
                    .ok_or_else(|| CliError::Usage("--verify identities needs --m".into()))?;
                if m == 0 {
                    return Err(CliError::Usage("--m must be at least 1".into()));
                }
                let method = SelbergMethod::auto(m, self.order, self.samples, seed);
                let odd = verify_new_identity_odd(exec, m, method)?;
                let even = verify_new_identity_even(exec, m, method)?;
                for (name, c, (a, b)) in [("odd", odd, (3.0, 3.0)), ("even", even, (3.0, 1.0))] {
                    t.push(vec![
                        name.into(),
                        m.into(),
                        a.into(),
                        b.into(),
                        2.0.into(),
                        c.lhs.estimate.into(),
                        c.lhs.stderr.into(),
                        c.rhs.into(),
                        c.residual.into(),
                    ]);
                }
                let v = verify_volume_consistency(m)?;
                for (name, r) in [
                    ("volume-lower-upper", v.lower_upper),
                    ("volume-reflection", v.reflection),
                ] {
                    let mut row = vec![name.into(), m.into()];
                    row.extend((0..6).map(|_| blank()));
                    row.push(r.into());
                    t.push(row);
                }
            }
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RkhsCheck {
    /// φ(t*) = ∫ φ Ĥ̄(t*, ·) over the Q-basis at 10 random t*.
    Reproduce,
    /// The even-order analogue with the kernel Ĝ̄.
    ReproduceEven,
    /// Table of h̃ₖ against ΣQⱼ.
    Biorthogonal,
    /// ∫ rʲ Qₖ in closed form against quadrature, j, k ≤ 8.
    LegendreTable,
    /// Christoffel–Darboux formula against the direct sum on a grid.
    CdKernel,
    /// The marginal kernel 𝒦 against the Christoffel–Darboux kernel.
    MarginalKernel,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RkhsArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum)]
    pub check: RkhsCheck,
    /// Grid size for kernel checks.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Random t* values for the reproducing checks.
    #[arg(long, default_value_t = 10)]
    pub draws: usize,
}

impl RkhsArgs {
    fn run(&self, seed: u64) -> Result<Table, CliError> {
        let m = self.m;
        let grid = |n: usize| (0..n).map(move |i| (i as f64 + 0.5) / n as f64);
        match self.check {
            RkhsCheck::Reproduce | RkhsCheck::ReproduceEven => {
                let even = self.check == RkhsCheck::ReproduceEven;
                let top = if even { 2 * m } else { 2 * m - 1 };
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut t = Table::new(&["m", "k", "tstar", "value", "expected", "residual"]);
                for _ in 0..self.draws {
                    let ts: f64 = rng.random();
                    for k in 2..=top {
                        let q = legendre_assoc2(k)?;
                        let r = if even {
                            reproduce_even(&q, ts, m)?
                        } else {
                            reproduce(&q, ts, m)?
                        };
                        t.push(vec![
                            m.into(),
                            k.into(),
                            ts.into(),
                            r.value.into(),
                            q.eval(ts).into(),
                            r.residual.into(),
                        ]);
                    }
                }
                Ok(t)
            }
            RkhsCheck::Biorthogonal => {
                let mut t = Table::new(&["m", "j", "k", "value", "expected", "residual"]);
                for e in verify_biorthogonality(m, 4 * m + 8)? {
                    t.push(vec![
                        m.into(),
                        e.j.into(),
                        e.k.into(),
                        e.value.into(),
                        e.expected.into(),
                        e.residual.into(),
                    ]);
                }
                Ok(t)
            }
            RkhsCheck::LegendreTable => {
                let rule = gauss_legendre(16);
                let mut t = Table::new(&["j", "k", "closed", "quadrature", "error"]);
                for k in 2..=8 {
                    for j in 0..=8 {
                        let closed = q_moment_integral(j, k)?;
                        let quad =
                            rule.integrate(|r| r.powi(j as i32) * legendre_assoc2_eval(k, r));
                        t.push(vec![
                            j.into(),
                            k.into(),
                            closed.into(),
                            quad.into(),
                            (closed - quad).abs().into(),
                        ]);
                    }
                }
                Ok(t)
            }
            RkhsCheck::CdKernel => {
                let pts: Vec<f64> = grid(self.points).collect();
                let mut t = Table::new(&["m", "r1", "r2", "cd_kernel", "direct", "error"]);
                for (i, &a) in pts.iter().enumerate() {
                    for &b in &pts[i..] {
                        let (k, d) = (cd_kernel(m, a, b)?, cd_kernel_direct(m, a, b)?);
                        t.push(vec![
                            m.into(),
                            a.into(),
                            b.into(),
                            k.into(),
                            d.into(),
                            (k - d).abs().into(),
                        ]);
                    }
                }
                Ok(t)
            }
            RkhsCheck::MarginalKernel => {
                let c = compare_kernels(m, self.points)?;
                let mut t = Table::new(&["m", "points", "min_eigenvalue", "max_abs_difference"]);
                t.push(vec![
                    m.into(),
                    self.points.into(),
                    c.min_eigenvalue.into(),
                    c.max_abs_difference.into(),
                ]);
                Ok(t)
            }
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BrittlenessArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "delta-prime")]
    pub delta_prime: f64,
    /// Data precision; defaults to the largest δ the closed-form bound
    /// certifies for δ′.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub samples: u64,
    /// Sweep δ over a log-spaced grid instead of a single certificate.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    #[arg(long = "sweep-min", default_value_t = 1e-10)]
    pub sweep_min: f64,
    #[arg(long = "sweep-max", default_value_t = 0.5)]
    pub sweep_max: f64,
}

fn conclusion_name(c: Conclusion) -> &'static str {
    match c {
        Conclusion::LowerBoundCertified => "certified",
        Conclusion::Inconclusive => "inconclusive",
    }
}

impl BrittlenessArgs {
    fn run(&self, exec: &Rayon, seed: u64) -> Result<Table, CliError> {
        if self.sweep {
            return self.sweep(exec, seed);
        }
        let delta = match self.delta {
            Some(d) => d,
            None => solve_delta(self.n, self.delta_prime)?,
        };
        let cfg = BrittlenessConfig::new(self.n, self.delta_prime, delta, self.samples, seed)?;
        let c = brittleness_certificate(exec, &cfg)?;
        let mut t = Table::new(&[
            "n",
            "delta_prime",
            "delta",
            "lambda",
            "bound",
            "estimate",
            "stderr",
            "conclusion",
            "prior",
            "prior_stderr",
            "rate_mass_sup",
            "rate_mass_inf",
            "rate_first_moment",
            "failures",
        ]);
        t.push(vec![
            self.n.into(),
            self.delta_prime.into(),
            delta.into(),
            c.lambda.into(),
            bound_closed_form(self.n, delta)?.into(),
            c.estimate.into(),
            c.stderr.into(),
            conclusion_name(c.conclusion).into(),
            c.prior.estimate.into(),
            c.prior.stderr.into(),
            c.event_rates.mass_sup.estimate.into(),
            c.event_rates.mass_inf.estimate.into(),
            c.event_rates.first_moment.estimate.into(),
            c.prior.failures.into(),
        ]);
        Ok(t)
    }

    fn sweep(&self, exec: &Rayon, seed: u64) -> Result<Table, CliError> {
        if self.points < 2 || !(0.0 < self.sweep_min && self.sweep_min < self.sweep_max) {
            return Err(CliError::Usage(
                "sweep needs --points >= 2 and 0 < min < max".into(),
            ));
        }
        let (lo, hi) = (self.sweep_min.ln(), self.sweep_max.ln());
        let mut t = Table::new(&[
            "n",
            "delta_prime",
            "delta",
            "bound",
            "estimate",
            "stderr",
            "conclusion",
        ]);
        for i in 0..self.points {
            let delta = (lo + (hi - lo) * i as f64 / (self.points - 1) as f64).exp();
            let cfg = BrittlenessConfig::new(self.n, self.delta_prime, delta, self.samples, seed)?;
            let c = brittleness_certificate(exec, &cfg)?;
            t.push(vec![
                self.n.into(),
                self.delta_prime.into(),
                delta.into(),
                bound_closed_form(self.n, delta)?.into(),
                c.estimate.into(),
                c.stderr.into(),
                conclusion_name(c.conclusion).into(),
            ]);
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    /// Criterion number 1-15; 0 runs all.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=15))]
    pub id: u8,
}

impl CheckArgs {
    fn run(&self, exec: &Rayon, seed: u64) -> Result<Table, CliError> {
        let ids: Vec<u8> = if self.id == 0 {
            (1..=15).collect()
        } else {
            vec![self.id]
        };
        let mut t = Table::new(&[
            "criterion",
            "check",
            "value",
            "expected",
            "error",
            "tolerance",
            "pass",
        ]);
        for id in ids {
            for r in checks::run(exec, id, seed)? {
                let pass = r.pass();
                t.push(vec![
                    (id as usize).into(),
                    r.name.into(),
                    r.value.into(),
                    r.expected.into(),
                    r.error.into(),
                    r.tolerance.into(),
                    pass.into(),
                ]);
            }
        }
        Ok(t)
    }
}
