//! Acceptance checks runnable from the command line.
//!
//! Each check returns rows of (value, expected, error, tolerance); a row
//! passes when `error <= tolerance`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hausdorff_core::brittleness::{
    bound_closed_form, brittleness_certificate, event_rate_mass_sup, mass_sup_law, solve_delta,
    BrittlenessConfig,
};
use hausdorff_core::inequalities::{
    beta_inequality_grid, beta_inequality_slack, power_inequality_slack,
};
use hausdorff_core::jacobians::{
    canonical_volume_identity, jacobian_closed_form, jacobian_numeric, volume_by_cov,
    weight_factor, JacobianKind, Method,
};
use hausdorff_core::mc::Executor;
use hausdorff_core::moments::{moments_of, sample_uniform, sample_uniform_one, volume, volume_mc};
use hausdorff_core::poly::{legendre_assoc2, legendre_assoc2_eval, legendre_shifted_derivs};
use hausdorff_core::quadrature::gauss_legendre;
use hausdorff_core::representations::{canonical_representation, principal_representation, Side};
use hausdorff_core::rkhs::{q_moment_integral, q_norm_squared, reproduce, verify_biorthogonality};
use hausdorff_core::selberg::{
    selberg_closed, selberg_numeric, verify_new_identity_even, verify_new_identity_odd,
    verify_volume_consistency, SelbergMethod, SelbergParams,
};
use hausdorff_core::special::incomplete_beta_int;
use hausdorff_core::{DiscreteMeasure, Error, MomentVector, SimplexPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub error: f64,
    pub tolerance: f64,
}

impl CheckRow {
    fn new(name: impl Into<String>, value: f64, expected: f64, error: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            expected,
            error,
            tolerance,
        }
    }

    fn relative(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        let err = ((value - expected) / expected).abs();
        Self::new(name, value, expected, err, tolerance)
    }

    /// Row that passes when `value >= 0`.
    fn nonnegative(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, 0.0, (-value).max(0.0), 0.0)
    }

    pub fn pass(&self) -> bool {
        self.error <= self.tolerance
    }
}

const SIGMAS: f64 = 3.0;

fn z_row(name: String, r: &hausdorff_core::ExperimentReport, expected: f64) -> CheckRow {
    CheckRow::new(
        name,
        r.estimate,
        expected,
        r.z_score(expected).abs(),
        SIGMAS,
    )
}

/// Runs criterion `id` (1-15).
pub fn run<E: Executor>(exec: &E, id: u8, seed: u64) -> Result<Vec<CheckRow>, Error> {
    let seed = seed.wrapping_add(1000 * u64::from(id));
    match id {
        1 => volume_mc_rows(exec, seed),
        2 => cov_rows(exec),
        3 => canonical_invariance_rows(),
        4 => selberg_rows(exec, seed),
        5 => identity_rows(exec),
        6 => consistency_rows(),
        7 => jacobian_rows(seed),
        8 => representation_rows(seed),
        9 => mass_sup_rows(exec, seed),
        10 => beta_marginal_rows(exec, seed),
        11 => legendre_rows(),
        12 => reproduce_rows(seed),
        13 => biorthogonal_rows(),
        14 => brittleness_rows(exec, seed),
        15 => Ok(inequality_rows()),
        _ => Err(Error::Domain("criterion id must be in 1..=15")),
    }
}

fn volume_mc_rows<E: Executor>(exec: &E, seed: u64) -> Result<Vec<CheckRow>, Error> {
    Ok((2..=4)
        .map(|n| {
            z_row(
                format!("mc volume n={n}"),
                &volume_mc(exec, n, 1_000_000, seed + n as u64),
                volume(n),
            )
        })
        .collect())
}

fn cov_rows<E: Executor>(exec: &E) -> Result<Vec<CheckRow>, Error> {
    let mut rows = Vec::new();
    for kind in JacobianKind::ALL.into_iter().filter(|k| !k.is_canonical()) {
        for m in 1..=2 {
            let r = volume_by_cov(exec, kind, m, Method::Quadrature { order: 32 })?;
            let n = kind.order(m);
            rows.push(CheckRow::relative(
                format!("{} m={m}", kind.name()),
                r.estimate,
                volume(n),
                1e-8,
            ));
        }
    }
    Ok(rows)
}

fn canonical_invariance_rows() -> Result<Vec<CheckRow>, Error> {
    let rule = gauss_legendre(32);
    let mut rows = Vec::new();
    for (n, tol) in [(3, 1e-8), (4, 1e-6)] {
        let vals = (1..=9)
            .map(|i| canonical_volume_identity(n, i as f64 / 10.0, &rule))
            .collect::<Result<Vec<_>, _>>()?;
        let v = volume(n);
        let worst = vals.iter().map(|x| ((x - v) / v).abs()).fold(0.0, f64::max);
        rows.push(CheckRow::new(
            format!("canonical volume n={n}, t* in 0.1..0.9"),
            vals[4],
            v,
            worst,
            tol,
        ));
    }
    Ok(rows)
}

fn selberg_rows<E: Executor>(exec: &E, seed: u64) -> Result<Vec<CheckRow>, Error> {
    let q = SelbergMethod::Quadrature { order: 64 };
    let p = SelbergParams::new(2, 1.0, 1.0, 2.0)?;
    let s = selberg_numeric(exec, &p, None, q)?.estimate;
    let mut rows = vec![CheckRow::new(
        "S_2(1,1,2)",
        s,
        1.0 / 15.0,
        (s - 1.0 / 15.0).abs(),
        1e-12,
    )];
    let shapes = [1.0, 2.0, 3.0, 5.0];
    for n in 1..=3 {
        let mut worst = (0.0, 0.0, 0.0);
        for &a in &shapes {
            for &b in &shapes {
                for g in [1.0, 2.0] {
                    let p = SelbergParams::new(n, a, b, g)?;
                    let (num, cf) = (
                        selberg_numeric(exec, &p, None, q)?.estimate,
                        selberg_closed(&p),
                    );
                    let err = ((num - cf) / cf).abs();
                    if err >= worst.2 {
                        worst = (num, cf, err);
                    }
                }
            }
        }
        rows.push(CheckRow::new(
            format!("grid n={n}, worst case"),
            worst.0,
            worst.1,
            worst.2,
            1e-10,
        ));
    }
    for (i, (a, b, g)) in [(1.0, 1.0, 1.0), (2.0, 3.0, 1.0), (2.0, 2.0, 2.0)]
        .into_iter()
        .enumerate()
    {
        let p = SelbergParams::new(4, a, b, g)?;
        let mc = SelbergMethod::MonteCarlo {
            samples: 1_000_000,
            seed: seed + i as u64,
        };
        let r = selberg_numeric(exec, &p, None, mc)?;
        rows.push(z_row(
            format!("S_4({a},{b},{g}) monte carlo"),
            &r,
            selberg_closed(&p),
        ));
    }
    Ok(rows)
}

fn identity_rows<E: Executor>(exec: &E) -> Result<Vec<CheckRow>, Error> {
    let mut rows = Vec::new();
    for (m, tol) in [(1, 1e-14), (2, 1e-8), (3, 1e-6)] {
        let q = SelbergMethod::Quadrature { order: 32 };
        let odd = verify_new_identity_odd(exec, m, q)?;
        let even = verify_new_identity_even(exec, m, q)?;
        rows.push(CheckRow::new(
            format!("odd identity m={m}"),
            odd.lhs.estimate,
            odd.rhs,
            odd.residual,
            tol,
        ));
        rows.push(CheckRow::new(
            format!("even identity m={m}"),
            even.lhs.estimate,
            even.rhs,
            even.residual,
            tol,
        ));
    }
    Ok(rows)
}

fn consistency_rows() -> Result<Vec<CheckRow>, Error> {
    let (mut lu, mut refl) = (0.0f64, 0.0f64);
    for m in 1..=10 {
        let v = verify_volume_consistency(m)?;
        lu = lu.max(v.lower_upper);
        refl = refl.max(v.reflection);
    }
    Ok(vec![
        CheckRow::new("lower/upper volume, m <= 10", lu, 0.0, lu, 1e-13),
        CheckRow::new("alpha/beta reflection, m <= 10", refl, 0.0, refl, 1e-13),
    ])
}

fn random_simplex(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..=dim).map(|_| -rng.random::<f64>().ln()).collect();
    let s: f64 = e.iter().sum();
    e[..dim].iter().map(|x| x / s).collect()
}

fn random_nodes(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut t: Vec<f64> = (0..len).map(|_| rng.random()).collect();
    t.sort_by(f64::total_cmp);
    t
}

fn reflect(t: &[f64]) -> Vec<f64> {
    t.iter().rev().map(|x| 1.0 - x).collect()
}

fn jacobian_rows(seed: u64) -> Result<Vec<CheckRow>, Error> {
    use JacobianKind::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let kind = JacobianKind::ALL[i % 8];
        let m = 1 + (i / 8) % 4;
        let lam = random_simplex(&mut rng, kind.lambda_dim(m));
        let t = random_nodes(&mut rng, kind.t_dim(m));
        let ts = kind.is_canonical().then(|| rng.random::<f64>());
        let num = jacobian_numeric(kind, ts, &SimplexPoint::new(lam.clone())?, &t)?;
        let cf = jacobian_closed_form(kind, ts, &t)? * weight_factor(kind, &lam);
        worst = worst.max(((num - cf) / cf).abs());
    }
    let mut rows = vec![CheckRow::new(
        "numeric vs closed form, 200 points",
        worst,
        0.0,
        worst,
        1e-5,
    )];

    let rel = |a: f64, b: f64| {
        if a == b {
            0.0
        } else {
            (a - b).abs() / a.abs().max(b.abs())
        }
    };
    let (mut sym, mut ends) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let m = rng.random_range(1..=4);
        let tm = random_nodes(&mut rng, m);
        let tl = &tm[..m - 1];
        let ts: f64 = rng.random();
        let j = |k, s, x: &[f64]| jacobian_closed_form(k, s, x);
        sym = sym
            .max(rel(j(Pol, None, &tm)?, j(Pol, None, &reflect(&tm))?))
            .max(rel(j(Pou, None, tl)?, j(Pou, None, &reflect(tl))?))
            .max(rel(j(Pel, None, &reflect(&tm))?, j(Peu, None, &tm)?))
            .max(rel(
                j(Cou, Some(ts), tl)?,
                j(Col, Some(1.0 - ts), &reflect(tl))?,
            ));
        ends = ends
            .max(j(Col, Some(0.0), tl)?.abs())
            .max(rel(j(Cou, Some(0.0), tl)?, j(Pou, None, tl)?))
            .max(rel(j(Cel, Some(0.0), &tm)?, j(Pel, None, &tm)?))
            .max(j(Ceu, Some(0.0), &tm)?.abs())
            .max(rel(j(Col, Some(1.0), tl)?, j(Pou, None, tl)?))
            .max(j(Cou, Some(1.0), tl)?.abs())
            .max(rel(j(Cel, Some(1.0), &tm)?, j(Peu, None, &tm)?))
            .max(j(Ceu, Some(1.0), &tm)?.abs());
    }
    rows.push(CheckRow::new("reflection symmetries", sym, 0.0, sym, 1e-12));
    rows.push(CheckRow::new(
        "endpoint degenerations",
        ends,
        0.0,
        ends,
        1e-12,
    ));
    Ok(rows)
}

/// Sup distance between atoms of `a` and their nearest atoms in `b`, plus
/// the mass of atoms in `b` that nothing in `a` claims.
fn measure_distance(a: &DiscreteMeasure, b: &DiscreteMeasure) -> f64 {
    let mut claimed = vec![false; b.len()];
    let mut worst = 0.0f64;
    for (&x, &w) in a.nodes().iter().zip(a.weights()) {
        let (i, _) = b
            .nodes()
            .iter()
            .enumerate()
            .min_by(|p, q| (p.1 - x).abs().total_cmp(&(q.1 - x).abs()))
            .expect("measures are nonempty");
        claimed[i] = true;
        worst = worst
            .max((b.nodes()[i] - x).abs())
            .max((b.weights()[i] - w).abs());
    }
    let spare: f64 = b
        .weights()
        .iter()
        .zip(&claimed)
        .filter(|(_, c)| !**c)
        .map(|(w, _)| w)
        .sum();
    worst.max(spare)
}

fn representation_rows(seed: u64) -> Result<Vec<CheckRow>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for n in 1..=8 {
        let qs: Vec<MomentVector> = (0..1000).map(|_| sample_uniform_one(&mut rng, n)).collect();
        let mut worst = [0.0f64; 3];
        for q in &qs {
            let reps = [
                principal_representation(q, Side::Lower)?,
                principal_representation(q, Side::Upper)?,
                canonical_representation(q, rng.random())?.measure,
            ];
            for (w, mu) in worst.iter_mut().zip(&reps) {
                *w = w.max(moments_of(mu, n).sup_distance(q));
            }
        }
        for (name, w) in ["principal-lower", "principal-upper", "canonical"]
            .iter()
            .zip(worst)
        {
            rows.push(CheckRow::new(
                format!("round trip n={n} {name}"),
                w,
                0.0,
                w,
                1e-10,
            ));
        }
    }
    // Continuity at the endpoints: t* → 0 meets the principal representation
    // containing 0, t* → 1 the one containing 1.
    let mut worst = 0.0f64;
    for n in 1..=6 {
        let q = sample_uniform_one(&mut rng, n);
        let at0 = if n % 2 == 1 { Side::Upper } else { Side::Lower };
        let p0 = principal_representation(&q, at0)?;
        let p1 = principal_representation(&q, Side::Upper)?;
        let c0 = canonical_representation(&q, 1e-6)?.measure;
        let c1 = canonical_representation(&q, 1.0 - 1e-6)?.measure;
        worst = worst
            .max(measure_distance(&p0, &c0))
            .max(measure_distance(&p1, &c1));
    }
    rows.push(CheckRow::new(
        "continuity at t* = 1e-6, 1 - 1e-6",
        worst,
        0.0,
        worst,
        1e-4,
    ));
    Ok(rows)
}

fn mass_sup_rows<E: Executor>(exec: &E, seed: u64) -> Result<Vec<CheckRow>, Error> {
    let mut rows = Vec::new();
    let mut s = seed;
    for n in [2, 3] {
        for eps in [0.1, 0.3, 0.5] {
            for ts in [0.25, 0.5] {
                s += 1;
                let mut cfg = BrittlenessConfig::new(n, 0.1, 0.01, 100_000, s)?;
                cfg.epsilon = eps;
                let r = event_rate_mass_sup(exec, &cfg, ts)?;
                rows.push(z_row(
                    format!("n={n} eps={eps} t*={ts}"),
                    &r,
                    mass_sup_law(n, eps),
                ));
            }
        }
    }
    Ok(rows)
}

/// Asymptotic 1% critical value of the Kolmogorov distribution.
const KS_CRITICAL_1PCT: f64 = 1.6276;

fn beta_marginal_rows<E: Executor>(exec: &E, seed: u64) -> Result<Vec<CheckRow>, Error> {
    let draws = 100_000;
    let mut rows = Vec::new();
    for n in 2..=4 {
        let mut x: Vec<f64> = sample_uniform(exec, n, draws, seed + n as u64)
            .iter()
            .map(|q| q.q(1))
            .collect();
        x.sort_by(f64::total_cmp);
        let len = x.len() as f64;
        let d = x
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let f = incomplete_beta_int(n, n, v);
                (f - i as f64 / len).max((i + 1) as f64 / len - f)
            })
            .fold(0.0, f64::max);
        rows.push(CheckRow::new(
            format!("KS q1 ~ Beta({n},{n})"),
            d,
            0.0,
            d,
            KS_CRITICAL_1PCT / len.sqrt(),
        ));
    }
    Ok(rows)
}

fn legendre_rows() -> Result<Vec<CheckRow>, Error> {
    let rule = gauss_legendre(16);
    let mut table = 0.0f64;
    for k in 2..=8 {
        let q = legendre_assoc2(k)?;
        for j in 0..=8 {
            let quad = rule.integrate(|r| r.powi(j as i32) * q.eval(r));
            table = table.max((q_moment_integral(j, k)? - quad).abs());
        }
    }
    let mut orth = 0.0f64;
    for j in 2..=8 {
        for k in 2..=8 {
            let ip = rule.integrate(|r| legendre_assoc2_eval(j, r) * legendre_assoc2_eval(k, r));
            let want = if j == k { q_norm_squared(k) } else { 0.0 };
            orth =
                orth.max((ip - want).abs() / q_norm_squared(j).sqrt() / q_norm_squared(k).sqrt());
        }
    }
    // Shifted Legendre orthogonality on the same rule.
    let mut plain = 0.0f64;
    for j in 0..=8 {
        for k in 0..=8 {
            let ip = rule
                .integrate(|r| legendre_shifted_derivs(j, r)[0] * legendre_shifted_derivs(k, r)[0]);
            let want = if j == k {
                1.0 / (2 * k + 1) as f64
            } else {
                0.0
            };
            plain = plain.max((ip - want).abs());
        }
    }
    Ok(vec![
        CheckRow::new("integral table j,k <= 8", table, 0.0, table, 1e-10),
        CheckRow::new("Q orthogonality j,k <= 8", orth, 0.0, orth, 1e-10),
        CheckRow::new("shifted Legendre orthogonality", plain, 0.0, plain, 1e-10),
    ])
}

fn reproduce_rows(seed: u64) -> Result<Vec<CheckRow>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for m in 2..=3 {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let ts: f64 = rng.random();
            for k in 2..2 * m {
                worst = worst.max(reproduce(&legendre_assoc2(k)?, ts, m)?.residual);
            }
        }
        rows.push(CheckRow::new(
            format!("reproducing identity m={m}"),
            worst,
            0.0,
            worst,
            1e-8,
        ));
    }
    Ok(rows)
}

fn biorthogonal_rows() -> Result<Vec<CheckRow>, Error> {
    let mut rows = Vec::new();
    for e in verify_biorthogonality(2, 32)? {
        rows.push(CheckRow::new(
            format!("m=2 ({}, {})", e.j, e.k),
            e.value,
            e.expected,
            e.residual,
            1e-8,
        ));
    }
    let entries = verify_biorthogonality(3, 32)?;
    let worst = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    rows.push(CheckRow::new("m=3 full matrix", worst, 0.0, worst, 1e-6));
    Ok(rows)
}

fn brittleness_rows<E: Executor>(exec: &E, seed: u64) -> Result<Vec<CheckRow>, Error> {
    let mut rows = Vec::new();
    for n in [1, 2] {
        let dp = 0.1;
        let delta = solve_delta(n, dp)?;
        let cfg = BrittlenessConfig::new(n, dp, delta, 1_000_000, seed + n as u64)?;
        let c = brittleness_certificate(exec, &cfg)?;
        rows.push(CheckRow::nonnegative(
            format!("n={n} certificate minus 3 sigma"),
            c.estimate - SIGMAS * c.stderr,
        ));
        let b = bound_closed_form(n, delta)?;
        rows.push(CheckRow::new(
            format!("n={n} closed-form bound at solved delta"),
            b,
            0.8,
            (0.8 - b).max(0.0),
            1e-12,
        ));
        rows.push(z_row(format!("n={n} prior mean"), &c.prior, 0.5));
    }
    let b = bound_closed_form(1, 1e-6)?;
    rows.push(CheckRow::new(
        "bound n=1 delta=1e-6",
        b,
        0.9018,
        (b - 0.9018).abs(),
        1e-4,
    ));
    Ok(rows)
}

fn inequality_rows() -> Vec<CheckRow> {
    let p = (1..=50)
        .map(power_inequality_slack)
        .fold(f64::INFINITY, f64::min);
    let b = beta_inequality_grid()
        .map(beta_inequality_slack)
        .fold(f64::INFINITY, f64::min);
    vec![
        CheckRow::nonnegative("power inequality slack, m <= 50", p),
        CheckRow::nonnegative("Beta inequality slack on grid", b),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use hausdorff_core::Sequential;

    #[test]
    fn cheap_checks_pass() {
        for id in [2, 6, 11, 13, 15] {
            for r in run(&Sequential, id, 1).unwrap() {
                assert!(r.pass(), "criterion {id}: {r:?}");
            }
        }
    }

    #[test]
    fn unknown_id() {
        assert!(run(&Sequential, 16, 1).is_err());
    }
}
