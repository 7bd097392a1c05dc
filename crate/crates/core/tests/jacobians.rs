use hausdorff_core::jacobians::{
    jacobian_closed_form, jacobian_numeric, weight_factor, JacobianKind,
};
use hausdorff_core::SimplexPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_point(
    rng: &mut ChaCha8Rng,
    kind: JacobianKind,
    m: usize,
) -> (Vec<f64>, Vec<f64>, Option<f64>) {
    let ld = kind.lambda_dim(m);
    let e: Vec<f64> = (0..=ld).map(|_| -rng.random::<f64>().ln()).collect();
    let s: f64 = e.iter().sum();
    let lam = e[..ld].iter().map(|x| x / s).collect();
    let mut t: Vec<f64> = (0..kind.t_dim(m)).map(|_| rng.random()).collect();
    t.sort_by(f64::total_cmp);
    let ts = kind.is_canonical().then(|| rng.random::<f64>());
    (lam, t, ts)
}

#[test]
fn numeric_matches_closed_form_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..400 {
        let kind = JacobianKind::ALL[trial % 8];
        let m = 1 + (trial / 8) % 4;
        let (lam, t, ts) = random_point(&mut rng, kind, m);
        let num = jacobian_numeric(kind, ts, &SimplexPoint::new(lam.clone()).unwrap(), &t).unwrap();
        let cf = jacobian_closed_form(kind, ts, &t).unwrap() * weight_factor(kind, &lam);
        let rel = (num - cf).abs() / cf;
        assert!(rel < 1e-5, "{kind:?} m={m} t={t:?} t*={ts:?}: rel {rel:e}");
    }
}
