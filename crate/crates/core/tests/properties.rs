use hausdorff_core::jacobians::{jacobian_closed_form, JacobianKind};
use hausdorff_core::moments::{from_canonical, moments_of, to_canonical};
use hausdorff_core::poly::Poly;
use hausdorff_core::representations::{principal_representation, Side};
use hausdorff_core::rkhs::{cd_kernel, kernel_h};
use hausdorff_core::selberg::{selberg_closed, SelbergParams};
use hausdorff_core::special::beta;
use hausdorff_core::CanonicalMoments;
use proptest::prelude::*;

fn canonical(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.02f64..0.98, n)
}

fn sorted_nodes(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, len).prop_map(|mut t| {
        t.sort_by(f64::total_cmp);
        t
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn canonical_round_trip(p in (1usize..=7).prop_flat_map(canonical)) {
        let q = from_canonical(&CanonicalMoments::new(p.clone()).unwrap());
        let back = to_canonical(&q).unwrap();
        for (a, b) in back.values().iter().zip(&p) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn principal_representations_reproduce_moments(
        p in (1usize..=6).prop_flat_map(canonical),
        upper in any::<bool>(),
    ) {
        let n = p.len();
        let q = from_canonical(&CanonicalMoments::new(p).unwrap());
        let side = if upper { Side::Upper } else { Side::Lower };
        let mu = principal_representation(&q, side).unwrap();
        let back = moments_of(&mu, n);
        for (a, b) in back.values().iter().zip(q.values()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn jacobian_reflections(m in 1usize..=4, t in sorted_nodes(4), ts in 0.0f64..1.0) {
        let refl = |x: &[f64]| -> Vec<f64> { x.iter().rev().map(|v| 1.0 - v).collect() };
        let tm = &t[..m];
        let tl = &t[..m - 1];
        let cf = |k, s, x: &[f64]| jacobian_closed_form(k, s, x).unwrap();
        prop_assert!(close(cf(JacobianKind::Pol, None, tm), cf(JacobianKind::Pol, None, &refl(tm)), 1e-12));
        prop_assert!(close(cf(JacobianKind::Pou, None, tl), cf(JacobianKind::Pou, None, &refl(tl)), 1e-12));
        prop_assert!(close(cf(JacobianKind::Pel, None, &refl(tm)), cf(JacobianKind::Peu, None, tm), 1e-12));
        prop_assert!(close(
            cf(JacobianKind::Cou, Some(ts), tl),
            cf(JacobianKind::Col, Some(1.0 - ts), &refl(tl)),
            1e-12
        ));
    }

    #[test]
    fn kernel_h_reflection(t in sorted_nodes(2), ts in 0.0f64..1.0) {
        let r: Vec<f64> = t.iter().rev().map(|v| 1.0 - v).collect();
        let a = kernel_h(3, ts, &t).unwrap();
        let b = kernel_h(3, 1.0 - ts, &r).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-12));
    }

    #[test]
    fn cd_kernel_symmetric(m in 2usize..=4, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (x, y) = (cd_kernel(m, a, b).unwrap(), cd_kernel(m, b, a).unwrap());
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn poly_ring_ops_agree_with_evaluation(
        a in prop::collection::vec(-3.0f64..3.0, 0..6),
        b in prop::collection::vec(-3.0f64..3.0, 0..6),
        x in 0.0f64..1.0,
    ) {
        let (p, q) = (Poly::new(a).unwrap(), Poly::new(b).unwrap());
        prop_assert!(((&p + &q).eval(x) - (p.eval(x) + q.eval(x))).abs() < 1e-12);
        prop_assert!(((&p * &q).eval(x) - p.eval(x) * q.eval(x)).abs() < 1e-11);
        prop_assert!((p.reflect().eval(x) - p.eval(1.0 - x)).abs() < 1e-11);
    }

    #[test]
    fn one_dimensional_selberg_is_beta(a in 0.1f64..10.0, b in 0.1f64..10.0, g in 0.0f64..3.0) {
        let s = selberg_closed(&SelbergParams::new(1, a, b, g).unwrap());
        prop_assert!(close(s, beta(a, b), 1e-13));
    }
}
