use hausdorff_core::poly::legendre_assoc2;
use hausdorff_core::rkhs::{compare_kernels, reproduce, verify_biorthogonality};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn reproduces_legendre_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=3 {
        for _ in 0..10 {
            let ts: f64 = rng.random();
            for k in 2..2 * m {
                let r = reproduce(&legendre_assoc2(k).unwrap(), ts, m).unwrap();
                assert!(r.residual < 1e-8, "m={m} k={k} t*={ts}: {r:?}");
            }
        }
    }
}

#[test]
fn biorthogonal_system() {
    for (m, tol) in [(2, 1e-8), (3, 1e-6)] {
        for e in verify_biorthogonality(m, 32).unwrap() {
            assert!(e.residual < tol, "m={m} {e:?}");
        }
    }
}

#[test]
fn marginal_kernel_dominates_legendre_kernel() {
    for m in 2..=3 {
        let c = compare_kernels(m, 20).unwrap();
        assert!(c.min_eigenvalue >= -1e-10);
        assert!(c.max_abs_difference > 1e-4);
    }
}
