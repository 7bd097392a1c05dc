//! Two elementary inequalities the brittleness bounds rely on.

use core::f64::consts::E;
use num_traits::Float;

use crate::special::beta;

/// Slack in m² ≤ 8 (e/2)^{4m}; nonnegative when the inequality holds.
pub fn power_inequality_slack(m: usize) -> f64 {
    let mf = m as f64;
    8.0 * (0.5 * E).powf(4.0 * mf) - mf * mf
}

/// Slack in B(a, a) ≥ (4/a) 2^{−2a}; nonnegative when the inequality holds.
pub fn beta_inequality_slack(a: f64) -> f64 {
    beta(a, a) - 4.0 / a * 2f64.powf(-2.0 * a)
}

/// Default grid for the Beta inequality: 1.1 and the integers 2..=40.
pub fn beta_inequality_grid() -> impl Iterator<Item = f64> {
    core::iter::once(1.1).chain((2..=40).map(f64::from))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequalities_hold() {
        assert!((1..=50).all(|m| power_inequality_slack(m) >= 0.0));
        assert!(beta_inequality_grid().all(|a| beta_inequality_slack(a) >= 0.0));
        assert_eq!(beta_inequality_grid().count(), 40);
    }
}
