/// `sqrt(d · sup|τ|/|dphi|² / A)` before clamping; values above one leave the
/// width unconstrained.
pub fn theorem1_bound_raw(d: f64, sup_ratio: f64, a: f64) -> f64 {
    (d.max(0.0) * sup_ratio.max(0.0) / a).sqrt()
}

/// Upper bound on `cos θ` for a map whose image lies in a cone of width `θ`,
/// clamped to `[0, 1]`.
pub fn theorem1_bound(d: f64, sup_ratio: f64, a: f64) -> f64 {
    theorem1_bound_raw(d, sup_ratio, a).clamp(0.0, 1.0)
}

/// `sqrt(d · χ / A_1)` before clamping.
pub fn theorem2_bound_raw(d: f64, chi: f64, a1: f64) -> f64 {
    (d.max(0.0) * chi.max(0.0) / a1).sqrt()
}

/// Upper bound on `cos θ` for isometric immersions with sectional curvature
/// at most `χ²` and codimension below `m`, clamped to `[0, 1]`.
pub fn theorem2_bound(d: f64, chi: f64, a1: f64) -> f64 {
    theorem2_bound_raw(d, chi, a1).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::compute_a;
    use proptest::prelude::*;

    #[test]
    fn zero_arguments_force_zero() {
        assert_eq!(theorem1_bound(0.3, 0.0, 0.18), 0.0);
        assert_eq!(theorem1_bound(0.0, 5.0, 0.18), 0.0);
        assert_eq!(theorem2_bound(0.0, 1.0, 0.18), 0.0);
        assert_eq!(theorem2_bound(2.0, 0.0, 0.18), 0.0);
    }

    #[test]
    fn paraboloid_quarter() {
        let a2 = compute_a(2.0).value;
        let rhs = theorem1_bound(0.25, 2.0, a2);
        assert!((rhs - (0.5 / a2).sqrt().min(1.0)).abs() < 1e-15);
        assert!(0.5_f64.sqrt() <= rhs);
    }

    #[test]
    fn theorem2_arithmetic() {
        let v = theorem2_bound(0.1, 1.0, 0.185903);
        assert!((v - 0.7334).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn monotone_in_each_argument(d in 0.0..5.0f64, s in 0.0..5.0f64, bump in 0.0..1.0f64) {
            let a = 0.185903;
            prop_assert!(theorem1_bound(d + bump, s, a) >= theorem1_bound(d, s, a));
            prop_assert!(theorem1_bound(d, s + bump, a) >= theorem1_bound(d, s, a));
            prop_assert!(theorem2_bound(d + bump, s, a) >= theorem2_bound(d, s, a));
            prop_assert!(theorem2_bound(d, s + bump, a) >= theorem2_bound(d, s, a));
            prop_assert!((0.0..=1.0).contains(&theorem1_bound(d, s, a)));
        }
    }
}
