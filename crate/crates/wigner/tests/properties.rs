//! Property tests for the structural invariants: symmetry relations,
//! bounds, and cross-route consistency on randomized inputs.

use proptest::prelude::*;

use wigner::{bessel, d_approx, d_exact, kinematic_factor, Angle, AngularIndex, ErrorRecord};

/// Valid doubled triples: two_m = -two_j + 2k for k in 0..=two_j.
fn valid_index(max_two_j: i64) -> impl Strategy<Value = AngularIndex> {
    (0..=max_two_j).prop_flat_map(|two_j| {
        (Just(two_j), 0..=two_j, 0..=two_j).prop_map(|(tj, k1, k2)| {
            AngularIndex::new(tj, -tj + 2 * k1, -tj + 2 * k2).expect("constructed valid")
        })
    })
}

proptest! {
    #[test]
    fn delta_squared_dominates_j_plus_third(idx in valid_index(400)) {
        let d2 = idx.delta() * idx.delta();
        let bound = idx.j() + 1.0 / 3.0;
        prop_assert!(d2 >= bound - 1e-9 * bound);
    }

    #[test]
    fn canonicalize_orders_and_is_involutive(idx in valid_index(200)) {
        let (c, s) = idx.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert!(s == 1.0 || s == -1.0);
        // Re-canonicalizing the swapped pair restores the canonical index
        // with the phase (-1)^{m1-m2} of the pair; a non-canonical input
        // must have carried that same phase.
        let expected = if c.alpha() % 2 == 0 { 1.0 } else { -1.0 };
        let swapped = AngularIndex::new(c.two_j(), c.two_m2(), c.two_m1()).unwrap();
        let (c2, s2) = swapped.canonicalize();
        prop_assert_eq!(c2, c);
        prop_assert_eq!(s2, expected);
        if idx.is_canonical() {
            prop_assert_eq!(s, 1.0);
        } else {
            prop_assert_eq!(s, expected);
        }
    }

    #[test]
    fn exact_obeys_swap_symmetry(idx in valid_index(120), theta in 1e-6..3.0f64) {
        let th = Angle::new(theta).unwrap();
        let swapped = AngularIndex::new(idx.two_j(), idx.two_m2(), idx.two_m1()).unwrap();
        let sign = if idx.alpha() % 2 == 0 { 1.0 } else { -1.0 };
        let a = d_exact(&idx, th);
        let b = sign * d_exact(&swapped, th);
        prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
    }

    #[test]
    fn approx_inherits_swap_symmetry_exactly(idx in valid_index(200), theta in 0.0..1.0f64) {
        let th = Angle::new(theta).unwrap();
        let swapped = AngularIndex::new(idx.two_j(), idx.two_m2(), idx.two_m1()).unwrap();
        let sign = if idx.alpha() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(d_approx(&idx, th), sign * d_approx(&swapped, th));
    }

    #[test]
    fn exact_is_bounded_by_unitarity(idx in valid_index(300), theta in 0.0..(std::f64::consts::PI - 0.002)) {
        let v = d_exact(&idx, Angle::new(theta).unwrap());
        prop_assert!(v.abs() <= 1.0 + 1e-11, "|d| = {}", v.abs());
    }

    #[test]
    fn approx_bounded_within_error_envelope(idx in valid_index(4000), theta in 0.0..0.5f64) {
        // The exact element is bounded by 1; the approximation may exceed
        // it only within its own error envelope.
        let v = d_approx(&idx, Angle::new(theta).unwrap());
        prop_assert!(v.abs() <= 1.01, "|approx| = {}", v.abs());
    }

    #[test]
    fn bessel_recurrence_holds(n in 1u32..32, x in 0.01f64..200.0) {
        let jm = bessel::bessel_j(n - 1, x).unwrap();
        let j = bessel::bessel_j(n, x).unwrap();
        let jp = bessel::bessel_j(n + 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * j;
        let scale = jm.abs().max(jp.abs()).max(rhs.abs()).max(1e-280);
        prop_assert!((jm + jp - rhs).abs() / scale < 1e-10, "n={} x={}", n, x);
    }

    #[test]
    fn kinematic_factor_at_least_one(theta in 0.0..(std::f64::consts::PI - 1e-4)) {
        prop_assert!(kinematic_factor(Angle::new(theta).unwrap()) >= 1.0);
    }

    #[test]
    fn error_record_columns_recompute(idx in valid_index(100), theta in 0.0..2.0f64) {
        let r = ErrorRecord::evaluate(&idx, Angle::new(theta).unwrap());
        prop_assert_eq!(r.abs_error, (r.exact - r.approx).abs());
        match r.rel_error {
            Some(rel) => prop_assert_eq!(rel, (r.exact - r.approx) / r.exact),
            None => prop_assert_eq!(r.exact, 0.0),
        }
    }
}

/// At theta = 1e-6 the approximation must agree with the exact value to
/// 1e-9 relative (or both be deeply suppressed), exhaustively over small j
/// and sampled over larger j.
#[test]
fn exact_limit_consistency_at_tiny_theta() {
    let th = Angle::new(1e-6).unwrap();
    let check = |idx: &AngularIndex| {
        let e = d_exact(idx, th);
        let a = d_approx(idx, th);
        let both_tiny = e.abs() < 1e-30 && a.abs() < 1e-30;
        assert!(
            both_tiny || (a - e).abs() <= 1e-9 * e.abs().max(1e-30),
            "{idx}: exact {e:e}, approx {a:e}"
        );
    };
    for two_j in 0..=60i64 {
        for two_m1 in (-two_j..=two_j).step_by(2) {
            for two_m2 in (-two_j..=two_j).step_by(2) {
                check(&AngularIndex::new(two_j, two_m1, two_m2).unwrap());
            }
        }
    }
    // Deterministic stride over the rest of the j <= 200 domain.
    for two_j in (61..=400i64).step_by(7) {
        for two_m1 in (-two_j..=two_j).step_by(26) {
            for two_m2 in (-two_j..=two_j).step_by(26) {
                let m1 = two_m1 - (two_m1 - two_j).rem_euclid(2);
                let m2 = two_m2 - (two_m2 - two_j).rem_euclid(2);
                check(&AngularIndex::new(two_j, m1, m2).unwrap());
            }
        }
    }
}

/// Absolute approximation error grows with angle for the Legendre column.
/// At j = 10 the growth is pointwise monotone across the decade grid; at
/// j = 2000 the error curve oscillates through zeros (the measured value
/// dips near theta ~ 0.01), so only the decade-scale envelope is tested.
#[test]
fn error_growth_is_monotone_in_theta() {
    let grid = [1e-3, 1e-2, 1e-1];
    let err_at = |two_j: i64, theta: f64| {
        let idx = AngularIndex::new(two_j, 0, 0).unwrap();
        let th = Angle::new(theta).unwrap();
        (d_exact(&idx, th) - d_approx(&idx, th)).abs()
    };
    let mut last = -1.0;
    for &theta in &grid {
        let err = err_at(20, theta);
        assert!(
            err >= last,
            "j=10: error {err:e} at theta={theta} below {last:e}"
        );
        last = err;
    }
    assert!(err_at(4000, grid[2]) > err_at(4000, grid[0]));
}
