//! The uniform low-angle Bessel approximation of d^j_{m1 m2}(theta):
//!
//! d^j_{m1 m2}(theta) ~= D(j, m1, m2) * sqrt(theta / sin theta)
//!                       * J_{m1-m2}(Delta(j, m1, m2) * theta)
//!
//! valid for m1 >= m2 and extended to the rest by the symmetry phase. One
//! formula covers all j, m1, m2 at once, integer and half-integer alike,
//! with errors that shrink as theta does and as j grows past |m1|, |m2|.
//! No validity cutoff is enforced in theta: the sweep harness reports
//! errors instead of the library refusing inputs.

use crate::angular::{Angle, AngularIndex};
use crate::bessel;
use crate::factorial::ln_factorial;

/// sqrt(theta / sin theta) with its removable singularity at zero.
///
/// Below 1e-4 the direct quotient is replaced by the series
/// 1 + theta^2/12 + theta^4/160, which agrees with the quotient to ~1e-14
/// at the crossover.
pub fn kinematic_factor(theta: Angle) -> f64 {
    let th = theta.radians();
    if th < 1e-4 {
        let t2 = th * th;
        1.0 + t2 / 12.0 + t2 * t2 / 160.0
    } else {
        (th / th.sin()).sqrt()
    }
}

/// The uniform approximation itself.
///
/// At theta = 0 the factors evaluate to the exact limit delta_{m1 m2}:
/// the kinematic factor tends to 1, J_0(0) = 1 and J_alpha(0) = 0 for
/// alpha > 0.
pub fn d_approx(idx: &AngularIndex, theta: Angle) -> f64 {
    let p = idx.approx_params();
    let x = p.delta * theta.radians();
    let j = bessel::bessel_j(p.alpha, x).expect("Delta * theta >= 0");
    p.sign_flip * p.prefactor * kinematic_factor(theta) * j
}

/// Leading small-angle monomial of d^j_{m1 m2}(theta) for a canonical
/// index (m1 >= m2):
///
/// sqrt[(j+m1)!(j-m2)!/((j-m1)!(j+m2)!)] * (-1)^{m1-m2}/(m1-m2)! * (theta/2)^{m1-m2}
///
/// This is the normalization target that fixes the amplitude D.
pub fn small_angle_leading(idx: &AngularIndex, theta: Angle) -> f64 {
    debug_assert!(idx.is_canonical(), "leading term requires m1 >= m2");
    let alpha = idx.alpha() as u64;
    let j_p_m1 = ((idx.two_j() + idx.two_m1()) / 2) as u64;
    let j_m_m2 = ((idx.two_j() - idx.two_m2()) / 2) as u64;
    let j_m_m1 = ((idx.two_j() - idx.two_m1()) / 2) as u64;
    let j_p_m2 = ((idx.two_j() + idx.two_m2()) / 2) as u64;
    let ln_ratio =
        ln_factorial(j_p_m1) + ln_factorial(j_m_m2) - ln_factorial(j_m_m1) - ln_factorial(j_p_m2);
    let mut magnitude = 0.5 * ln_ratio - ln_factorial(alpha);
    if alpha > 0 {
        let half = 0.5 * theta.radians();
        if half == 0.0 {
            return 0.0;
        }
        magnitude += alpha as f64 * half.ln();
    }
    if magnitude < -745.0 {
        return 0.0;
    }
    let sign = if alpha.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * magnitude.exp()
}
