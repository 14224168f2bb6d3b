//! Bessel functions of the first kind J_n(x) for integer order n >= 0.
//!
//! Self-contained to near machine precision over the range the rest of the
//! crate needs (x up to ~10^4, orders up to several hundred). Three
//! regimes:
//!
//! * ascending power series while x <= 2 sqrt(n+1), where the terms
//!   decrease from the start and the sum has no cancellation growth;
//! * Miller's algorithm in between: downward recurrence from a trial order
//!   above max(n, x), normalized with J_0(x) + 2 sum_k J_2k(x) = 1;
//! * Hankel phase-amplitude asymptotics once x >= max(30, 2 n^2).
//!
//! Orders are non-negative by construction; negative orders reduce through
//! J_{-n}(x) = (-1)^n J_n(x) before entry (see [`bessel_j_signed`]).

use crate::error::{Error, Result};
use crate::factorial::ln_factorial;
use crate::sum::NeumaierSum;

/// J_n(x) for n >= 0 and x >= 0.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    Ok(bessel_j_nonneg(n, x))
}

/// J_n(x) for possibly negative integer order.
pub fn bessel_j_signed(n: i32, x: f64) -> Result<f64> {
    let j = bessel_j(n.unsigned_abs(), x)?;
    Ok(if n < 0 && n % 2 != 0 { -j } else { j })
}

pub(crate) fn bessel_j_nonneg(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= series_limit(n) {
        series(n, x)
    } else if x >= asymptotic_limit(n) {
        asymptotic(n, x)
    } else {
        miller(n, x)
    }
}

/// Below this the series terms decrease monotonically (x^2 < 4(n+1)).
pub(crate) fn series_limit(n: u32) -> f64 {
    2.0 * ((n as f64) + 1.0).sqrt()
}

/// Above this the phase-amplitude expansion bottoms out below 1e-17.
pub(crate) fn asymptotic_limit(n: u32) -> f64 {
    (2.0 * (n as f64) * (n as f64)).max(30.0)
}

/// Ascending series J_n(x) = (x/2)^n/n! * sum_k (-x^2/4)^k / (k! (n+1)_k).
///
/// The prefactor is taken through logs so that deeply suppressed values
/// (n large, x small) underflow gracefully instead of hitting 0 * inf.
pub(crate) fn series(n: u32, x: f64) -> f64 {
    let nf = n as f64;
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..=200u32 {
        let kf = k as f64;
        term *= -q / (kf * (nf + kf));
        sum += term;
        if term.abs() <= sum.abs() * 1e-18 {
            break;
        }
    }
    let ln_pref = nf * (0.5 * x).ln() - ln_factorial(n as u64);
    if ln_pref < -745.0 {
        return 0.0;
    }
    ln_pref.exp() * sum
}

/// Miller's algorithm: downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}
/// from a trial order, normalized by the even-order sum rule.
///
/// The trial order sits far enough above max(n, x) that the contamination
/// from the arbitrary seed decays below 1e-18 before reaching order n.
pub(crate) fn miller(n: u32, x: f64) -> f64 {
    let base = (x.ceil() as u32).max(n);
    let start = base + 25 + (9.0 * (0.5 * x).cbrt()).ceil() as u32;

    let mut above = 0.0f64; // unnormalized J at order k+1
    let mut here = 1e-30f64; // unnormalized J at order k
    let mut target = 0.0f64;
    let mut even_sum = NeumaierSum::default();
    if start.is_multiple_of(2) {
        even_sum.add(2.0 * here);
    }
    for k in (1..=start).rev() {
        let below = (2.0 * k as f64 / x) * here - above;
        above = here;
        here = below;
        let order = k - 1;
        if order == n {
            target = here;
        }
        if order > 0 && order % 2 == 0 {
            even_sum.add(2.0 * here);
        }
        if here.abs() > 1e200 {
            here *= 1e-200;
            above *= 1e-200;
            target *= 1e-200;
            even_sum.scale(1e-200);
        }
    }
    // `here` is now the unnormalized J_0.
    let norm = even_sum.value() + here;
    target / norm
}

/// Hankel expansion J_n(x) = sqrt(2/(pi x)) [P cos chi - Q sin chi] with
/// chi = x - (2n+1) pi/4 and P, Q the usual series in mu = 4 n^2.
pub(crate) fn asymptotic(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut c = 1.0f64; // c_k = prod_i (mu - (2i-1)^2) / (k! (8x)^k)
    let mut prev_abs = f64::INFINITY;
    for k in 1..=60u32 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        c *= (mu - odd * odd) / (8.0 * kf * x);
        if c.abs() >= prev_abs {
            break; // asymptotic tail started growing; truncate at the minimum
        }
        prev_abs = c.abs();
        let signed = if k % 4 < 2 { c } else { -c };
        if k % 2 == 1 {
            q += signed;
        } else {
            p += signed;
        }
        if c.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - (0.5 * n as f64 + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        for n in 1..=64 {
            assert_eq!(bessel_j(n, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn negative_argument_rejected() {
        assert_eq!(
            bessel_j(0, -1.0).unwrap_err(),
            Error::NegativeArgument(-1.0)
        );
        assert!(bessel_j(3, f64::NAN).is_err());
    }

    #[test]
    fn first_zero_of_j0() {
        // Root located by bisection on an independent series evaluation.
        let f = |x: f64| {
            let q = 0.25 * x * x;
            let mut term = 1.0f64;
            let mut sum = 1.0f64;
            for k in 1..60 {
                term *= -q / ((k * k) as f64);
                sum += term;
            }
            sum
        };
        let (mut lo, mut hi) = (2.0f64, 3.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - 2.404825557695773).abs() < 1e-12);
        assert!(bessel_j(0, 2.404825557695773).unwrap().abs() < 1e-12);
    }

    #[test]
    fn small_x_leading_behavior() {
        // J_n(x) / ((x/2)^n / n!) -> 1 as x -> 0.
        for n in [1u32, 2, 5, 12] {
            for x in [1e-3f64, 1e-5, 1e-7] {
                let lead =
                    (0.5 * x).powi(n as i32) / (1..=n as u64).map(|i| i as f64).product::<f64>();
                let ratio = bessel_j(n, x).unwrap() / lead;
                assert!(
                    (ratio - 1.0).abs() < 1e-6 + x * x,
                    "n={n} x={x}: ratio {ratio}"
                );
            }
        }
    }

    #[test]
    fn negative_order_reduction() {
        let x = 7.3;
        for n in 1..=6i32 {
            let direct = bessel_j(n as u32, x).unwrap();
            let reduced = bessel_j_signed(-n, x).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((reduced - sign * direct).abs() < 1e-15);
        }
    }

    #[test]
    fn regimes_agree_at_thresholds() {
        // Both neighboring evaluators, evaluated at the same points around
        // each regime threshold, must agree to well below 1e-11.
        for n in [0u32, 1, 2, 3, 8, 16, 64] {
            let t = series_limit(n);
            for x in [t - 1e-9, t, t + 1e-9] {
                let a = series(n, x);
                let b = miller(n, x);
                assert!(
                    (a - b).abs() < 1e-11,
                    "series/miller n={n} x={x}: {a} vs {b} ({:e})",
                    a - b
                );
            }
        }
        for n in [0u32, 1, 2, 3, 5] {
            let t = asymptotic_limit(n);
            for x in [t - 1e-9, t, t + 1e-9] {
                let a = miller(n, x);
                let b = asymptotic(n, x);
                assert!(
                    (a - b).abs() < 1e-11,
                    "miller/asymptotic n={n} x={x}: {a} vs {b} ({:e})",
                    a - b
                );
            }
        }
    }

    #[test]
    fn three_term_recurrence_spot_check() {
        for &x in &[0.5f64, 3.7, 25.0, 420.0] {
            for n in 1..=40u32 {
                let jm = bessel_j(n - 1, x).unwrap();
                let j = bessel_j(n, x).unwrap();
                let jp = bessel_j(n + 1, x).unwrap();
                let rhs = 2.0 * n as f64 / x * j;
                // residual relative to the terms, not the (cancelling) net
                let scale = jm.abs().max(jp.abs()).max(rhs.abs()).max(1e-280);
                assert!(
                    (jm + jp - rhs).abs() / scale < 1e-11,
                    "n={n} x={x}: {jm} + {jp} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn normalization_sum_spot_check() {
        for &x in &[0.3f64, 4.0, 37.0, 95.0] {
            let mut acc = bessel_j(0, x).unwrap();
            let k_max = (x as u32 + 40) / 2 + 20;
            for k in 1..=k_max {
                acc += 2.0 * bessel_j(2 * k, x).unwrap();
            }
            assert!((acc - 1.0).abs() < 1e-11, "x={x}: sum {acc}");
        }
    }
}
