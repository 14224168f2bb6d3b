//! Batch evaluation of exact-vs-approximate error tables over theta, j and
//! l grids.
//!
//! Grid points are independent, so sweeps are data-parallel: with the
//! `parallel` feature (default) they fan out over rayon and collect back
//! in input order, making the output deterministic across runs and thread
//! counts. The `*_seq` variants always run sequentially and are kept as
//! the benchmark baseline.

use serde::Serialize;

use crate::angular::{Angle, AngularIndex};
use crate::error::{Error, Result};
use crate::exact::d_exact;
use crate::partial_wave::{integral_approx, integral_exact};
use crate::uniform::d_approx;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn map_ordered<T: Sync, U: Send, F: Fn(&T) -> U + Sync>(items: &[T], f: F) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(&f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(&f).collect()
    }
}

/// One row of a rotation-matrix error table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub two_j: i64,
    pub two_m1: i64,
    pub two_m2: i64,
    pub theta: f64,
    pub exact: f64,
    pub approx: f64,
    /// |exact - approx|, bit-exactly as computed from the two columns.
    pub abs_error: f64,
    /// (exact - approx) / exact; undefined when exact = 0.
    pub rel_error: Option<f64>,
}

impl ErrorRecord {
    pub fn evaluate(idx: &AngularIndex, theta: Angle) -> Self {
        let exact = d_exact(idx, theta);
        let approx = d_approx(idx, theta);
        Self {
            two_j: idx.two_j(),
            two_m1: idx.two_m1(),
            two_m2: idx.two_m2(),
            theta: theta.radians(),
            exact,
            approx,
            abs_error: (exact - approx).abs(),
            rel_error: if exact != 0.0 {
                Some((exact - approx) / exact)
            } else {
                None
            },
        }
    }
}

/// One row of an overlap-integral error table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralRecord {
    pub l: u32,
    pub rho: f64,
    pub epsilon: f64,
    /// Quadrature value; the unconverged estimate when `converged` is false.
    pub exact: f64,
    pub approx: f64,
    /// (exact - approx) / exact; empty when the quadrature failed or the
    /// denominator is numerically zero.
    pub rel_error: Option<f64>,
    #[serde(skip)]
    pub converged: bool,
}

impl IntegralRecord {
    pub fn evaluate(l: u32, rho: f64, epsilon: f64) -> Self {
        let approx = integral_approx(rho, l, epsilon);
        match integral_exact(rho, l, epsilon) {
            Ok(exact) => Self {
                l,
                rho,
                epsilon,
                exact,
                approx,
                rel_error: if exact.abs() >= 1e-280 {
                    Some((exact - approx) / exact)
                } else {
                    None
                },
                converged: true,
            },
            Err(Error::QuadratureNotConverged { estimate, .. }) => Self {
                l,
                rho,
                epsilon,
                exact: estimate,
                approx,
                rel_error: None,
                converged: false,
            },
            Err(e) => unreachable!("quadrature reports only convergence failures: {e:?}"),
        }
    }
}

/// Log-spaced theta grid; `points == 1` degenerates to `[start]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl ThetaGrid {
    /// The grid values as validated angles, ascending.
    pub fn angles(&self) -> Result<Vec<Angle>> {
        let start_bad = self.start.is_nan() || self.start <= 0.0;
        if self.points == 0 || start_bad || self.stop < self.start {
            return Err(Error::AngleOutOfRange(if self.start > 0.0 {
                self.stop
            } else {
                self.start
            }));
        }
        let ratio = self.stop / self.start;
        (0..self.points)
            .map(|i| {
                let t = if self.points == 1 {
                    0.0
                } else {
                    i as f64 / (self.points - 1) as f64
                };
                Angle::new(self.start * ratio.powf(t))
            })
            .collect()
    }
}

/// Error table over a theta grid at a fixed index.
pub fn sweep_theta(idx: &AngularIndex, thetas: &[Angle]) -> Vec<ErrorRecord> {
    map_ordered(thetas, |th| ErrorRecord::evaluate(idx, *th))
}

/// Sequential baseline of [`sweep_theta`].
pub fn sweep_theta_seq(idx: &AngularIndex, thetas: &[Angle]) -> Vec<ErrorRecord> {
    thetas
        .iter()
        .map(|th| ErrorRecord::evaluate(idx, *th))
        .collect()
}

/// The indices (j, m1, m2) for j from `two_j_start`/2 to `two_j_stop`/2 in
/// unit steps of j, all validated up front.
pub fn j_range(
    two_j_start: i64,
    two_j_stop: i64,
    two_m1: i64,
    two_m2: i64,
) -> Result<Vec<AngularIndex>> {
    if two_j_stop < two_j_start {
        return Err(Error::NegativeJ(two_j_stop - two_j_start));
    }
    (two_j_start..=two_j_stop)
        .step_by(2)
        .map(|two_j| AngularIndex::new(two_j, two_m1, two_m2))
        .collect()
}

/// Error table over a j range at fixed (m1, m2, theta).
pub fn sweep_j(indices: &[AngularIndex], theta: Angle) -> Vec<ErrorRecord> {
    map_ordered(indices, |idx| ErrorRecord::evaluate(idx, theta))
}

/// Sequential baseline of [`sweep_j`].
pub fn sweep_j_seq(indices: &[AngularIndex], theta: Angle) -> Vec<ErrorRecord> {
    indices
        .iter()
        .map(|idx| ErrorRecord::evaluate(idx, theta))
        .collect()
}

/// The l values from `l_start` to `l_stop` inclusive in steps of `l_step`.
pub fn l_range(l_start: u32, l_stop: u32, l_step: u32) -> Vec<u32> {
    assert!(l_step > 0, "l_step must be positive");
    (l_start..=l_stop).step_by(l_step as usize).collect()
}

/// Overlap-integral error table over an l range at fixed (rho, epsilon).
pub fn sweep_integral(ls: &[u32], rho: f64, epsilon: f64) -> Vec<IntegralRecord> {
    map_ordered(ls, |&l| IntegralRecord::evaluate(l, rho, epsilon))
}

/// Sequential baseline of [`sweep_integral`].
pub fn sweep_integral_seq(ls: &[u32], rho: f64, epsilon: f64) -> Vec<IntegralRecord> {
    ls.iter()
        .map(|&l| IntegralRecord::evaluate(l, rho, epsilon))
        .collect()
}
