//! Globally adaptive Gauss-Legendre quadrature.
//!
//! Panels are refined worst-first, with each panel's error estimated by
//! comparing its 16-point value against the sum over its two halves. The
//! driver stops when the accumulated error estimate drops below the
//! relative tolerance or below the roundoff floor of the panel sum,
//! whichever is larger; integrands that cancel to below roundoff therefore
//! converge to their noise floor instead of spinning forever.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

const GL_POINTS: usize = 16;

struct GlRule {
    nodes: [f64; GL_POINTS],
    weights: [f64; GL_POINTS],
}

/// Nodes and weights on [-1, 1] by Newton iteration on P_n.
fn gl_rule() -> &'static GlRule {
    static RULE: OnceLock<GlRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_POINTS;
        let mut nodes = [0.0; GL_POINTS];
        let mut weights = [0.0; GL_POINTS];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // P_n(x) and P'_n(x) by the recurrence
                let mut p0 = 1.0f64;
                let mut p1 = x;
                for k in 1..n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GlRule { nodes, weights }
    })
}

/// Weighted sum and weighted absolute sum over one panel.
fn eval_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let rule = gl_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    let mut acc_abs = 0.0;
    for i in 0..GL_POINTS {
        let v = rule.weights[i] * f(mid + half * rule.nodes[i]);
        acc += v;
        acc_abs += v.abs();
    }
    (acc * half, acc_abs * half)
}

struct Panel {
    a: f64,
    b: f64,
    /// Evaluations over the two halves; reused as the children's
    /// whole-panel values when this panel is split.
    left: f64,
    right: f64,
    /// Refined value: left + right.
    value: f64,
    /// Weighted absolute sum; sets the roundoff scale of `error`.
    abs_weighted: f64,
    /// |whole-panel value - refined value|.
    error: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let mid = 0.5 * (a + b);
        let (left, left_abs) = eval_panel(f, a, mid);
        let (right, right_abs) = eval_panel(f, mid, b);
        let value = left + right;
        Self {
            a,
            b,
            left,
            right,
            value,
            abs_weighted: left_abs + right_abs,
            error: (whole - value).abs(),
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over [a, b] to the requested relative tolerance.
///
/// `breakpoints` seeds the initial subdivision (strictly increasing,
/// interior points only); panels are then bisected worst-first up to
/// `max_panels`. `noise_rel` is the relative evaluation noise of the
/// integrand itself (at least a few machine epsilons; larger when `f` is
/// built from long recurrences): error estimates cannot drop below
/// `noise_rel` times the weighted absolute sum, and splitting panels that
/// sit at that floor only multiplies the noise, so the driver treats the
/// floor as converged. Returns the estimate and its error estimate.
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
    noise_rel: f64,
    max_panels: usize,
) -> Result<(f64, f64)> {
    let mut heap = BinaryHeap::new();
    let mut edges = Vec::with_capacity(breakpoints.len() + 2);
    edges.push(a);
    edges.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);
    for pair in edges.windows(2) {
        let (whole, _) = eval_panel(f, pair[0], pair[1]);
        heap.push(Panel::new(f, pair[0], pair[1], whole));
    }

    loop {
        let mut total = 0.0;
        let mut total_abs = 0.0;
        let mut err = 0.0;
        for p in heap.iter() {
            total += p.value;
            total_abs += p.abs_weighted;
            err += p.error;
        }
        let floor = noise_rel.max(8.0 * f64::EPSILON) * total_abs;
        if err <= (rel_tol * total.abs()).max(floor) {
            let mut clean = NeumaierSum::default();
            for p in heap.iter() {
                clean.add(p.value);
            }
            return Ok((clean.value(), err));
        }
        if heap.len() >= max_panels {
            return Err(Error::QuadratureNotConverged {
                panels: heap.len(),
                estimate: total,
                error_estimate: err,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; cannot refine further.
            return Err(Error::QuadratureNotConverged {
                panels: heap.len() + 1,
                estimate: total,
                error_estimate: err,
            });
        }
        heap.push(Panel::new(f, worst.a, mid, worst.left));
        heap.push(Panel::new(f, mid, worst.b, worst.right));
    }
}
