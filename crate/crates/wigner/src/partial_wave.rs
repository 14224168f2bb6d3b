//! Partial-wave overlap integrals of a Gaussian momentum wavepacket.
//!
//! The central object is the normalized angular overlap
//!
//! I(rho, l) = (1/2 eps^2) int_0^pi sin(theta) e^{-rho (1 - cos theta)/2 eps^2}
//!             P_l(cos theta) d(theta),
//!
//! whose integrand is a Gaussian-like spike of width O(eps) at theta = 0
//! multiplied by a Legendre polynomial oscillating with period ~2 pi / l.
//! [`integral_exact`] evaluates it by adaptive quadrature after the
//! substitution u = 1 - cos(theta), which removes the sin(theta) Jacobian;
//! [`integral_approx`] is the closed form (1/rho) e^{-eps^2 (l(l+1)+1/3)/rho}
//! obtained from the low-angle Bessel limit. A narrow distribution in
//! angle produces a wide distribution in angular momentum.
//!
//! [`transform_wavefunction`] assembles the full basis-change wavefunction
//! Psi(k, l, m) for a Gaussian wavepacket of mean momentum p and width
//! sigma_p along z; only m = 0 survives the azimuthal integral.

use crate::error::{Error, Result};
use crate::exact::legendre_p;
use crate::quad;

/// Gaussian wavepacket parameters: mean momentum p, width sigma_p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavepacketParams {
    p: f64,
    sigma_p: f64,
}

impl WavepacketParams {
    /// Builds the parameter set; logs a warning when eps = sigma_p / p
    /// exceeds 0.1, where the low-order-in-eps closed forms degrade.
    pub fn new(p: f64, sigma_p: f64) -> Self {
        assert!(p > 0.0, "mean momentum must be positive");
        assert!(sigma_p > 0.0, "momentum width must be positive");
        let params = Self { p, sigma_p };
        if params.epsilon() > 0.1 {
            log::warn!(
                "epsilon = sigma_p/p = {} exceeds 0.1; sharp-wavepacket approximations degrade",
                params.epsilon()
            );
        }
        params
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn sigma_p(&self) -> f64 {
        self.sigma_p
    }

    /// eps = sigma_p / p.
    pub fn epsilon(&self) -> f64 {
        self.sigma_p / self.p
    }
}

/// A radial momentum sample and its dimensionless ratio rho = k/p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    pub k: f64,
    pub rho: f64,
}

impl RadialPoint {
    pub fn new(k: f64, params: &WavepacketParams) -> Self {
        assert!(k > 0.0, "momentum magnitude must be positive");
        Self {
            k,
            rho: k / params.p(),
        }
    }
}

/// Which evaluation backs the overlap integral inside the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    /// Adaptive quadrature of the integral ([`integral_exact`]).
    Quadrature,
    /// The exponential closed form ([`integral_approx`]).
    ClosedForm,
}

/// I(rho, l) by adaptive Gauss-Legendre quadrature to 1e-10 relative.
///
/// In the substituted variable the integral is
/// (1/2 eps^2) int_0^2 e^{-rho u / 2 eps^2} P_l(1 - u) du, with the decay
/// scale s = 2 eps^2 / rho. The initial panels grow geometrically from s
/// so the boundary layer is resolved before adaptivity takes over; the
/// upper limit is clipped to 80 decay lengths, far below the requested
/// tolerance.
pub fn integral_exact(rho: f64, l: u32, epsilon: f64) -> Result<f64> {
    assert!(rho > 0.0, "rho must be positive");
    assert!(epsilon > 0.0, "epsilon must be positive");
    let scale = 2.0 * epsilon * epsilon / rho;
    let upper = (80.0 * scale).min(2.0);
    let norm = 1.0 / (2.0 * epsilon * epsilon);
    let f = |u: f64| {
        let x = (1.0 - u).clamp(-1.0, 1.0);
        norm * (-u / scale).exp() * legendre_p(l, x).expect("argument clamped to [-1, 1]")
    };
    let mut breakpoints = Vec::new();
    let mut edge = scale.min(upper);
    while edge < upper {
        breakpoints.push(edge);
        edge *= 2.0;
    }
    // The Legendre recurrence itself carries ~l * eps of absolute noise at
    // high degree; error estimates below that are not meaningful.
    let noise_rel = 20.0 * (l as f64 + 1.0) * f64::EPSILON;
    let (value, _) = quad::integrate(&f, 0.0, upper, &breakpoints, 1e-10, noise_rel, 4096)?;
    Ok(value)
}

/// Closed-form approximation I(rho, l) ~= (1/rho) e^{-eps^2 (l(l+1) + 1/3)/rho}.
pub fn integral_approx(rho: f64, l: u32, epsilon: f64) -> f64 {
    assert!(rho > 0.0, "rho must be positive");
    assert!(epsilon > 0.0, "epsilon must be positive");
    let lf = l as f64;
    (-epsilon * epsilon * (lf * (lf + 1.0) + 1.0 / 3.0) / rho).exp() / rho
}

/// Signed relative error (exact - approx) / exact of the closed form.
pub fn integral_rel_error(rho: f64, l: u32, epsilon: f64) -> Result<f64> {
    let exact = integral_exact(rho, l, epsilon)?;
    if exact.abs() < 1e-280 {
        return Err(Error::DivisionByNearZero(exact));
    }
    Ok((exact - integral_approx(rho, l, epsilon)) / exact)
}

/// The basis-change wavefunction
///
/// Psi(k, l, m) = delta_{m0} sqrt(2 pi) k e^{-(k-p)^2/4 sigma_p^2}
///                sqrt(l + 1/2) * 2 eps^2 I(k/p, l),
///
/// real-valued under the conventions used here (the azimuthal integral
/// removes all phases). The factor 2 eps^2 converts the normalized
/// I(rho, l) back to the bare angular integral.
pub fn transform_wavefunction(
    k: f64,
    l: u32,
    m: i64,
    params: &WavepacketParams,
    mode: TransformMode,
) -> Result<f64> {
    assert!(k > 0.0, "momentum magnitude must be positive");
    if m != 0 {
        return Ok(0.0);
    }
    let eps = params.epsilon();
    let rho = k / params.p();
    let overlap = match mode {
        TransformMode::Quadrature => integral_exact(rho, l, eps)?,
        TransformMode::ClosedForm => integral_approx(rho, l, eps),
    };
    let dk = k - params.p();
    let gauss = (-dk * dk / (4.0 * params.sigma_p() * params.sigma_p())).exp();
    Ok((2.0 * std::f64::consts::PI).sqrt()
        * k
        * gauss
        * (l as f64 + 0.5).sqrt()
        * 2.0
        * eps
        * eps
        * overlap)
}
