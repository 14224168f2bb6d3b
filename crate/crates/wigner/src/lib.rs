//! Wigner rotation-matrix elements d^j_{m1 m2}(theta), their uniform
//! low-angle Bessel approximation, and the partial-wave overlap integrals
//! of Gaussian wavepacket scattering.
//!
//! The approximation evaluated here is
//!
//! d^j_{m1 m2}(theta) ~= D * sqrt(theta/sin theta) * J_{m1-m2}(Delta * theta),
//!
//! with Delta = sqrt(j(j+1) - (m1^2 + m2^2 + m1 m2 - 1)/3) and D a
//! factorial-ratio amplitude; one formula, uniform in j, m1 and m2,
//! integer and half-integer spins alike. The crate provides:
//!
//! * [`angular`] — exact half-integer index arithmetic (doubled-integer
//!   storage), symmetry canonicalization, and the constants Delta and D;
//! * [`bessel`] — self-contained J_n(x) to near machine precision;
//! * [`exact`] — ground-truth d^j_{m1 m2} by seeded degree recurrence,
//!   Legendre polynomials, and an extended-precision series oracle;
//! * [`uniform`] — the approximation itself and its small-angle pieces;
//! * [`partial_wave`] — the sharply peaked overlap integral I(rho, l), its
//!   closed form, and the basis-change wavefunction Psi(k, l, m);
//! * [`sweep`] — deterministic error tables over theta/j/l grids, run in
//!   parallel with the `parallel` feature (on by default) or sequentially
//!   without it.
//!
//! All evaluations are pure functions of their inputs and safe to call
//! concurrently.

pub mod angular;
pub mod bessel;
mod error;
pub mod exact;
mod factorial;
pub mod highprec;
pub mod partial_wave;
mod quad;
mod sum;
pub mod sweep;
pub mod uniform;

pub use angular::{Angle, AngularIndex, ApproxParams, DerivationConstants, MAX_TWO_J};
pub use error::{Error, Result};
pub use exact::{d_exact, d_series_highprec, legendre_p};
pub use highprec::HighPrecReal;
pub use partial_wave::{
    integral_approx, integral_exact, integral_rel_error, transform_wavefunction, RadialPoint,
    TransformMode, WavepacketParams,
};
pub use sweep::{ErrorRecord, IntegralRecord, ThetaGrid};
pub use uniform::{d_approx, kinematic_factor, small_angle_leading};
