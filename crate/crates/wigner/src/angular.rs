//! Exact half-integer angular-momentum indices and the two derived
//! constants of the low-angle approximation.
//!
//! Quantum numbers are stored as doubled integers (2j, 2m), so integer and
//! half-integer spins are both exact and never suffer floating-point
//! equality traps. A valid triple has 2j >= 0, |2m| <= 2j and a common
//! parity, which makes the differences m1 - m2 and sums m1 + m2 true
//! integers for every valid index.

use crate::error::{Error, Result};
use crate::factorial::ln_factorial;

/// Index triple (j, m1, m2) of a rotation-matrix element, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngularIndex {
    two_j: i64,
    two_m1: i64,
    two_m2: i64,
}

/// Largest accepted 2j (j ~ 4.4e12). Keeps the i128 radicand arithmetic
/// in [`AngularIndex::delta`] exact with room to spare; every other
/// evaluation loses meaning long before this.
pub const MAX_TWO_J: i64 = 1 << 43;

impl AngularIndex {
    /// Validates and builds an index from doubled quantum numbers.
    pub fn new(two_j: i64, two_m1: i64, two_m2: i64) -> Result<Self> {
        if two_j < 0 {
            return Err(Error::NegativeJ(two_j));
        }
        if two_j > MAX_TWO_J {
            return Err(Error::JTooLarge {
                two_j,
                max: MAX_TWO_J,
            });
        }
        if two_m1.abs() > two_j {
            return Err(Error::MOutOfRange {
                name: "m1",
                two_m: two_m1,
                two_j,
            });
        }
        if two_m2.abs() > two_j {
            return Err(Error::MOutOfRange {
                name: "m2",
                two_m: two_m2,
                two_j,
            });
        }
        if (two_j - two_m1) % 2 != 0 || (two_j - two_m2) % 2 != 0 {
            return Err(Error::ParityMismatch {
                two_j,
                two_m1,
                two_m2,
            });
        }
        Ok(Self {
            two_j,
            two_m1,
            two_m2,
        })
    }

    pub fn two_j(&self) -> i64 {
        self.two_j
    }

    pub fn two_m1(&self) -> i64 {
        self.two_m1
    }

    pub fn two_m2(&self) -> i64 {
        self.two_m2
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 * 0.5
    }

    pub fn m1(&self) -> f64 {
        self.two_m1 as f64 * 0.5
    }

    pub fn m2(&self) -> f64 {
        self.two_m2 as f64 * 0.5
    }

    /// m1 - m2. Always an integer thanks to the parity invariant; this is
    /// the Bessel order of the low-angle approximation.
    pub fn alpha(&self) -> i64 {
        (self.two_m1 - self.two_m2) / 2
    }

    /// m1 + m2; an integer for the same reason.
    pub fn beta(&self) -> i64 {
        (self.two_m1 + self.two_m2) / 2
    }

    /// True when m1 >= m2, the ordering assumed by the prefactor formulas.
    pub fn is_canonical(&self) -> bool {
        self.two_m1 >= self.two_m2
    }

    /// Returns an equivalent index with m1 >= m2 and the sign relating the
    /// two matrix elements: d^j_{m1 m2} = (-1)^{m1-m2} d^j_{m2 m1}.
    ///
    /// The sign is +1 when no swap was needed.
    pub fn canonicalize(&self) -> (Self, f64) {
        if self.is_canonical() {
            (*self, 1.0)
        } else {
            let swapped = Self {
                two_j: self.two_j,
                two_m1: self.two_m2,
                two_m2: self.two_m1,
            };
            let sign = if self.alpha() % 2 == 0 { 1.0 } else { -1.0 };
            (swapped, sign)
        }
    }

    /// The frequency constant
    /// Delta = sqrt(j(j+1) - (m1^2 + m2^2 + m1 m2 - 1)/3).
    ///
    /// The radicand is assembled exactly in integer arithmetic as
    /// 12 Delta^2 = 3*2j*(2j+2) - ((2m1)^2 + (2m2)^2 + 2m1*2m2) + 4, and it
    /// is bounded below by 12(j + 1/3) > 0 for every valid index, so the
    /// result is always real and positive.
    pub fn delta(&self) -> f64 {
        let tj = self.two_j as i128;
        let a = self.two_m1 as i128;
        let b = self.two_m2 as i128;
        let num = 3 * tj * (tj + 2) - (a * a + b * b + a * b) + 4;
        debug_assert!(num >= 6 * tj + 4, "radicand below its lower bound");
        ((num as f64) / 12.0).sqrt()
    }

    /// The amplitude constant of the low-angle approximation,
    ///
    /// D = (-1)^{m1-m2} sqrt[(j+m1)!(j-m2)! / ((j-m1)!(j+m2)!)] / Delta^{m1-m2},
    ///
    /// for a canonical index (m1 >= m2). Factorial ratios are accumulated
    /// as log-factorial differences, so the evaluation neither overflows
    /// nor loses the leading digits up to j ~ 10^4 and beyond.
    pub fn prefactor_d(&self) -> f64 {
        debug_assert!(self.is_canonical(), "prefactor requires m1 >= m2");
        let alpha = self.alpha();
        if alpha == 0 {
            return 1.0;
        }
        let j_p_m1 = ((self.two_j + self.two_m1) / 2) as u64;
        let j_m_m2 = ((self.two_j - self.two_m2) / 2) as u64;
        let j_m_m1 = ((self.two_j - self.two_m1) / 2) as u64;
        let j_p_m2 = ((self.two_j + self.two_m2) / 2) as u64;
        let ln_ratio = ln_factorial(j_p_m1) + ln_factorial(j_m_m2)
            - ln_factorial(j_m_m1)
            - ln_factorial(j_p_m2);
        let magnitude = (0.5 * ln_ratio - alpha as f64 * self.delta().ln()).exp();
        if alpha % 2 == 0 {
            magnitude
        } else {
            -magnitude
        }
    }

    /// Bundles everything the approximation needs: Delta, D, the Bessel
    /// order alpha = |m1 - m2| and the phase picked up by canonicalization.
    pub fn approx_params(&self) -> ApproxParams {
        let (canon, sign_flip) = self.canonicalize();
        ApproxParams {
            delta: canon.delta(),
            prefactor: canon.prefactor_d(),
            alpha: canon.alpha() as u32,
            sign_flip,
        }
    }
}

impl std::fmt::Display for AngularIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn half(n: i64, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            if n % 2 == 0 {
                write!(f, "{}", n / 2)
            } else {
                write!(f, "{n}/2")
            }
        }
        write!(f, "(j=")?;
        half(self.two_j, f)?;
        write!(f, ", m1=")?;
        half(self.two_m1, f)?;
        write!(f, ", m2=")?;
        half(self.two_m2, f)?;
        write!(f, ")")
    }
}

/// Rotation angle in radians, restricted to [0, pi).
///
/// The endpoint pi is excluded because the kinematic factor
/// sqrt(theta/sin theta) diverges there. Out-of-range input is an error
/// rather than being wrapped modulo 2 pi: silent wrapping would hide
/// caller bugs in a precision-benchmark tool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..std::f64::consts::PI).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::AngleOutOfRange(theta))
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Derived constants of the low-angle approximation for one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    /// Frequency constant Delta > 0.
    pub delta: f64,
    /// Sign-carrying amplitude D of the canonical index.
    pub prefactor: f64,
    /// Bessel order |m1 - m2|.
    pub alpha: u32,
    /// Phase (+1 or -1) applied when canonicalization swapped m1 and m2.
    pub sign_flip: f64,
}

/// Index combinations alpha = m1 - m2 and beta = m1 + m2.
///
/// These appear as parameters of the transformed differential equation the
/// approximation is derived from. They have no runtime role beyond
/// documentation and validation; the remaining derivation intermediates
/// (the substituted variable z = Delta*theta and the discarded correction
/// potential) have no representation at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivationConstants {
    pub alpha: i64,
    pub beta: i64,
}

impl From<&AngularIndex> for DerivationConstants {
    fn from(idx: &AngularIndex) -> Self {
        Self {
            alpha: idx.alpha(),
            beta: idx.beta(),
        }
    }
}
