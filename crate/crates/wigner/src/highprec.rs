//! Software floating point with a configurable number of decimal digits.
//!
//! A thin wrapper over `astro_float::BigFloat` pinned to one working
//! precision per value. It exists so the alternating-series oracle can run
//! with enough guard digits that catastrophic cancellation still leaves 15
//! correct decimal digits in the rounded `f64` result.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// A value with at least `digits` decimal digits of working precision.
#[derive(Debug, Clone)]
pub struct HighPrecReal {
    v: BigFloat,
    prec: usize,
}

fn bits_for(digits: u32) -> usize {
    let raw = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32;
    // Word-aligned, at least two words; astro-float rejects tiny precisions.
    raw.next_multiple_of(64).max(128)
}

impl HighPrecReal {
    pub fn from_f64(digits: u32, x: f64) -> Self {
        let prec = bits_for(digits);
        Self {
            v: BigFloat::from_f64(x, prec),
            prec,
        }
    }

    pub fn from_i64(digits: u32, n: i64) -> Self {
        let prec = bits_for(digits);
        Self {
            v: BigFloat::from_i64(n, prec),
            prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let v = &self.v;
        if v.is_nan() {
            return f64::NAN;
        }
        if v.is_zero() {
            return 0.0;
        }
        if v.is_inf_pos() {
            return f64::INFINITY;
        }
        if v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, _, sign, exp, _) = v.as_raw_parts().expect("finite value");
        // Value = 0.m * 2^exp with the mantissa words little-endian and the
        // top bit set; 128 leading bits are enough for one correct f64
        // rounding.
        let nw = words.len();
        let top: u128 = if nw >= 2 {
            ((words[nw - 1] as u128) << 64) | words[nw - 2] as u128
        } else {
            (words[nw - 1] as u128) << 64
        };
        let m = top as f64;
        let k = exp - 128;
        let mag = if k.abs() <= 1000 {
            m * 2f64.powi(k)
        } else {
            m * 2f64.powi(k.clamp(-1000, 1000)) * 2f64.powi(k - k.clamp(-1000, 1000))
        };
        match sign {
            Sign::Neg => -mag,
            Sign::Pos => mag,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    /// log10 of the magnitude, good to f64 accuracy; -inf for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (words, _, _, exp, _) = self.v.as_raw_parts().expect("finite value");
        let top = words[words.len() - 1] as f64 / 2f64.powi(64);
        exp as f64 * std::f64::consts::LOG10_2 + top.log10()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.add(&rhs.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.sub(&rhs.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.mul(&rhs.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.div(&rhs.v, self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        Self {
            v: self.v.mul(&BigFloat::from_i64(n, self.prec), self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn div_i64(&self, n: i64) -> Self {
        Self {
            v: self.v.div(&BigFloat::from_i64(n, self.prec), self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            v: self.v.neg(),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Self {
        Self {
            v: self.v.sqrt(self.prec, RM),
            prec: self.prec,
        }
    }

    pub fn sin(&self) -> Self {
        CONSTS.with(|c| Self {
            v: self.v.sin(self.prec, RM, &mut c.borrow_mut()),
            prec: self.prec,
        })
    }

    pub fn cos(&self) -> Self {
        CONSTS.with(|c| Self {
            v: self.v.cos(self.prec, RM, &mut c.borrow_mut()),
            prec: self.prec,
        })
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, mut e: u64) -> Self {
        let mut result = Self {
            v: BigFloat::from_i64(1, self.prec),
            prec: self.prec,
        };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}
