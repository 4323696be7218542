//! Working precision and small helpers around MPFR floats.

use rug::float::Round;
use rug::ops::PowAssign;
use rug::{Float, Integer};

use crate::error::{Error, Result};

/// Working precision in decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    /// Smallest precision accepted by the field-data constructors.
    pub const FLOOR: u32 = 50;
    /// Default working precision.
    pub const DEFAULT: Precision = Precision(200);

    /// Precision of `digits` decimal digits; rejects values below [`Self::FLOOR`].
    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::FLOOR {
            return Err(Error::PrecisionTooLow { requested: digits, floor: Self::FLOOR });
        }
        Ok(Precision(digits))
    }

    /// Precision without the floor check, for internal scratch computations.
    pub(crate) fn unchecked(digits: u32) -> Self {
        Precision(digits.max(20))
    }

    /// Decimal digits.
    pub fn digits(self) -> u32 {
        self.0
    }

    /// MPFR mantissa size in bits (with a few guard bits).
    pub fn bits(self) -> u32 {
        (f64::from(self.0) * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }

    /// This precision raised by `extra` digits.
    pub fn plus(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    /// A float of value zero at this precision.
    pub fn zero(self) -> Float {
        Float::new(self.bits())
    }

    /// A float holding `v` at this precision.
    pub fn float<T>(self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    /// `10^(-k)` at this precision.
    pub fn ten_pow_neg(self, k: u32) -> Float {
        let mut t = self.float(10);
        t.pow_assign(-(k as i32));
        t
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Nearest integer to `x`, ties away from zero.
pub fn round_to_integer(x: &Float) -> Integer {
    let r = Float::with_val(x.prec(), x.round_ref());
    r.to_integer().expect("finite value")
}

/// Largest integer not exceeding `x`.
pub fn floor_to_integer(x: &Float) -> Integer {
    let r = Float::with_val(x.prec(), x.floor_ref());
    r.to_integer().expect("finite value")
}

/// Smallest integer not below `x`.
pub fn ceil_to_integer(x: &Float) -> Integer {
    let r = Float::with_val(x.prec(), x.ceil_ref());
    r.to_integer().expect("finite value")
}

/// Decimal logarithm of a positive float as `f64` (exact exponent range).
pub fn log10_f64(x: &Float) -> f64 {
    let l = Float::with_val(64, x.log10_ref());
    l.to_f64()
}

/// Convert to `f64`, rounding to nearest.
pub fn to_f64(x: &Float) -> f64 {
    x.to_f64_round(Round::Nearest)
}

/// True when `|a - b| <= 10^(-digits) * max(1, |a|, |b|)`.
pub fn agree_to_digits(a: &Float, b: &Float, digits: u32) -> bool {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let mut scale = Float::with_val(prec, a.abs_ref());
    let bb = Float::with_val(prec, b.abs_ref());
    if bb > scale {
        scale = bb;
    }
    if scale < 1 {
        scale = Float::with_val(prec, 1);
    }
    let mut tol = Float::with_val(prec, 10);
    tol.pow_assign(-(digits as i32));
    diff <= tol * scale
}
