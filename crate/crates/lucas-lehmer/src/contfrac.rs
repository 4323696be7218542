//! Continued-fraction expansion of real algebraic numbers and enumeration
//! of their convergents up to a denominator bound.
//!
//! Every partial quotient is computed twice, the second time with 50 extra
//! digits; it is accepted only when both agree.  On disagreement the working
//! precision is doubled, up to a fixed number of escalations.

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::numberfield::AlgebraicReal;
use crate::precision::{floor_to_integer, Precision};

/// Extra digits used by the ambiguity guard.
pub const GUARD_DIGITS: u32 = 50;

/// Maximum number of precision doublings before giving up.
pub const MAX_ESCALATIONS: u32 = 5;

/// A continued-fraction expansion truncated at a denominator bound.
#[derive(Debug, Clone)]
pub struct ConvergentStream {
    /// Partial quotients `a_0, a_1, ...`.
    pub partial_quotients: Vec<Integer>,
    /// Convergents `(p_i, q_i)` with `q_i` nondecreasing.
    pub convergents: Vec<(Integer, Integer)>,
}

/// Partial quotients of `x` while they are certain, stopping once the
/// denominator exceeds `qmax`.  Returns `None` when the guard trips before
/// reaching `qmax`.
fn expand(x: &Float, guard: &Float, qmax: &Integer) -> Option<ConvergentStream> {
    let mut out = ConvergentStream { partial_quotients: Vec::new(), convergents: Vec::new() };
    let (mut a, mut b) = (x.clone(), guard.clone());
    let (mut p_prev, mut q_prev) = (Integer::from(1), Integer::new());
    let (mut p, mut q) = (Integer::new(), Integer::from(1));
    // After the swap below (p, q) holds the previous-previous convergent.
    std::mem::swap(&mut p, &mut p_prev);
    std::mem::swap(&mut q, &mut q_prev);
    loop {
        if !a.is_finite() || !b.is_finite() {
            return None;
        }
        let ai = floor_to_integer(&a);
        if ai != floor_to_integer(&b) {
            return None;
        }
        let p_next = Integer::from(&ai * &p) + &p_prev;
        let q_next = Integer::from(&ai * &q) + &q_prev;
        if q_next > *qmax {
            return Some(out);
        }
        out.partial_quotients.push(ai.clone());
        out.convergents.push((p_next.clone(), q_next.clone()));
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        a -= &ai;
        b -= &ai;
        if a.is_zero() || b.is_zero() {
            // Rational to working precision: only trust it if both agree.
            return (a.is_zero() && b.is_zero()).then_some(out);
        }
        a.recip_mut();
        b.recip_mut();
    }
}

/// All convergents with denominator at most `qmax` of the real number
/// produced by `eval` (which must return the number at the requested
/// precision).
pub fn convergents_with<F>(eval: F, qmax: &Integer, prec: Precision) -> Result<ConvergentStream>
where
    F: Fn(Precision) -> Float,
{
    if *qmax <= 0 {
        return Ok(ConvergentStream { partial_quotients: Vec::new(), convergents: Vec::new() });
    }
    let mut work = prec;
    for _ in 0..=MAX_ESCALATIONS {
        let x = eval(work);
        let guard = eval(work.plus(GUARD_DIGITS));
        if let Some(stream) = expand(&x, &guard, qmax) {
            return Ok(stream);
        }
        work = Precision::unchecked(work.digits() * 2);
    }
    Err(Error::PrecisionExhausted(format!(
        "continued fraction up to denominator {qmax} still ambiguous at {} digits",
        work.digits()
    )))
}

/// All convergents `p/q` of `x` with `q <= qmax`.
pub fn convergents_up_to(x: &AlgebraicReal, qmax: &Integer) -> Result<Vec<(Integer, Integer)>> {
    // Enough digits to resolve denominators up to qmax twice over.
    let digits = (2.0 * qmax.significant_bits() as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 60;
    let prec = Precision::unchecked(digits.max(x.precision().digits()));
    Ok(convergents_with(|p| x.evaluate(p), qmax, prec)?.convergents)
}
