//! Absolute logarithmic heights.
//!
//! For an algebraic number `gamma` with Galois orbit (with multiplicity)
//! `tau(gamma)`, `tau` in a Galois group `G`, and primitive integer minimal
//! polynomial with leading coefficient `a`,
//! `h(gamma) = (log|a| + sum_tau log max(1, |tau(gamma)|)) / |G|`.
//! The modified height is `h'(gamma) = max(h(gamma), |log gamma|/D, 1/D)`.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::precision::round_to_integer;

/// `h` from the orbit values and the leading coefficient.
pub fn height_from_orbit(orbit: &[Float], leading: &Integer) -> Float {
    let prec = orbit[0].prec();
    let mut sum = Float::with_val(prec, Integer::from(leading.abs_ref())).ln();
    for v in orbit {
        let a = Float::with_val(prec, v.abs_ref());
        if a > 1 {
            sum += a.ln();
        }
    }
    sum / orbit.len() as u32
}

/// `max(h, |log gamma|/D, 1/D)`.
pub fn modified_height(h: &Float, gamma: &Float, big_d: u32) -> Float {
    let prec = h.prec();
    let l = Float::with_val(prec, gamma.abs_ref()).ln().abs() / big_d;
    let inv = Float::with_val(prec, 1) / big_d;
    let mut best = h.clone();
    if l > best {
        best = l;
    }
    if inv > best {
        best = inv;
    }
    best
}

/// Leading coefficient of the primitive integer polynomial proportional to
/// `prod_tau (w_tau X - u_tau)`, where `u_tau, w_tau` are the orbits of two
/// algebraic integers.  The product has rational integer coefficients; they
/// are recovered by rounding, which must be unambiguous.
pub fn primitive_leading_coefficient(u_orbit: &[Float], w_orbit: &[Float]) -> Result<Integer> {
    let prec = u_orbit[0].prec();
    let mut poly: Vec<Float> = vec![Float::with_val(prec, 1)];
    for (u, w) in u_orbit.iter().zip(w_orbit) {
        let mut next = vec![Float::new(prec); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] -= Float::with_val(prec, c * u);
            next[i + 1] += Float::with_val(prec, c * w);
        }
        poly = next;
    }
    let tol = Float::with_val(prec, 10).pow(-((prec / 12) as i32));
    let mut ints = Vec::with_capacity(poly.len());
    for c in &poly {
        let r = round_to_integer(c);
        let err = Float::with_val(prec, c - &r).abs();
        if err > tol {
            return Err(Error::PrecisionExhausted("height polynomial is not integral".into()));
        }
        ints.push(r);
    }
    let content = ints.iter().fold(Integer::new(), |g, c| g.gcd(c));
    if content == 0 {
        return Err(Error::Invariant("zero height polynomial".into()));
    }
    Ok(Integer::from(ints.last().expect("nonempty") / &content).abs())
}
