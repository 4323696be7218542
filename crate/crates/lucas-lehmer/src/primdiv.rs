//! From solutions `(x, y)` of `F_n(x, y) = m` to Lucas and Lehmer pairs.
//!
//! A pair `(alpha, beta)` is recovered from `x = alpha^2 + beta^2` and
//! `y = alpha beta`: with `s = x + 2y = (alpha + beta)^2` and
//! `t = x - 2y = (alpha - beta)^2`, `alpha, beta = (sqrt s +- sqrt t) / 2`.
//! Multiplying both numbers by `i` maps `(x, y)` to `(-x, -y)`, so every
//! class has a representative with `s > 0`; multiplying by `-1` changes
//! nothing.  The pair is a Lucas pair when `s` is a perfect square.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{build_form, FormTarget};

/// Classification of a reconstructed pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SequenceKind {
    /// `alpha + beta` is a rational integer.
    Lucas,
    /// Only `(alpha + beta)^2` is a rational integer.
    Lehmer,
    /// `alpha beta = 0` or `alpha / beta` is a root of unity.
    Degenerate,
}

/// The pair attached to a solution `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCandidate {
    /// `x = alpha^2 + beta^2`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub x: Integer,
    /// `y = alpha beta`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub y: Integer,
    /// `s = (alpha + beta)^2`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub s: Integer,
    /// `t = (alpha - beta)^2`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub t: Integer,
    /// Classification.
    pub kind: SequenceKind,
    /// `gcd(s, y) = 1`.
    pub valid: bool,
}

fn is_square(v: &Integer) -> bool {
    *v >= 0 && v.is_perfect_square()
}

/// True when `alpha beta = 0` or `alpha / beta` is a root of unity, which
/// for `x = c y` happens exactly for `c in {0, +-1, +-2}`.
pub fn is_degenerate(x: &Integer, y: &Integer) -> bool {
    if *y == 0 {
        return true;
    }
    (-2..=2).any(|c| *x == Integer::from(y * c))
}

/// Reconstruct and classify the pair attached to `(x, y)`.
pub fn reconstruct(x: &Integer, y: &Integer) -> SequenceCandidate {
    let s = Integer::from(x + Integer::from(y * 2));
    let t = Integer::from(x - Integer::from(y * 2));
    let valid = Integer::from(s.gcd_ref(y)) == 1;
    let kind = if is_degenerate(x, y) {
        SequenceKind::Degenerate
    } else if is_square(&s) || is_square(&Integer::from(-&s)) {
        SequenceKind::Lucas
    } else {
        SequenceKind::Lehmer
    };
    SequenceCandidate { x: x.clone(), y: y.clone(), s, t, kind, valid }
}

/// True when `(x, y)` yields a valid, non-degenerate pair.
pub fn yields_nondegenerate_pair(x: &Integer, y: &Integer) -> bool {
    let c = reconstruct(x, y);
    c.valid && c.kind != SequenceKind::Degenerate
}

/// The representative with `s > 0` (multiplying `alpha, beta` by `i`
/// negates `x`, `y`, `s`, `t`).
pub fn canonicalize(c: &SequenceCandidate) -> SequenceCandidate {
    if c.s < 0 {
        reconstruct(&Integer::from(-&c.x), &Integer::from(-&c.y))
    } else {
        c.clone()
    }
}

/// Canonical identity of a non-degenerate pair: `(s, t)` with `s > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairKey {
    /// `(alpha + beta)^2 > 0`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub s: Integer,
    /// `(alpha - beta)^2`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub t: Integer,
}

impl PairKey {
    /// Key of a canonical candidate.
    pub fn of(c: &SequenceCandidate) -> Self {
        let c = canonicalize(c);
        PairKey { s: c.s, t: c.t }
    }

    /// From raw `(s, t)`; `s - t` must be divisible by 4.
    pub fn new(s: i64, t: i64) -> Self {
        PairKey { s: Integer::from(s), t: Integer::from(t) }
    }

    /// `y = (s - t) / 4`.
    pub fn y(&self) -> Integer {
        Integer::from(&self.s - &self.t) / 4
    }

    /// `x = (s + t) / 2`.
    pub fn x(&self) -> Integer {
        Integer::from(&self.s + &self.t) / 2
    }

    /// True when `s` is a perfect square.
    pub fn is_lucas(&self) -> bool {
        is_square(&self.s)
    }

    /// Surd notation: `a±√b` or `(a±√b)/2` for Lucas pairs, `(√a±√b)/2`
    /// for Lehmer pairs.
    pub fn display_lucas(&self) -> String {
        let a = Integer::from(self.s.sqrt_ref());
        if a.is_even() && self.t.is_divisible_u(4) {
            format!("{}±√{}", Integer::from(&a / 2), Integer::from(&self.t / 4))
        } else {
            format!("({a}±√{})/2", self.t)
        }
    }

    /// Surd notation `(√s±√t)/2`.
    pub fn display_lehmer(&self) -> String {
        format!("(√{}±√{})/2", self.s, self.t)
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_lucas() {
            f.write_str(&self.display_lucas())
        } else {
            f.write_str(&self.display_lehmer())
        }
    }
}

/// `u_1, ..., u_n` of the Lucas sequence with `alpha + beta = a`,
/// `alpha beta = y`.
pub fn lucas_terms(a: &Integer, y: &Integer, n: u32) -> Vec<Integer> {
    let mut u = vec![Integer::new(), Integer::from(1)];
    for k in 1..n as usize {
        let next = Integer::from(a * &u[k]) - Integer::from(y * &u[k - 1]);
        u.push(next);
    }
    u
}

/// `u_0, ..., u_n` of the Lehmer sequence with `(alpha + beta)^2 = s`,
/// `alpha beta = y`.
pub fn lehmer_terms(s: &Integer, y: &Integer, n: u32) -> Vec<Integer> {
    let mut u = vec![Integer::new(), Integer::from(1)];
    for k in 1..n as usize {
        let lead = if (k + 1) % 2 == 1 { Integer::from(s * &u[k]) } else { u[k].clone() };
        u.push(lead - Integer::from(y * &u[k - 1]));
    }
    u
}

/// True when some prime divides `target` but not `base`.
fn has_new_prime(target: &Integer, base: &Integer) -> bool {
    let mut rest = Integer::from(target.abs_ref());
    if rest == 0 {
        return false;
    }
    loop {
        let g = Integer::from(rest.gcd_ref(base));
        if g == 1 {
            break;
        }
        rest /= g;
    }
    rest > 1
}

/// Direct test of the definition: does `u_n` have a prime divisor not
/// dividing the product of `(alpha - beta)^2` (Lucas) or
/// `(alpha^2 - beta^2)^2` (Lehmer) with the earlier terms?
pub fn has_primitive_divisor_direct(key: &PairKey, kind: SequenceKind, n: u32) -> Result<bool> {
    let y = key.y();
    match kind {
        SequenceKind::Lucas => {
            if !key.is_lucas() {
                return Err(Error::InvalidInput("not a Lucas pair".into()));
            }
            let a = Integer::from(key.s.sqrt_ref());
            let u = lucas_terms(&a, &y, n);
            let mut base = key.t.clone();
            for v in &u[2..n as usize] {
                base *= v;
            }
            Ok(has_new_prime(&u[n as usize], &base))
        }
        SequenceKind::Lehmer => {
            let u = lehmer_terms(&key.s, &y, n);
            let mut base = Integer::from(&key.s * &key.t);
            for v in &u[3..n as usize] {
                base *= v;
            }
            Ok(has_new_prime(&u[n as usize], &base))
        }
        SequenceKind::Degenerate => Err(Error::InvalidInput("degenerate pair".into())),
    }
}

/// The criterion: the `n`-th term has no primitive divisor exactly when
/// `F_n(x, y)` is an admissible right-hand side.
pub fn no_primitive_divisor_by_criterion(key: &PairKey, n: u32) -> Result<bool> {
    let form = build_form(n)?;
    Ok(FormTarget::new(n)?.contains(&form.evaluate(&key.x(), &key.y())))
}

/// Both tests; an error when they disagree.
pub fn check_primitive_divisor(key: &PairKey, kind: SequenceKind, n: u32) -> Result<bool> {
    let direct = has_primitive_divisor_direct(key, kind, n)?;
    let criterion = !no_primitive_divisor_by_criterion(key, n)?;
    if direct != criterion {
        return Err(Error::Invariant(format!(
            "n = {n}, pair {key}: direct computation says primitive divisor = {direct}, criterion says {criterion}"
        )));
    }
    Ok(direct)
}

/// Lucas pairs are tabulated for `n > 4`, `n != 6`.
pub fn lucas_index_in_scope(n: u32) -> bool {
    n > 4 && n != 6
}

/// Lehmer pairs are tabulated for `n > 6`, `n != 8, 10, 12`.
pub fn lehmer_index_in_scope(n: u32) -> bool {
    n > 6 && ![8, 10, 12].contains(&n)
}

/// Rows of one table: index to canonical pairs.
pub type SequenceTable = BTreeMap<u32, BTreeSet<PairKey>>;

/// Audit record of one solution that did not make it into a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    /// Index.
    pub n: u32,
    /// `x`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub x: Integer,
    /// `y`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub y: Integer,
    /// Why.
    pub reason: &'static str,
}

/// Both tables and the filtering audit trail.
#[derive(Debug, Clone, Default)]
pub struct Tables {
    /// Lucas pairs.
    pub lucas: SequenceTable,
    /// Lehmer pairs.
    pub lehmer: SequenceTable,
    /// Solutions that were filtered out.
    pub rejected: Vec<Rejection>,
}

/// Build both tables from the complete solution lists of each index.
/// With `check_direct`, every emitted pair is also checked against the
/// definition.
pub fn emit_tables(solutions: &BTreeMap<u32, Vec<(Integer, Integer)>>, check_direct: bool) -> Result<Tables> {
    let mut out = Tables::default();
    for (&n, list) in solutions {
        for (x, y) in list {
            let c = canonicalize(&reconstruct(x, y));
            let reason = if c.kind == SequenceKind::Degenerate {
                Some("degenerate")
            } else if !c.valid {
                Some("gcd(s, y) != 1")
            } else {
                None
            };
            if let Some(reason) = reason {
                out.rejected.push(Rejection { n, x: x.clone(), y: y.clone(), reason });
                continue;
            }
            let key = PairKey::of(&c);
            if key.is_lucas() && lucas_index_in_scope(n) {
                if check_direct && check_primitive_divisor(&key, SequenceKind::Lucas, n)? {
                    return Err(Error::Invariant(format!("n = {n}: {key} has a primitive divisor")));
                }
                out.lucas.entry(n).or_default().insert(key.clone());
            }
            if lehmer_index_in_scope(n) {
                if check_direct && check_primitive_divisor(&key, SequenceKind::Lehmer, n)? {
                    return Err(Error::Invariant(format!("n = {n}: {key} has a primitive divisor")));
                }
                out.lehmer.entry(n).or_default().insert(key);
            } else if !(key.is_lucas() && lucas_index_in_scope(n)) {
                out.rejected.push(Rejection { n, x: x.clone(), y: y.clone(), reason: "index out of scope" });
            }
        }
    }
    Ok(out)
}

/// Text rendering: one row per index, pairs sorted by `(s, t)`.
pub fn render_table(table: &SequenceTable, lucas: bool) -> String {
    let mut s = String::new();
    for (n, row) in table {
        let cells: Vec<String> =
            row.iter().map(|k| if lucas { k.display_lucas() } else { k.display_lehmer() }).collect();
        s.push_str(&format!("{n}: {}\n", cells.join(", ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn reconstruct_examples() {
        let c = reconstruct(&z(34), &z(55));
        assert_eq!((c.s.clone(), c.t.clone()), (z(144), z(-76)));
        assert_eq!(c.kind, SequenceKind::Lucas);
        assert_eq!(PairKey::of(&c).display_lucas(), "6±√-19");
        let c = reconstruct(&z(-1), &z(2));
        assert_eq!(c.kind, SequenceKind::Lehmer);
        assert_eq!(PairKey::of(&c).display_lehmer(), "(√3±√-5)/2");
        assert_eq!(reconstruct(&z(-2), &z(1)).kind, SequenceKind::Degenerate);
    }

    #[test]
    fn canonical_is_fixed_point_and_merges_i_multiples() {
        let c = reconstruct(&z(-1), &z(2));
        assert_eq!(canonicalize(&canonicalize(&c)), canonicalize(&c));
        // i alpha, i beta: (x, y) -> (-x, -y).
        let d = reconstruct(&z(1), &z(-2));
        assert_eq!(PairKey::of(&c), PairKey::of(&d));
        // (x, y) and (-x, y) are different pairs in general.
        let e = reconstruct(&z(1), &z(2));
        assert_ne!(PairKey::of(&c), PairKey::of(&e));
    }

    #[test]
    fn degeneracy_cases_are_roots_of_unity() {
        // alpha/beta = zeta with zeta + 1/zeta = x/y = c: the order of zeta
        // for c = 0, 1, -1, 2, -2 is 4, 6, 3, 1, 2; check zeta^order = 1
        // via the Chebyshev recurrence V_k = c V_{k-1} - V_{k-2} for
        // zeta^k + zeta^-k, which must equal 2 at the order.
        for (c, order) in [(0i64, 4usize), (1, 6), (-1, 3), (2, 1), (-2, 2)] {
            let mut v = vec![2i64, c];
            for k in 2..=order {
                v.push(c * v[k - 1] - v[k - 2]);
            }
            assert_eq!(v[order], 2, "c = {c}");
            for y in [-3i64, 1, 7] {
                assert!(is_degenerate(&z(c * y), &z(y)));
            }
        }
        assert!(!is_degenerate(&z(3), &z(1)));
    }

    #[test]
    fn fibonacci() {
        let key = PairKey::new(1, 5);
        let u = lucas_terms(&z(1), &key.y(), 13);
        assert_eq!(u[12], 144);
        assert_eq!(u[13], 233);
        assert!(!check_primitive_divisor(&key, SequenceKind::Lucas, 12).unwrap());
        assert!(check_primitive_divisor(&key, SequenceKind::Lucas, 13).unwrap());
    }

    #[test]
    fn lehmer_recurrence_matches_closed_form() {
        // alpha, beta = (sqrt 3 +- sqrt -5)/2: u_3 = s - y, u_4 = s - 2y.
        let key = PairKey::new(3, -5);
        let u = lehmer_terms(&key.s, &key.y(), 7);
        let y = key.y();
        assert_eq!(u[3], Integer::from(&key.s - &y));
        assert_eq!(u[4], Integer::from(&key.s - Integer::from(&y * 2)));
        assert!(!check_primitive_divisor(&key, SequenceKind::Lehmer, 7).unwrap());
        assert_eq!(build_form(7).unwrap().evaluate(&key.x(), &key.y()), 1);
    }

    #[test]
    fn display_formats() {
        assert_eq!(PairKey::new(144, -1364).display_lucas(), "6±√-341");
        assert_eq!(PairKey::new(1, -7).display_lucas(), "(1±√-7)/2");
        assert_eq!(PairKey::new(4, -8).display_lucas(), "1±√-2");
        assert_eq!(PairKey::new(7, -1).display_lehmer(), "(√7±√-1)/2");
    }
}
