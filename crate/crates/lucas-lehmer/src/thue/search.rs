//! The final bound `Y3` on `|y|` and the searches that produce the complete
//! solution set: a direct search over small `|y|` and a test of the
//! convergents of every root.

use std::collections::BTreeMap;

use rug::{Float, Integer};
use serde::Serialize;

use super::ledger::BoundLedger;
use crate::contfrac::convergents_up_to;
use crate::error::Result;
use crate::forms::evaluate_coeffs;
use crate::numberfield::{AlgebraicReal, FieldData};
use crate::precision::{ceil_to_integer, floor_to_integer};

/// Where a solution was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Exhaustive search over small `|y|`.
    DirectSearch,
    /// `x/y` is a convergent of a root.
    Convergent,
}

/// One solution `(x, y)` with `F(x, y) = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThueSolution {
    /// `x`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub x: Integer,
    /// `y`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub y: Integer,
    /// `F(x, y)`.
    pub value: i64,
    /// How it was found (the first search that met it).
    pub provenance: Provenance,
}

/// A deduplicated set of solutions, each re-verified exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThueSolutionSet {
    map: BTreeMap<(Integer, Integer), ThueSolution>,
}

impl ThueSolutionSet {
    /// Add a candidate if it solves `F(x, y) in targets`; returns whether it
    /// was new and valid.
    pub fn offer(
        &mut self,
        coeffs: &[Integer],
        targets: &[i64],
        x: Integer,
        y: Integer,
        provenance: Provenance,
    ) -> bool {
        let v = evaluate_coeffs(coeffs, &x, &y);
        let Some(value) = v.to_i64().filter(|v| targets.contains(v)) else {
            return false;
        };
        let key = (x.clone(), y.clone());
        if self.map.contains_key(&key) {
            return false;
        }
        self.map.insert(key, ThueSolution { x, y, value, provenance });
        true
    }

    /// Solutions sorted by `(x, y)`.
    pub fn solutions(&self) -> impl Iterator<Item = &ThueSolution> {
        self.map.values()
    }

    /// Number of solutions.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `(max |x|, max |y|)`.
    pub fn extent(&self) -> (Integer, Integer) {
        let mut xm = Integer::new();
        let mut ym = Integer::new();
        for s in self.map.values() {
            xm = xm.max(Integer::from(s.x.abs_ref()));
            ym = ym.max(Integer::from(s.y.abs_ref()));
        }
        (xm, ym)
    }

    /// Re-verify every member.
    pub fn verify(&self, coeffs: &[Integer]) -> bool {
        self.map.values().all(|s| evaluate_coeffs(coeffs, &s.x, &s.y) == s.value)
    }

    /// Merge another set into this one.
    pub fn extend(&mut self, other: ThueSolutionSet) {
        for (k, v) in other.map {
            self.map.entry(k).or_insert(v);
        }
    }
}

/// `Y3 = min_{j1 < j2} mu_+ (E_{j1}^A + E_{j2}^A) / |xi_{j1} - xi_{j2}|`
/// with `E_j = prod_i max(|eps_i^(j)|, 1/|eps_i^(j)|)`.
pub fn y3_bound(f: &FieldData, ledger: &BoundLedger, a: &Integer) -> Float {
    let d = f.degree();
    let bits = f.prec.bits();
    let e: Vec<Float> = (0..d)
        .map(|j| {
            let mut p = Float::with_val(bits, 1);
            for i in 0..d - 1 {
                let v = f.units.abs_conjugate(i, j);
                if *v >= 1 {
                    p *= v;
                } else {
                    p /= v;
                }
            }
            p.pow(a)
        })
        .collect();
    let mut best: Option<Float> = None;
    for j1 in 0..d {
        for j2 in j1 + 1..d {
            let diff = Float::with_val(bits, f.root(j1) - f.root(j2)).abs();
            let v = Float::with_val(bits, &e[j1] + &e[j2]) * &ledger.mu_plus / diff;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.expect("d >= 2")
}

use rug::ops::Pow;

/// Every solution with `|y| <= ymax`: for each `y` and each real root
/// `xi`, the integers `x` with `|x - xi y| <= max|m|^(1/d)` are tested
/// exactly (a solution has some factor `|x - xi^(l) y|` that small).
pub fn direct_search(
    coeffs: &[Integer],
    roots: &[Float],
    targets: &[i64],
    ymax: &Integer,
    out: &mut ThueSolutionSet,
) {
    let d = roots.len() as u32;
    let prec = roots[0].prec();
    let mmax = targets.iter().map(|t| t.unsigned_abs()).max().unwrap_or(1);
    let radius = Float::with_val(prec, mmax).pow(Float::with_val(prec, 1) / d) + 1e-9f64;
    let ymax = ymax.to_i64().expect("small direct-search bound");
    for y in -ymax..=ymax {
        let yi = Integer::from(y);
        for r in roots {
            let c = Float::with_val(prec, r * y);
            let lo = ceil_to_integer(&Float::with_val(prec, &c - &radius));
            let hi = floor_to_integer(&Float::with_val(prec, &c + &radius));
            let mut x = lo;
            while x <= hi {
                out.offer(coeffs, targets, x.clone(), yi.clone(), Provenance::DirectSearch);
                x += 1;
            }
        }
    }
}

/// Test `(p, q)` and `(-p, -q)` for every convergent `p/q` of every root
/// with `q <= qmax`.
pub fn convergent_search(
    coeffs: &[Integer],
    roots: &[AlgebraicReal],
    targets: &[i64],
    qmax: &Integer,
    out: &mut ThueSolutionSet,
) -> Result<()> {
    for r in roots {
        for (p, q) in convergents_up_to(r, qmax)? {
            out.offer(coeffs, targets, Integer::from(-&p), Integer::from(-&q), Provenance::Convergent);
            out.offer(coeffs, targets, p, q, Provenance::Convergent);
        }
    }
    Ok(())
}

/// Combined search: direct up to `max(Y1, Y2')`, convergents up to `Y3`.
pub fn final_search(
    coeffs: &[Integer],
    targets: &[i64],
    f: &FieldData,
    ledger: &BoundLedger,
    y3: &Float,
) -> Result<ThueSolutionSet> {
    let roots: Vec<Float> = (0..f.degree()).map(|l| f.root(l).clone()).collect();
    let mut out = ThueSolutionSet::default();
    let small = ledger.y1.clone().max(ledger.y2p.clone());
    direct_search(coeffs, &roots, targets, &small, &mut out);
    convergent_search(coeffs, &f.roots, targets, &floor_to_integer(y3), &mut out)?;
    Ok(out)
}
