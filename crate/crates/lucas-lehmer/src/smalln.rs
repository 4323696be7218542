//! The quadratic cases `n = 5, 8, 10, 12`.
//!
//! Here `F_n` is a binary quadratic form, so `F_n(x, y) = k` alone has
//! infinitely many solutions.  For a Lucas pair `x + 2y = (alpha + beta)^2`
//! is a perfect square `Z^2`; substituting `x = Z^2 - 2y` turns the equation
//! into a quadratic in `y` whose discriminant must be a square, i.e. into a
//! quartic equation `a W^2 = b Z^4 + c`.  The complete solution sets of these
//! quartics are classical results; they are stored as fixtures, checked
//! against an exhaustive bounded search, and then mapped back to `(x, y)`.
//! The single quartic without a classical answer (`n = 12`, `k = -2`) is
//! reduced to a quartic Thue equation and solved with [`crate::thue`].

use std::collections::BTreeSet;

use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{build_form, FormTarget};
use crate::thue::{solve, ThueProblem};

/// The quartic equations that arise, each written as
/// `a * first^2 = b * Z^4 + c(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuarticShape {
    /// `W^2 = 5 Z^4 + 4k`.
    FiveZ4Plus4k,
    /// `2 V^2 = Z^4 + k`.
    TwiceSquare,
    /// `5 V^2 = Z^4 + 4k`.
    FiveTimesSquare,
    /// `W^2 = 3 Z^4 + k`.
    ThreeZ4PlusK,
    /// `3 V^2 = Z^4 + k`.
    ThriceSquare,
}

impl QuarticShape {
    /// `(a, b, c)` with `a * first^2 = b * Z^4 + c`.
    pub fn coefficients(self, k: i64) -> (i64, i64, i64) {
        match self {
            QuarticShape::FiveZ4Plus4k => (1, 5, 4 * k),
            QuarticShape::TwiceSquare => (2, 1, k),
            QuarticShape::FiveTimesSquare => (5, 1, 4 * k),
            QuarticShape::ThreeZ4PlusK => (1, 3, k),
            QuarticShape::ThriceSquare => (3, 1, k),
        }
    }

    /// True when `(first, z)` satisfies the equation.
    pub fn satisfied_by(self, k: i64, first: &Integer, z: &Integer) -> bool {
        let (a, b, c) = self.coefficients(k);
        Integer::from(first * first) * a == Integer::from(z.pow(4u32)) * b + c
    }
}

/// A quartic equation with its complete list of non-negative solutions
/// `(first, Z)`, as established in the literature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarticInstance {
    /// Shape.
    pub shape: QuarticShape,
    /// The parameters `k` the list covers (the union over them).
    pub ks: Vec<i64>,
    /// Complete list of non-negative solutions `(first, Z)`.
    pub known_complete_solutions: Vec<(i64, i64)>,
    /// Who proved completeness.
    pub source: &'static str,
}

impl QuarticInstance {
    /// True when every listed pair satisfies the equation for some `k`.
    pub fn is_consistent(&self) -> bool {
        self.known_complete_solutions.iter().all(|&(w, z)| {
            self.ks.iter().any(|&k| self.shape.satisfied_by(k, &Integer::from(w), &Integer::from(z)))
        })
    }
}

/// The classical complete solution lists used by [`solve_case`].
pub fn catalogued_quartics() -> Vec<QuarticInstance> {
    vec![
        QuarticInstance {
            shape: QuarticShape::FiveZ4Plus4k,
            ks: vec![1, -1],
            known_complete_solutions: vec![(1, 1), (2, 0), (3, 1), (322, 12)],
            source: "Cohn",
        },
        QuarticInstance {
            shape: QuarticShape::FiveTimesSquare,
            ks: vec![1],
            known_complete_solutions: vec![(1, 1), (2, 2)],
            source: "Cohn",
        },
        QuarticInstance {
            shape: QuarticShape::TwiceSquare,
            ks: vec![1],
            known_complete_solutions: vec![(1, 1)],
            source: "Ljunggren",
        },
        // Only the non-negative pairs that actually satisfy the equation;
        // the customary statement of this result lists them transposed.
        QuarticInstance {
            shape: QuarticShape::ThreeZ4PlusK,
            ks: vec![1],
            known_complete_solutions: vec![(1, 0), (2, 1), (7, 2)],
            source: "Ljunggren",
        },
        QuarticInstance {
            shape: QuarticShape::ThriceSquare,
            ks: vec![-1],
            known_complete_solutions: vec![(0, 1)],
            source: "Ljunggren",
        },
        QuarticInstance {
            shape: QuarticShape::ThriceSquare,
            ks: vec![2],
            known_complete_solutions: vec![(1, 1)],
            source: "Ljunggren",
        },
    ]
}

fn exact_sqrt(v: &Integer) -> Option<Integer> {
    if *v < 0 {
        return None;
    }
    let r = Integer::from(v.sqrt_ref());
    (Integer::from(&r * &r) == *v).then_some(r)
}

/// All `(first, Z)` with `0 <= Z <= bound`, `first >= 0` satisfying the
/// shape for parameter `k`, by exact integer square roots.
pub fn bounded_quartic_search(shape: QuarticShape, k: i64, bound: u64) -> Vec<(Integer, Integer)> {
    let (a, b, c) = shape.coefficients(k);
    let mut out = Vec::new();
    for z in 0..=bound {
        let z = Integer::from(z);
        let rhs = Integer::from((&z).pow(4u32)) * b + c;
        if rhs < 0 || !rhs.is_divisible(&Integer::from(a)) {
            continue;
        }
        if let Some(w) = exact_sqrt(&(rhs / a)) {
            out.push((w, z));
        }
    }
    out
}

/// Non-negative solutions of `H^4 - 2 K^4 = +-1` with `K <= bound`.
pub fn fourth_power_pairs(bound: u64) -> Vec<(Integer, Integer)> {
    let mut out = Vec::new();
    for kk in 0..=bound {
        let kk = Integer::from(kk);
        let twice = Integer::from((&kk).pow(4u32)) * 2;
        for v in [Integer::from(&twice + 1), Integer::from(&twice - 1)] {
            if v < 0 {
                continue;
            }
            let h = Integer::from(v.root_ref(4));
            if Integer::from((&h).pow(4u32)) == v {
                out.push((h, kk.clone()));
            }
        }
    }
    out
}

/// True when `a W^2 = b Z^4 + c` has no solution modulo `modulus`.
pub fn locally_obstructed(shape: QuarticShape, k: i64, modulus: i64) -> bool {
    let (a, b, c) = shape.coefficients(k);
    let m = modulus;
    !(0..m).any(|w| (0..m).any(|z| (a * w * w - b * z * z * z * z - c).rem_euclid(m) == 0))
}

/// The integer quadratic form `F_n(X, Y) = X^2 + p X Y + q Y^2` for the
/// quadratic indices.
fn quadratic_coefficients(n: u32) -> Result<(i64, i64)> {
    let form = build_form(n)?;
    if form.degree() != 2 {
        return Err(Error::UnsupportedIndex { n, what: "the quadratic-case solver" });
    }
    let c = form.coeffs();
    let to = |v: &Integer| v.to_i64().ok_or_else(|| Error::Invariant("coefficient overflow".into()));
    Ok((to(&c[1])?, to(&c[2])?))
}

/// The `y` with `F_n(Z^2 - 2y, y) = k` for one value of `Z`.  With
/// `F_n = X^2 + pXY + qY^2` this is `A y^2 - B Z^2 y + Z^4 - k = 0`,
/// `A = 4 - 2p + q`, `B = 4 - p`; the discriminant `B^2 Z^4 - 4A(Z^4 - k)`
/// is the right-hand side of the associated quartic.
pub fn ys_for(n: u32, k: i64, z: &Integer) -> Result<Vec<Integer>> {
    let (p, q) = quadratic_coefficients(n)?;
    let a = 4 - 2 * p + q;
    let b = 4 - p;
    let z2 = Integer::from(z * z);
    let z4 = Integer::from(&z2 * &z2);
    let disc = Integer::from(&z4 * (b * b)) - (Integer::from(&z4 - k) * (4 * a));
    let mut out = Vec::new();
    if let Some(w) = exact_sqrt(&disc) {
        for s in [Integer::from(&w), Integer::from(-&w)] {
            let num = Integer::from(&z2 * b) + s;
            if num.is_divisible(&Integer::from(2 * a)) {
                out.push(num / (2 * a));
            }
        }
    }
    Ok(out)
}

/// The discriminant `disc(Z)` of [`ys_for`], for cross-checking against the
/// quartic shapes.
pub fn discriminant(n: u32, k: i64, z: &Integer) -> Result<Integer> {
    let (p, q) = quadratic_coefficients(n)?;
    let a = 4 - 2 * p + q;
    let b = 4 - p;
    let z4 = Integer::from(z.pow(4u32));
    Ok(Integer::from(&z4 * (b * b)) - (Integer::from(&z4 - k) * (4 * a)))
}

/// Why a case has the solutions it has.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Justification {
    /// The equation has no solution modulo `modulus`.
    Obstructed {
        /// The modulus.
        modulus: i64,
    },
    /// The values of `|Z|` come from classical complete lists.
    Classical {
        /// Who proved completeness.
        sources: Vec<&'static str>,
    },
    /// The values of `|Z|` come from a quartic Thue equation.
    ThueEquation,
}

/// The solutions of one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSolution {
    /// Index.
    pub n: u32,
    /// Right-hand side.
    pub k: i64,
    /// The admissible `|Z|`, `Z^2 = x + 2y`.
    #[serde(serialize_with = "crate::serial::integers")]
    pub zs: Vec<Integer>,
    /// The `(x, y)` solutions, sorted.
    pub solutions: Vec<Pair>,
    /// Why the list is complete.
    pub justification: Justification,
}

/// An `(x, y)` solution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pair {
    /// `x`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub x: Integer,
    /// `y`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub y: Integer,
}

fn classical_zs(shape: QuarticShape, k: i64) -> Vec<Integer> {
    catalogued_quartics()
        .iter()
        .filter(|q| q.shape == shape && q.ks.contains(&k))
        .flat_map(|q| q.known_complete_solutions.iter().map(|&(w, z)| (w, z)))
        .filter(|&(w, z)| shape.satisfied_by(k, &Integer::from(w), &Integer::from(z)))
        .map(|(_, z)| Integer::from(z))
        .collect()
}

/// `|Z|` for `n = 8`, `k = 2`: `Z = 2HK` with `H^4 - 2K^4 = +-1`.
fn zs_from_fourth_powers() -> Vec<Integer> {
    // Complete list (Delone and Faddeev).
    [(1i64, 1i64), (1, 0)].iter().map(|&(h, k)| Integer::from(2 * h * k)).collect()
}

/// `|Z|` for `n = 10`, `k = +-5`: `Z = 5U` with `V^2 = 125 U^4 +- 4`, whose
/// only solutions have `U in {0, 1}` (Robbins); each `U` belongs to one sign.
fn zs_from_fibonacci(k: i64) -> Vec<Integer> {
    [0i64, 5]
        .into_iter()
        .filter(|z| {
            let rhs = z.pow(4) + 4 * k;
            rhs >= 0 && rhs % 5 == 0 && exact_sqrt(&Integer::from(rhs / 5)).is_some()
        })
        .map(Integer::from)
        .collect()
}

/// Moduli tried when looking for a local obstruction.
const OBSTRUCTION_MODULI: [i64; 7] = [3, 9, 8, 16, 5, 25, 4];

/// The quartic that `(n, k)` reduces to, as `(shape, parameter)`.
fn associated_quartic(n: u32, k: i64) -> (QuarticShape, i64) {
    match n {
        5 => (QuarticShape::FiveZ4Plus4k, k),
        8 => (QuarticShape::TwiceSquare, k),
        10 => (QuarticShape::FiveTimesSquare, k),
        _ => (QuarticShape::ThreeZ4PlusK, k),
    }
}

/// The solutions `(S, T)` of `S^4 - 4S^3T - 12S^2T^2 + 8ST^3 + 4T^4 = 1`.
pub fn solve_special_thue_12() -> Result<Vec<(Integer, Integer)>> {
    let report = solve(&ThueProblem::special_quartic())?;
    Ok(report.solutions.solutions().map(|s| (s.x.clone(), s.y.clone())).collect())
}

/// `W^2 + 2 = 3 Z^4` from `W - sqrt(-2) = A U^4` with `U = S - T sqrt(-2)`:
/// `|Z|` is the norm `S^2 + 2T^2` of `U`.
pub fn z_from_special_thue(s: &Integer, t: &Integer) -> Integer {
    Integer::from(s * s) + Integer::from(t * t) * 2
}

/// `|Z|` for `(n, k)` together with the justification.
fn admissible_zs(n: u32, k: i64) -> Result<(Vec<Integer>, Justification)> {
    let (shape, param) = associated_quartic(n, k);
    if let Some(&m) = OBSTRUCTION_MODULI.iter().find(|&&m| locally_obstructed(shape, param, m)) {
        return Ok((Vec::new(), Justification::Obstructed { modulus: m }));
    }
    let classical = |v: Vec<Integer>, s: &'static str| (v, Justification::Classical { sources: vec![s] });
    Ok(match (n, k) {
        (5, 1) | (5, -1) => classical(classical_zs(QuarticShape::FiveZ4Plus4k, k), "Cohn"),
        // W = 5V: 5V^2 = Z^4 + 4.
        (5, 5) => classical(classical_zs(QuarticShape::FiveTimesSquare, 1), "Cohn"),
        (8, 1) => classical(classical_zs(QuarticShape::TwiceSquare, 1), "Ljunggren"),
        // (Z^2 - 1)(Z^2 + 1) = 2V^2 forces Z^2 - 1 to be a square.
        (8, -1) => classical(vec![Integer::from(1)], "elementary"),
        (8, 2) => classical(zs_from_fourth_powers(), "Delone-Faddeev"),
        (10, 1) => classical(classical_zs(QuarticShape::FiveTimesSquare, 1), "Cohn"),
        (10, 5) | (10, -5) => classical(zs_from_fibonacci(k), "Robbins"),
        (12, 1) => classical(classical_zs(QuarticShape::ThreeZ4PlusK, 1), "Ljunggren"),
        // W = 3V: Z^4 - 3V^2 = 1.
        (12, -3) => classical(classical_zs(QuarticShape::ThriceSquare, -1), "Ljunggren"),
        // W = 3V: 3V^2 - Z^4 = 2.
        (12, 6) => classical(classical_zs(QuarticShape::ThriceSquare, 2), "Ljunggren"),
        (12, -2) => {
            let zs = solve_special_thue_12()?.iter().map(|(s, t)| z_from_special_thue(s, t)).collect();
            (zs, Justification::ThueEquation)
        }
        _ => {
            return Err(Error::Invariant(format!("no complete quartic solution list for n = {n}, k = {k}")));
        }
    })
}

/// All `(x, y)` with `F_n(x, y) = k` and `x + 2y` a perfect square, for
/// `n in {5, 8, 10, 12}` and admissible `k`.
pub fn solve_case(n: u32, k: i64) -> Result<CaseSolution> {
    if ![5, 8, 10, 12].contains(&n) {
        return Err(Error::UnsupportedIndex { n, what: "the quadratic-case solver" });
    }
    if !FormTarget::new(n)?.contains(&Integer::from(k)) {
        return Err(Error::InadmissibleRhs { n, k });
    }
    let (zs, justification) = admissible_zs(n, k)?;
    let form = build_form(n)?;
    let mut set = BTreeSet::new();
    let mut zset = BTreeSet::new();
    for z in &zs {
        let z = Integer::from(z.abs_ref());
        let ys = ys_for(n, k, &z)?;
        if ys.is_empty() {
            return Err(Error::Invariant(format!("n = {n}, k = {k}: |Z| = {z} gives no integer y")));
        }
        for y in ys {
            let x = Integer::from(&z * &z) - Integer::from(&y * 2);
            if form.evaluate(&x, &y) != k || exact_sqrt(&Integer::from(&x + Integer::from(&y * 2))).is_none() {
                return Err(Error::Invariant(format!("n = {n}, k = {k}: ({x}, {y}) fails re-verification")));
            }
            set.insert(Pair { x, y });
        }
        zset.insert(z);
    }
    Ok(CaseSolution { n, k, zs: zset.into_iter().collect(), solutions: set.into_iter().collect(), justification })
}

/// [`solve_case`] for every admissible `k`.
pub fn solve_index(n: u32) -> Result<Vec<CaseSolution>> {
    FormTarget::new(n)?.values().map(|k| solve_case(n, k)).collect()
}

/// For `3V^2 - Z^4 = 2`: positive `(V, Z)` with
/// `2(3V^2 + Z^4 + 2 V Z^2 sqrt 3) = r + s sqrt 3`, i.e. `2(3V^2 + Z^4) = r`
/// and `4 V Z^2 = s`.
pub fn theta_preimages(r: i64, s: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if s <= 0 || s % 4 != 0 {
        return out;
    }
    let vz2 = s / 4;
    for z in 1..=vz2 {
        if vz2 % (z * z) == 0 {
            let v = vz2 / (z * z);
            if 2 * (3 * v * v + z * z * z * z) == r {
                out.push((v, z));
            }
        }
    }
    out
}
