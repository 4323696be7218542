//! The constant ledger: shape constants `C5, C6, Y1, Y2'`, the height
//! product `H`, the Baker-Wustholz constant `K4`, `C7 = 2 K4` and the
//! initial exponent bound `C9`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

use super::relations::{alpha0_log, unit_logs, RelationSet};
use super::ThueProblem;
use crate::error::{Error, Result};
use crate::numberfield::height::{height_from_orbit, modified_height, primitive_leading_coefficient};
use crate::numberfield::{FieldData, FieldElement};
use crate::precision::{ceil_to_integer, floor_to_integer};

/// Shape constants for one right-hand side magnitude.
#[derive(Debug, Clone)]
pub struct ShapeConstants {
    /// `|m|`.
    pub rhs: i64,
    /// `C1 = 2^(d-1) |m| / min_i prod_{l != i} |xi_i - xi_l|`.
    pub c1: Float,
    /// `Y1`.
    pub y1: Integer,
    /// `Y2'`.
    pub y2p: Integer,
    /// `C6`.
    pub c6: Float,
}

/// All constants needed before lattice reduction.
#[derive(Debug, Clone)]
pub struct BoundLedger {
    /// Degree `d`.
    pub d: usize,
    /// `C5`.
    pub c5: Float,
    /// `C6` (maximum over right-hand sides).
    pub c6: Float,
    /// `Y1` (maximum over right-hand sides).
    pub y1: Integer,
    /// `Y2'` (maximum over right-hand sides).
    pub y2p: Integer,
    /// Per right-hand side shape constants.
    pub shapes: Vec<ShapeConstants>,
    /// Number of logarithms in the reduced linear forms.
    pub r: usize,
    /// Degree `D` used in the modified heights and in `K4`.
    pub big_d: u32,
    /// `H` (maximum over forms).
    pub h: Float,
    /// `K4`.
    pub k4: Float,
    /// `C7 = 2 K4`.
    pub c7: Float,
    /// `C9`.
    pub c9: Float,
    /// `t0`.
    pub t0: u32,
    /// `T`.
    pub big_t: u32,
    /// Lattice dimension `p`.
    pub p: usize,
    /// Coefficient multiplier (`(d - p) T` or `T`).
    pub multiplier: u32,
    /// `mu_+`: largest conjugate modulus over all representatives and 1.
    pub mu_plus: Float,
}

impl BoundLedger {
    /// `d / C5`.
    pub fn d_over_c5(&self) -> Float {
        Float::with_val(self.c5.prec(), self.d as u32) / &self.c5
    }
}

/// Signed conjugates of `mu`.
pub(crate) fn mu_conjugates(f: &FieldData, mu: &FieldElement) -> Vec<Float> {
    (0..f.degree()).map(|l| f.exact.embed(mu, f.root(l))).collect()
}

fn abs(x: &Float) -> Float {
    Float::with_val(x.prec(), x.abs_ref())
}

/// Inverse of a square float matrix by Gauss-Jordan elimination.
pub(crate) fn float_inverse(m: &[Vec<Float>]) -> Result<Vec<Vec<Float>>> {
    let n = m.len();
    let prec = m[0][0].prec();
    let mut a: Vec<Vec<Float>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Float::with_val(prec, u32::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&x, &y| a[x][c].cmp_abs(&a[y][c]).expect("finite"))
            .expect("nonempty");
        if a[piv][c].is_zero() {
            return Err(Error::Invariant("singular regulator matrix".into()));
        }
        a.swap(c, piv);
        let p = a[c][c].clone();
        for v in a[c].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c].clone();
                for cc in 0..2 * n {
                    let t = Float::with_val(prec, &a[c][cc] * &f);
                    a[r][cc] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `C5 = max_{i0} ||U_{i0}^{-1}||_inf`, where `U_{i0}` holds
/// `log|eps_i^(l)|` for `l != i0`.
pub fn c5(f: &FieldData) -> Result<Float> {
    let d = f.degree();
    let mut best = f.prec.zero();
    for i0 in 0..d {
        let m: Vec<Vec<Float>> = (0..d)
            .filter(|&l| l != i0)
            .map(|l| (0..d - 1).map(|i| f.units.abs_conjugate(i, l).clone().ln()).collect())
            .collect();
        let inv = float_inverse(&m)?;
        for row in &inv {
            let s = row.iter().fold(f.prec.zero(), |acc, v| acc + abs(v));
            if s > best {
                best = s;
            }
        }
    }
    Ok(best)
}

/// Root-separation data shared by the shape constants.
struct RootGeometry {
    min_prod: Float,
    min_diff: Float,
    max_diff: Float,
}

fn root_geometry(roots: &[Float]) -> RootGeometry {
    let d = roots.len();
    let prec = roots[0].prec();
    let mut min_prod: Option<Float> = None;
    let mut min_diff: Option<Float> = None;
    let mut max_diff = Float::new(prec);
    for i in 0..d {
        let mut prod = Float::with_val(prec, 1);
        for l in 0..d {
            if l != i {
                let diff = Float::with_val(prec, &roots[i] - &roots[l]).abs();
                prod *= &diff;
                if min_diff.as_ref().is_none_or(|m| diff < *m) {
                    min_diff = Some(diff.clone());
                }
                if diff > max_diff {
                    max_diff = diff;
                }
            }
        }
        if min_prod.as_ref().is_none_or(|m| prod < *m) {
            min_prod = Some(prod);
        }
    }
    RootGeometry { min_prod: min_prod.expect("d >= 2"), min_diff: min_diff.expect("d >= 2"), max_diff }
}

/// `C1 = 2^(d-1) |m| / min_i prod_{l != i} |xi_i - xi_l|` for real roots.
pub fn c1_from_roots(roots: &[Float], rhs: i64) -> Float {
    let g = root_geometry(roots);
    let d = roots.len() as u32;
    let prec = roots[0].prec();
    Float::with_val(prec, 2).pow(d - 1) * Float::with_val(prec, rhs.unsigned_abs()) / g.min_prod
}

/// `Y1 = ceil((4 C1)^(1/(d-2)))`: beyond it every solution is a convergent.
pub fn y1_from_c1(c1: &Float, d: usize) -> Integer {
    let e = Float::with_val(c1.prec(), 1) / (d as u32 - 2);
    ceil_to_integer(&Float::with_val(c1.prec(), c1 * 4u32).pow(e))
}

/// Shape constants for one magnitude `|m|` with representative conjugate
/// moduli `mu_abs`.
pub fn shape_constants(roots: &[Float], rhs: i64, mu_abs: &[Float]) -> ShapeConstants {
    let prec = roots[0].prec();
    let d = roots.len();
    let geo = root_geometry(roots);
    let c1 = c1_from_roots(roots, rhs);
    let c2 = Float::with_val(prec, &geo.min_diff / 2u32);
    let rat = Float::with_val(prec, &geo.max_diff / &geo.min_diff);
    let mu_plus = mu_abs.iter().max_by(|a, b| a.total_cmp(b)).expect("nonempty").clone();
    let mu_minus = mu_abs.iter().min_by(|a, b| a.total_cmp(b)).expect("nonempty").clone();
    let y1 = y1_from_c1(&c1, d);
    let inv_d = Float::with_val(prec, 1) / d as u32;
    let lead = Float::with_val(prec, &rat * &c1) * 2u32 / &c2;
    let y2p = y1
        .clone()
        .max(floor_to_integer(&Float::with_val(prec, &mu_plus / &c2)))
        .max(floor_to_integer(&Float::with_val(prec, lead.clone().pow(&inv_d))));
    let y2_next = Float::with_val(prec, Integer::from(&y2p + 1)).pow(d as u32);
    let c3 = Float::with_val(prec, &geo.max_diff + Float::with_val(prec, &c1 / y2_next));
    let ln2 = Float::with_val(prec, Constant::Log2);
    let c6 = ln2 * lead * Float::with_val(prec, c3 / mu_minus).pow(d as u32);
    ShapeConstants { rhs, c1, y1, y2p, c6 }
}

/// Modified height of a unit ratio `eps^(k)/eps^(j)` (an algebraic unit).
fn unit_ratio_height(f: &FieldData, i: usize, j: usize, k: usize) -> Float {
    let orbit: Vec<Float> = f
        .galois
        .iter()
        .map(|g| Float::with_val(f.prec.bits(), f.units.abs_conjugate(i, g[k]) / f.units.abs_conjugate(i, g[j])))
        .collect();
    height_from_orbit(&orbit, &Integer::from(1))
}

/// Height of `alpha_0` for `(i0, j, k, mu)`.
fn alpha0_height(f: &FieldData, mu: &[Float], i0: usize, j: usize, k: usize) -> Result<Float> {
    let bits = f.prec.bits();
    let (mut us, mut ws) = (Vec::new(), Vec::new());
    for g in &f.galois {
        let r = |l: usize| f.root(g[l]);
        us.push(Float::with_val(bits, r(i0) - r(j)) * &mu[g[k]]);
        ws.push(Float::with_val(bits, r(i0) - r(k)) * &mu[g[j]]);
    }
    let lc = primitive_leading_coefficient(&us, &ws)?;
    let orbit: Vec<Float> = us.iter().zip(&ws).map(|(u, w)| Float::with_val(bits, u / w)).collect();
    Ok(height_from_orbit(&orbit, &lc))
}

/// `H` of one form: the product of the modified heights of the
/// logarithms that remain in the reduced form.
pub fn form_height(
    f: &FieldData,
    set: &RelationSet,
    mu: &FieldElement,
    i0: usize,
) -> Result<(Float, usize)> {
    let d = f.degree();
    let (j, k) = set.pair_for(i0, d);
    let big_d = f.height_degree;
    let logs = unit_logs(f, j, k);
    let mut h = f.prec.float(1);
    let mut r = 0;
    for s in set.surviving(d) {
        let gamma = logs[s].clone().exp();
        h *= modified_height(&unit_ratio_height(f, s, j, k), &gamma, big_d);
        r += 1;
    }
    if !set.is_homogeneous() {
        let conj = mu_conjugates(f, mu);
        let gamma = alpha0_log(f, mu, i0, j, k).exp();
        h *= modified_height(&alpha0_height(f, &conj, i0, j, k)?, &gamma, big_d);
        r += 1;
    }
    Ok((h, r))
}

/// `K4 = 18 (r+1)! r^(r+1) (32 D)^(r+2) log(2 D r) H`.
pub fn k4(r: usize, big_d: u32, h: &Float) -> Float {
    let prec = h.prec();
    let r32 = r as u32;
    let fact = Float::with_val(prec, Integer::from(Integer::factorial(r32 + 1)));
    let rr = Float::with_val(prec, r32).pow(r32 + 1);
    let dd = Float::with_val(prec, 32 * big_d).pow(r32 + 2);
    let lg = Float::with_val(prec, 2 * big_d * r32).ln();
    fact * 18u32 * rr * dd * lg * h
}

/// `C9 = (2 C5 / d) (log(t0 C6) + C7 log(C5 C7 / d))`.
pub fn c9(c5: &Float, c6: &Float, c7: &Float, t0: u32, d: usize) -> Float {
    let prec = c5.prec();
    let d = d as u32;
    let a = Float::with_val(prec, c6 * t0).ln();
    let b = Float::with_val(prec, Float::with_val(prec, c5 * c7) / d).ln() * c7;
    Float::with_val(prec, c5 * 2u32) / d * (a + b)
}

/// Assemble the ledger of a problem.
pub fn constants(problem: &ThueProblem, f: &FieldData, set: &RelationSet) -> Result<BoundLedger> {
    let d = f.degree();
    let roots: Vec<Float> = (0..d).map(|l| f.root(l).clone()).collect();
    let c5 = c5(f)?;
    let mut shapes = Vec::new();
    let mut h_max = f.prec.zero();
    let mut r_terms = 0;
    let mut mu_plus = f.prec.float(1);
    for m in problem.magnitudes() {
        let reps = f.representatives_for(m)?;
        for mu in &reps.mus {
            let conj: Vec<Float> = mu_conjugates(f, mu).iter().map(abs).collect();
            for c in &conj {
                if *c > mu_plus {
                    mu_plus = c.clone();
                }
            }
            shapes.push(shape_constants(&roots, m, &conj));
            for i0 in 0..d {
                let (h, r) = form_height(f, set, mu, i0)?;
                r_terms = r;
                if h > h_max {
                    h_max = h;
                }
            }
        }
    }
    let max_f = |v: Vec<Float>| v.into_iter().max_by(|a, b| a.total_cmp(b)).expect("nonempty");
    let c6 = max_f(shapes.iter().map(|s| s.c6.clone()).collect());
    let y1 = shapes.iter().map(|s| s.y1.clone()).max().expect("nonempty");
    let y2p = shapes.iter().map(|s| s.y2p.clone()).max().expect("nonempty");
    let big_d = f.height_degree;
    let k4 = k4(r_terms, big_d, &h_max);
    let c7 = Float::with_val(k4.prec(), &k4 * 2u32);
    let c9 = c9(&c5, &c6, &c7, set.t0, d);
    let multiplier = set.coefficient_multiplier(d);
    if set.actual_growth(d) > multiplier {
        return Err(Error::Invariant("coefficient multiplier below actual growth".into()));
    }
    Ok(BoundLedger {
        d,
        c5,
        c6,
        y1,
        y2p,
        shapes,
        r: r_terms,
        big_d,
        h: h_max,
        k4,
        c7,
        c9,
        t0: set.t0,
        big_t: set.big_t(),
        p: set.lattice_dim(d),
        multiplier,
        mu_plus,
    })
}
