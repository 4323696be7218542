//! Conjugate-pair choices and the multiplicative dependence relations
//! between the numbers `alpha_i = |eps_i^(k) / eps_i^(j)|`.
//!
//! The catalogue is input data; [`verify_relations`] confirms each entry
//! as an exact identity in the field before it is used.

use rug::Float;

use crate::error::{Error, Result};
use crate::numberfield::{FieldData, FieldElement, FieldKey};
use crate::precision::Precision;

/// `t0 log alpha_e = sum_s c_s log alpha_s` (unit indices are 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRelation {
    /// Index of the eliminated unit.
    pub eliminated: usize,
    /// `(s, c_s)` pairs over surviving units.
    pub exponents: Vec<(usize, i64)>,
}

/// `t0 log alpha_0 = sum_i c_i log alpha_i` for one right-hand side
/// magnitude (all `d - 1` units, 1-based order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alpha0Relation {
    /// `|m|`.
    pub rhs: i64,
    /// `c_1, ..., c_{d-1}`.
    pub coefficients: Vec<i64>,
}

/// How the logarithm of `alpha_0` is handled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elimination {
    /// `log alpha_0` is independent of the unit logarithms; some unit
    /// logarithms are eliminated through relations.
    Inhomogeneous { relations: Vec<UnitRelation> },
    /// `log alpha_0` is a rational combination of the unit logarithms and
    /// is eliminated instead.
    Homogeneous { alpha0: Vec<Alpha0Relation> },
}

/// How `(j, k)` is chosen from `i0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// Degree 3: `(j, k)` are the two indices other than `i0`, ascending.
    Complement,
    /// Use `second` when `i0` belongs to `first`, otherwise `first`.
    TwoPairs { first: (usize, usize), second: (usize, usize) },
}

/// Everything needed to build the reduced linear forms of one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    /// Field the data belongs to.
    pub key: FieldKey,
    /// Pair rule (1-based indices).
    pub pairs: PairRule,
    /// Common multiplier `t0 > 0`.
    pub t0: u32,
    /// Relations.
    pub elimination: Elimination,
}

fn rel(eliminated: usize, exponents: &[(usize, i64)]) -> UnitRelation {
    UnitRelation { eliminated, exponents: exponents.to_vec() }
}

fn two(first: (usize, usize), second: (usize, usize)) -> PairRule {
    PairRule::TwoPairs { first, second }
}

/// The relation catalogue.
pub fn relation_set(key: FieldKey) -> Result<RelationSet> {
    use Elimination::*;
    let none = Inhomogeneous { relations: Vec::new() };
    let (pairs, t0, elimination) = match key {
        FieldKey::SpecialQuartic => (two((1, 3), (2, 4)), 1, none),
        FieldKey::Cyclotomic(n) => match n {
            7 => (
                PairRule::Complement,
                3,
                Homogeneous {
                    alpha0: vec![
                        Alpha0Relation { rhs: 1, coefficients: vec![1, -2] },
                        Alpha0Relation { rhs: 7, coefficients: vec![-1, -4] },
                    ],
                },
            ),
            9 => (
                PairRule::Complement,
                3,
                Homogeneous {
                    alpha0: vec![
                        Alpha0Relation { rhs: 1, coefficients: vec![2, -1] },
                        Alpha0Relation { rhs: 3, coefficients: vec![0, -3] },
                    ],
                },
            ),
            11 => (two((1, 2), (3, 5)), 1, none),
            13 => (
                two((1, 5), (2, 3)),
                1,
                Inhomogeneous {
                    relations: vec![rel(1, &[(3, 1), (5, 1), (2, -1)]), rel(4, &[(3, 1), (5, 1)])],
                },
            ),
            15 => (two((1, 2), (3, 4)), 1, none),
            16 => (two((1, 4), (2, 3)), 1, Inhomogeneous { relations: vec![rel(3, &[(1, 1), (2, 1)])] }),
            17 => (
                two((1, 4), (2, 8)),
                1,
                Inhomogeneous {
                    relations: vec![
                        rel(1, &[(5, 1), (6, 1), (7, -1)]),
                        rel(2, &[(5, 1), (6, 1), (4, -1)]),
                        rel(3, &[(5, 1), (6, 1)]),
                    ],
                },
            ),
            19 => (
                two((1, 7), (2, 5)),
                1,
                Inhomogeneous {
                    relations: vec![
                        rel(3, &[(1, 1), (2, 1), (4, 1), (5, -1), (8, -1)]),
                        rel(6, &[(1, 1), (2, 1), (4, 1), (7, -1)]),
                    ],
                },
            ),
            20 => (two((1, 2), (3, 4)), 1, none),
            21 => (
                two((1, 5), (2, 4)),
                1,
                Inhomogeneous { relations: vec![rel(4, &[(3, 1), (1, -1)]), rel(5, &[(1, -1)])] },
            ),
            23 => (two((1, 2), (3, 6)), 1, none),
            24 => (two((1, 2), (3, 4)), 3, Inhomogeneous { relations: vec![rel(1, &[(2, 1), (3, 1)])] }),
            25 => (
                two((2, 9), (4, 3)),
                1,
                Inhomogeneous {
                    relations: vec![
                        rel(1, &[(5, 1), (8, -1)]),
                        rel(2, &[(5, 1), (3, -1)]),
                        rel(4, &[(5, 1), (6, -1)]),
                        rel(7, &[(5, 1), (9, -1)]),
                    ],
                },
            ),
            29 => (
                two((1, 12), (2, 5)),
                1,
                Inhomogeneous {
                    relations: vec![
                        rel(1, &[(10, 1), (12, 1), (4, -1)]),
                        rel(2, &[(10, 1), (12, 1), (6, -1)]),
                        rel(3, &[(10, 1), (12, 1), (9, -1)]),
                        rel(5, &[(10, 1), (12, 1), (13, -1)]),
                        rel(7, &[(10, 1), (12, 1), (8, -1)]),
                        rel(11, &[(10, 1), (12, 1)]),
                    ],
                },
            ),
            _ => return Err(Error::UnsupportedIndex { n, what: "the relation catalogue" }),
        },
    };
    Ok(RelationSet { key, pairs, t0, elimination })
}

impl RelationSet {
    /// `(j, k)` for `i0`, all 0-based.
    pub fn pair_for(&self, i0: usize, d: usize) -> (usize, usize) {
        match self.pairs {
            PairRule::Complement => {
                let mut rest = (0..d).filter(|&l| l != i0);
                (rest.next().expect("d >= 3"), rest.next().expect("d >= 3"))
            }
            PairRule::TwoPairs { first, second } => {
                let (a, b) = (first.0 - 1, first.1 - 1);
                if i0 == a || i0 == b {
                    (second.0 - 1, second.1 - 1)
                } else {
                    (a, b)
                }
            }
        }
    }

    /// True when `log alpha_0` is eliminated.
    pub fn is_homogeneous(&self) -> bool {
        matches!(self.elimination, Elimination::Homogeneous { .. })
    }

    /// 0-based indices of the unit logarithms kept in the reduced form.
    pub fn surviving(&self, d: usize) -> Vec<usize> {
        match &self.elimination {
            Elimination::Homogeneous { .. } => (0..d - 1).collect(),
            Elimination::Inhomogeneous { relations } => (0..d - 1)
                .filter(|&i| !relations.iter().any(|r| r.eliminated == i + 1))
                .collect(),
        }
    }

    /// Lattice dimension `p`.
    pub fn lattice_dim(&self, d: usize) -> usize {
        self.surviving(d).len()
    }

    /// `T = max(t0, |coefficients|)`.
    pub fn big_t(&self) -> u32 {
        let m = match &self.elimination {
            Elimination::Inhomogeneous { relations } => {
                relations.iter().flat_map(|r| r.exponents.iter().map(|e| e.1.unsigned_abs())).max()
            }
            Elimination::Homogeneous { alpha0 } => {
                alpha0.iter().flat_map(|r| r.coefficients.iter().map(|c| c.unsigned_abs())).max()
            }
        };
        (m.unwrap_or(0) as u32).max(self.t0)
    }

    /// The multiplier turning a bound `A` on the original exponents into a
    /// bound on the reduced coefficients: `(d - p) T` for inhomogeneous
    /// forms, `T` for homogeneous ones.
    pub fn coefficient_multiplier(&self, d: usize) -> u32 {
        match self.elimination {
            Elimination::Homogeneous { .. } => self.big_t(),
            Elimination::Inhomogeneous { .. } => (d - self.lattice_dim(d)) as u32 * self.big_t(),
        }
    }

    /// The exact worst-case growth `max_s (t0 + sum_e |c_{e,s}|)` of the
    /// reduced coefficients, which must not exceed the multiplier.
    pub fn actual_growth(&self, d: usize) -> u32 {
        match &self.elimination {
            Elimination::Homogeneous { .. } => self.t0,
            Elimination::Inhomogeneous { relations } => self
                .surviving(d)
                .iter()
                .map(|&s| {
                    self.t0
                        + relations
                            .iter()
                            .flat_map(|r| r.exponents.iter())
                            .filter(|e| e.0 == s + 1)
                            .map(|e| e.1.unsigned_abs() as u32)
                            .sum::<u32>()
                })
                .max()
                .unwrap_or(self.t0),
        }
    }

    /// The `alpha_0` relation for right-hand side magnitude `rhs`.
    pub fn alpha0_relation(&self, rhs: i64) -> Option<&Alpha0Relation> {
        match &self.elimination {
            Elimination::Homogeneous { alpha0 } => alpha0.iter().find(|r| r.rhs == rhs),
            Elimination::Inhomogeneous { .. } => None,
        }
    }

    /// Number of relations in the catalogue entry.
    pub fn relation_count(&self) -> usize {
        match &self.elimination {
            Elimination::Homogeneous { alpha0 } => alpha0.len(),
            Elimination::Inhomogeneous { relations } => relations.len(),
        }
    }
}

/// Outcome of verifying one relation.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    /// Human-readable label.
    pub label: String,
    /// Exact identity confirmed in the field.
    pub exact: bool,
    /// Largest numerical residual over all conjugate pairs and `i0`.
    pub residual: Float,
}

/// `eps^(k) / eps^(j)` as a field element.
fn unit_ratio(f: &FieldData, e: &FieldElement, j: usize, k: usize) -> Result<FieldElement> {
    let num = f.element_at(e, k)?;
    let den = f.element_at(e, j)?;
    Ok(f.exact.mul(&num, &f.exact.unit_inverse(&den)?))
}

/// `(xi^(i0) - xi^(j)) mu^(k) / ((xi^(i0) - xi^(k)) mu^(j))` as a field element.
pub(crate) fn alpha0_element(
    f: &FieldData,
    mu: &FieldElement,
    i0: usize,
    j: usize,
    k: usize,
) -> Result<FieldElement> {
    let g = f.exact.generator();
    let xi = |l: usize| f.element_at(&g, l);
    let num = f.exact.mul(&f.exact.sub(&xi(i0)?, &xi(j)?), &f.element_at(mu, k)?);
    let den = f.exact.mul(&f.exact.sub(&xi(i0)?, &xi(k)?), &f.element_at(mu, j)?);
    Ok(f.exact.mul(&num, &f.exact.inverse(&den)?))
}

fn equal_up_to_sign(f: &FieldData, a: &FieldElement, b: &FieldElement) -> bool {
    *a == *b || f.exact.add(a, b) == f.exact.constant(0)
}

fn log_abs(x: &Float) -> Float {
    Float::with_val(x.prec(), x.abs_ref()).ln()
}

/// Numerical `log alpha_i` for the pair `(j, k)` (0-based), all units.
pub(crate) fn unit_logs(f: &FieldData, j: usize, k: usize) -> Vec<Float> {
    (0..f.degree() - 1)
        .map(|i| log_abs(f.units.abs_conjugate(i, k)) - log_abs(f.units.abs_conjugate(i, j)))
        .collect()
}

/// Numerical `log alpha_0` (0-based indices, signed conjugates of `mu`).
pub(crate) fn alpha0_log(f: &FieldData, mu: &FieldElement, i0: usize, j: usize, k: usize) -> Float {
    let r = |l: usize| f.root(l).clone();
    let muc = |l: usize| f.exact.embed(mu, f.root(l));
    let num = Float::with_val(f.prec.bits(), r(i0) - r(j)) * muc(k);
    let den = Float::with_val(f.prec.bits(), r(i0) - r(k)) * muc(j);
    log_abs(&Float::with_val(f.prec.bits(), num / den))
}

/// Confirm every catalogued relation exactly (abelian fields) and
/// numerically, for every pair `(j, k)` in use and every `i0`.
pub fn verify_relations(set: &RelationSet, f: &FieldData) -> Result<Vec<RelationCheck>> {
    let d = f.degree();
    let pairs: Vec<(usize, usize, usize)> = (0..d)
        .map(|i0| {
            let (j, k) = set.pair_for(i0, d);
            (i0, j, k)
        })
        .collect();
    let tol = f.prec.ten_pow_neg(f.prec.digits() - 10);
    let t0 = i64::from(set.t0);
    let mut out = Vec::new();
    match &set.elimination {
        Elimination::Inhomogeneous { relations } => {
            for r in relations {
                let mut exact = f.automorphisms.is_some();
                let mut residual = f.prec.zero();
                for &(_, j, k) in &pairs {
                    let logs = unit_logs(f, j, k);
                    let mut res = Float::with_val(f.prec.bits(), &logs[r.eliminated - 1] * t0);
                    for &(s, c) in &r.exponents {
                        res -= Float::with_val(f.prec.bits(), &logs[s - 1] * c);
                    }
                    let res = res.abs();
                    if res > residual {
                        residual = res;
                    }
                    if f.automorphisms.is_some() {
                        let units = &f.units.exact_units;
                        let lhs = f.exact.pow(&unit_ratio(f, &units[r.eliminated - 1], j, k)?, t0)?;
                        let mut rhs = f.exact.constant(1);
                        for &(s, c) in &r.exponents {
                            let q = f.exact.pow(&unit_ratio(f, &units[s - 1], j, k)?, c)?;
                            rhs = f.exact.mul(&rhs, &q);
                        }
                        exact &= equal_up_to_sign(f, &lhs, &rhs);
                    }
                }
                let label = format!(
                    "{key:?}: {t0} log a{} = {}",
                    r.eliminated,
                    r.exponents.iter().map(|(s, c)| format!("{c:+} log a{s}")).collect::<Vec<_>>().join(" "),
                    key = set.key
                );
                if !exact || residual > tol {
                    return Err(Error::Invariant(format!("relation fails: {label}")));
                }
                out.push(RelationCheck { label, exact, residual });
            }
        }
        Elimination::Homogeneous { alpha0 } => {
            for r in alpha0 {
                let reps = f.representatives_for(r.rhs)?;
                let mu = &reps.mus[0];
                let mut exact = true;
                let mut residual = f.prec.zero();
                for &(i0, j, k) in &pairs {
                    let logs = unit_logs(f, j, k);
                    let mut res = Float::with_val(f.prec.bits(), alpha0_log(f, mu, i0, j, k) * t0);
                    for (l, c) in logs.iter().zip(&r.coefficients) {
                        res -= Float::with_val(f.prec.bits(), l * *c);
                    }
                    let res = res.abs();
                    if res > residual {
                        residual = res;
                    }
                    let lhs = f.exact.pow(&alpha0_element(f, mu, i0, j, k)?, t0)?;
                    let mut rhs = f.exact.constant(1);
                    for (i, &c) in r.coefficients.iter().enumerate() {
                        let q = f.exact.pow(&unit_ratio(f, &f.units.exact_units[i], j, k)?, c)?;
                        rhs = f.exact.mul(&rhs, &q);
                    }
                    exact &= equal_up_to_sign(f, &lhs, &rhs);
                }
                let label = format!(
                    "{key:?}, |m| = {}: {t0} log a0 = {}",
                    r.rhs,
                    r.coefficients
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c:+} log a{}", i + 1))
                        .collect::<Vec<_>>()
                        .join(" "),
                    key = set.key
                );
                if !exact || residual > tol {
                    return Err(Error::Invariant(format!("relation fails: {label}")));
                }
                out.push(RelationCheck { label, exact, residual });
            }
        }
    }
    Ok(out)
}

/// Check that the kept unit logarithms are linearly independent over the
/// rationals for every pair `(j, k)` in use.  A rational relation among the
/// `log alpha_s` is a multiplicative relation among the unit ratios, which
/// then holds at every conjugate; so independence is equivalent to full
/// rank of the matrix of conjugate logarithms `log|g(eps_s^(k)/eps_s^(j))|`
/// over the Galois group.
pub fn kept_logs_have_full_rank(set: &RelationSet, f: &FieldData, prec: Precision) -> bool {
    let d = f.degree();
    let kept = set.surviving(d);
    let mut pairs: Vec<(usize, usize)> = (0..d).map(|i0| set.pair_for(i0, d)).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs.iter().all(|&(j, k)| {
        let rows: Vec<Vec<Float>> = f
            .galois
            .iter()
            .map(|g| {
                kept.iter()
                    .map(|&i| {
                        log_abs(f.units.abs_conjugate(i, g[k])) - log_abs(f.units.abs_conjugate(i, g[j]))
                    })
                    .collect()
            })
            .collect();
        numeric_rank(rows, prec) == kept.len()
    })
}

fn numeric_rank(mut rows: Vec<Vec<Float>>, prec: Precision) -> usize {
    let tol = prec.ten_pow_neg(prec.digits() / 2);
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].cmp_abs(&rows[b][c]).expect("finite"))
        else {
            break;
        };
        if Float::with_val(prec.bits(), rows[piv][c].abs_ref()) < tol {
            continue;
        }
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank {
                let factor = Float::with_val(prec.bits(), &rows[r][c] / &rows[rank][c]);
                for cc in c..cols {
                    let t = Float::with_val(prec.bits(), &rows[rank][cc] * &factor);
                    rows[r][cc] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
