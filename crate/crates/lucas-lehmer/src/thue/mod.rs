//! Complete resolution of the Thue equations `F(X, Y) = m` for the
//! catalogued fields, by linear forms in logarithms, two passes of lattice
//! reduction and a final search.
//!
//! Given `F(x, y) = m`, put `beta = x - xi y = +-mu eps_1^a_1 ... eps_{d-1}^a_{d-1}`.
//! For the conjugate `i0` where `beta` is smallest and a fixed pair
//! `(j, k)`, Siegel's identity makes
//! `Lambda = log alpha_0 + sum a_i log alpha_i` exponentially small in
//! `A = max(6, |a_i|)`.  A lower bound of Baker-Wustholz type gives
//! `A < C9`; lattice reduction brings this down to a few dozen, from which
//! `|y| <= Y3` follows; the remaining candidates are convergents of the
//! roots.

pub mod ledger;
pub mod reduction;
pub mod relations;
pub mod search;

use std::time::Instant;

use rayon::prelude::*;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::forms::{build_form, coprime_residues, evaluate_coeffs, FormTarget};
use crate::numberfield::{field_data, AlgebraicReal, FieldKey, RealDescriptor, SPECIAL_QUARTIC};
use crate::precision::Precision;

pub use ledger::{constants, BoundLedger};
pub use reduction::{build_forms, reduce_bounds, LogLinearForm, ReductionPass, ReductionReport};
pub use relations::{relation_set, verify_relations, RelationCheck, RelationSet};
pub use search::{final_search, y3_bound, Provenance, ThueSolution, ThueSolutionSet};

/// A Thue equation `F(X, Y) = m` for `m` in a finite set of targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThueProblem {
    /// The field of `F(X, 1)`.
    pub key: FieldKey,
    /// Coefficients of `F`, descending in `X`.
    pub coeffs: Vec<Integer>,
    /// Admissible right-hand sides.
    pub targets: Vec<i64>,
}

impl ThueProblem {
    /// `F_n(X, Y) = +-1, +-P` for a catalogued index.
    pub fn for_index(n: u32) -> Result<Self> {
        let form = build_form(n)?;
        if form.degree() < 3 {
            return Err(Error::UnsupportedIndex { n, what: "the Thue solver (degree < 3)" });
        }
        let targets = FormTarget::new(n)?.values().collect();
        Ok(ThueProblem { key: FieldKey::Cyclotomic(n), coeffs: form.coeffs().to_vec(), targets })
    }

    /// `S^4 - 4S^3T - 12S^2T^2 + 8ST^3 + 4T^4 = 1`.
    pub fn special_quartic() -> Self {
        ThueProblem {
            key: FieldKey::SpecialQuartic,
            coeffs: SPECIAL_QUARTIC.iter().rev().map(|&c| Integer::from(c)).collect(),
            targets: vec![1],
        }
    }

    /// Distinct `|m|`, ascending.
    pub fn magnitudes(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.targets.iter().map(|t| t.abs()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `F(x, y)`.
    pub fn evaluate(&self, x: &Integer, y: &Integer) -> Integer {
        evaluate_coeffs(&self.coeffs, x, y)
    }
}

/// Everything computed while solving one problem.
#[derive(Debug, Clone)]
pub struct ThueReport {
    /// The problem.
    pub problem: ThueProblem,
    /// Constants.
    pub ledger: BoundLedger,
    /// The verified relations.
    pub relations: Vec<RelationCheck>,
    /// Both reduction passes.
    pub reduction: ReductionReport,
    /// Final bound on `|y|`.
    pub y3: Float,
    /// The complete solution set.
    pub solutions: ThueSolutionSet,
    /// Wall time in seconds.
    pub seconds: f64,
}

impl ThueReport {
    /// `(X4, Y4)`: the largest `|x|` and `|y|` over all solutions.
    pub fn extent(&self) -> (Integer, Integer) {
        self.solutions.extent()
    }
}

/// Precision used for everything up to the choice of `c0`.
pub const LEDGER_DIGITS: u32 = 200;

/// Solve one problem completely.
pub fn solve(problem: &ThueProblem) -> Result<ThueReport> {
    solve_with(problem, LEDGER_DIGITS)
}

/// [`solve`] with at least `min_digits` of working precision throughout.
pub fn solve_with(problem: &ThueProblem, min_digits: u32) -> Result<ThueReport> {
    let start = Instant::now();
    let ledger_digits = min_digits.max(LEDGER_DIGITS);
    let low = field_data(problem.key, Precision::new(ledger_digits)?)?;
    let set = relation_set(problem.key)?;
    let ledger = constants(problem, &low, &set)?;
    let digits = reduction::required_digits(&ledger, set.is_homogeneous()).max(ledger_digits);
    let f = field_data(problem.key, Precision::new(digits)?)?;
    let relations = verify_relations(&set, &f)?;
    let forms = build_forms(problem, &f, &set)?;
    let reduction = reduce_bounds(&forms, &set, &ledger, &f)?;
    let y3 = y3_bound(&low, &ledger, &reduction.second.bound);
    let solutions = final_search(&problem.coeffs, &problem.targets, &low, &ledger, &y3)?;
    if !solutions.verify(&problem.coeffs) {
        return Err(Error::Invariant("solution failed re-verification".into()));
    }
    Ok(ThueReport {
        problem: problem.clone(),
        ledger,
        relations,
        reduction,
        y3,
        solutions,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Solve a batch of problems on the rayon pool.
pub fn solve_all(problems: &[ThueProblem], min_digits: u32) -> Vec<Result<ThueReport>> {
    problems.par_iter().map(|p| solve_with(p, min_digits)).collect()
}

/// The per-equation summary, keyed like the usual ledger tables.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LedgerRow {
    /// Field degree.
    pub d: usize,
    /// Direct-search bound.
    #[serde(rename = "Y1", serialize_with = "crate::serial::integer")]
    pub y1: Integer,
    /// Bound above which the linear form is small.
    #[serde(rename = "Y2p", serialize_with = "crate::serial::integer")]
    pub y2p: Integer,
    /// `d / C5`.
    #[serde(rename = "dOverC5")]
    pub d_over_c5: f64,
    /// `C6`.
    #[serde(rename = "C6")]
    pub c6: f64,
    /// Height product.
    #[serde(rename = "H")]
    pub h: f64,
    /// `C7 = 2 K4`.
    #[serde(rename = "C7")]
    pub c7: f64,
    /// Initial exponent bound.
    #[serde(rename = "C9")]
    pub c9: f64,
    /// Digits of `c0` in the first reduction.
    pub d1: u32,
    /// Exponent bound after the first reduction.
    #[serde(rename = "A1", serialize_with = "crate::serial::integer")]
    pub a1: Integer,
    /// Digits of `c0` in the second reduction.
    pub d2: u32,
    /// Exponent bound after the second reduction.
    #[serde(rename = "A2", serialize_with = "crate::serial::integer")]
    pub a2: Integer,
    /// Final search bound on `|y|`.
    #[serde(rename = "Y3")]
    pub y3: f64,
    /// Largest `|x|` among the solutions.
    #[serde(rename = "X4", serialize_with = "crate::serial::integer")]
    pub x4: Integer,
    /// Largest `|y|` among the solutions.
    #[serde(rename = "Y4", serialize_with = "crate::serial::integer")]
    pub y4: Integer,
}

impl ThueReport {
    /// The summary row.
    pub fn row(&self) -> LedgerRow {
        let l = &self.ledger;
        let (x4, y4) = self.extent();
        LedgerRow {
            d: l.d,
            y1: l.y1.clone(),
            y2p: l.y2p.clone(),
            d_over_c5: l.d_over_c5().to_f64(),
            c6: l.c6.to_f64(),
            h: l.h.to_f64(),
            c7: l.c7.to_f64(),
            c9: l.c9.to_f64(),
            d1: self.reduction.first.digits,
            a1: self.reduction.first.bound.clone(),
            d2: self.reduction.second.digits,
            a2: self.reduction.second.bound.clone(),
            y3: self.y3.to_f64(),
            x4,
            y4,
        }
    }
}

/// One solution found by [`scan`] that yields a non-degenerate pair.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ScanHit {
    /// Index.
    pub n: u32,
    /// `x`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub x: Integer,
    /// `y`.
    #[serde(serialize_with = "crate::serial::integer")]
    pub y: Integer,
    /// `F_n(x, y)`.
    pub value: i64,
}

/// Per-index outcome of a scan.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ScanRow {
    /// Index.
    pub n: u32,
    /// Solutions inside the box (any, including degenerate ones).
    pub solutions: usize,
    /// Solutions giving non-degenerate pairs.
    pub hits: Vec<ScanHit>,
}

/// All solutions of `F_n(x, y) in FormTarget(n)` with `|x|, |y| < bound`:
/// small `|y|` directly, larger `|y|` through convergents of the roots.
pub fn box_solutions(n: u32, bound: &Integer) -> Result<ThueSolutionSet> {
    let form = build_form(n)?;
    let targets: Vec<i64> = FormTarget::new(n)?.values().collect();
    let d = form.degree();
    let digits = (2 * bound.significant_bits() / 3 + 60).max(Precision::FLOOR);
    let prec = Precision::new(digits)?;
    let roots: Vec<AlgebraicReal> = coprime_residues(n)
        .into_iter()
        .map(|a| AlgebraicReal::new(RealDescriptor::TwoCos { a, n }, prec))
        .collect();
    let values: Vec<Float> = roots.iter().map(|r| r.value().clone()).collect();
    let mmax = targets.iter().map(|t| t.abs()).max().unwrap_or(1);
    let below = Integer::from(bound - 1);
    let mut out = ThueSolutionSet::default();
    if d >= 3 {
        let y1 = ledger::y1_from_c1(&ledger::c1_from_roots(&values, mmax), d);
        search::direct_search(form.coeffs(), &values, &targets, &y1.min(below.clone()), &mut out);
        search::convergent_search(form.coeffs(), &roots, &targets, &below, &mut out)?;
    } else {
        search::direct_search(form.coeffs(), &values, &targets, &below, &mut out);
    }
    let mut inside = ThueSolutionSet::default();
    for s in out.solutions() {
        if Integer::from(s.x.abs_ref()) < *bound && Integer::from(s.y.abs_ref()) < *bound {
            inside.offer(form.coeffs(), &targets, s.x.clone(), s.y.clone(), s.provenance);
        }
    }
    Ok(inside)
}

/// Scan `nmin..=nmax` (with `nmin >= 31`) for solutions inside the box
/// `|x|, |y| < bound` that give non-degenerate Lucas or Lehmer pairs.
pub fn scan(nmin: u32, nmax: u32, bound: &Integer) -> Result<Vec<ScanRow>> {
    if nmin < 31 || nmax < nmin {
        return Err(Error::InvalidInput(format!("scan range must satisfy 31 <= nmin <= nmax, got {nmin}..{nmax}")));
    }
    (nmin..=nmax)
        .into_par_iter()
        .map(|n| {
            let sols = box_solutions(n, bound)?;
            let hits = sols
                .solutions()
                .filter(|s| crate::primdiv::yields_nondegenerate_pair(&s.x, &s.y))
                .map(|s| ScanHit { n, x: s.x.clone(), y: s.y.clone(), value: s.value })
                .collect();
            Ok(ScanRow { n, solutions: sols.len(), hits })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_seven_end_to_end() {
        let report = solve(&ThueProblem::for_index(7).unwrap()).unwrap();
        let row = report.row();
        assert_eq!((row.x4.to_i64(), row.y4.to_i64()), (Some(9), Some(9)));
        assert_eq!(row.y1, 49);
        assert!((row.d_over_c5 - 1.127).abs() < 0.01);
        assert!((row.c9.log10() - 4e12f64.log10()).abs() <= 1.0);
        assert!(row.a2 <= row.a1 && Float::with_val(64, &row.a1) <= report.ledger.c9);
        assert!(report.solutions.verify(&report.problem.coeffs));
    }

    #[test]
    fn higher_precision_gives_same_solutions() {
        let p = ThueProblem::for_index(9).unwrap();
        let a = solve(&p).unwrap();
        let b = solve_with(&p, 200).unwrap();
        assert_eq!(a.solutions, b.solutions);
    }

    #[test]
    fn quadratic_index_is_rejected() {
        assert!(matches!(ThueProblem::for_index(8), Err(Error::UnsupportedIndex { .. })));
    }
}
