//! Linear forms in logarithms and the two-pass lattice reduction of the
//! exponent bound.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Float, Integer};

use super::ledger::BoundLedger;
use super::relations::{alpha0_log, unit_logs, Elimination, RelationSet};
use super::ThueProblem;
use crate::error::{Error, Result};
use crate::lattice::{
    check_hypothesis_nz, check_hypothesis_z, coords_of_target, lll_reduce, LatticeBasis, LemmaInput,
};
use crate::numberfield::FieldData;
use crate::precision::{floor_to_integer, round_to_integer};

/// Number of times `c0` is multiplied by 10 before a pass gives up.
pub const C0_ESCALATIONS: u32 = 5;

/// Extra digits kept beyond `c0` when rounding `c0 log alpha`.
pub const LOG_GUARD_DIGITS: u32 = 30;

/// `Lambda = log alpha_0 + sum a_i log alpha_i` for one `(i0, j, k, mu)`.
#[derive(Debug, Clone)]
pub struct LogLinearForm {
    /// Index of the small conjugate (0-based).
    pub i0: usize,
    /// First auxiliary conjugate index (0-based).
    pub j: usize,
    /// Second auxiliary conjugate index (0-based).
    pub k: usize,
    /// `|m|` of the representative.
    pub rhs: i64,
    /// Position of the representative in its set.
    pub mu_index: usize,
    /// `log alpha_0`.
    pub log_alpha0: Float,
    /// `log alpha_i`, `i = 1..d-1`.
    pub log_alphas: Vec<Float>,
}

impl LogLinearForm {
    /// `Lambda` at the exponent vector `a` (length `d - 1`).
    pub fn lambda(&self, a: &[Integer]) -> Float {
        let mut acc = self.log_alpha0.clone();
        for (l, ai) in self.log_alphas.iter().zip(a) {
            acc += Float::with_val(l.prec(), l * ai);
        }
        acc
    }

    /// `Lambda' = t0 Lambda` evaluated through the reduced coefficients.
    pub fn lambda_prime(&self, set: &RelationSet, a: &[Integer]) -> Float {
        let prec = self.log_alpha0.prec();
        let t0 = set.t0;
        let d = self.log_alphas.len() + 1;
        let mut acc = Float::new(prec);
        match &set.elimination {
            Elimination::Inhomogeneous { relations } => {
                acc += Float::with_val(prec, &self.log_alpha0 * t0);
                for s in set.surviving(d) {
                    let mut b = Integer::from(&a[s] * t0);
                    for r in relations {
                        for &(idx, c) in &r.exponents {
                            if idx == s + 1 {
                                b += Integer::from(&a[r.eliminated - 1] * c);
                            }
                        }
                    }
                    acc += Float::with_val(prec, &self.log_alphas[s] * &b);
                }
            }
            Elimination::Homogeneous { .. } => {
                let rel = set.alpha0_relation(self.rhs).expect("verified relation");
                for (i, l) in self.log_alphas.iter().enumerate() {
                    let b = Integer::from(&a[i] * t0) + rel.coefficients[i];
                    acc += Float::with_val(prec, l * &b);
                }
            }
        }
        acc
    }
}

/// One linear form per `i0` and representative.
pub fn build_forms(problem: &ThueProblem, f: &FieldData, set: &RelationSet) -> Result<Vec<LogLinearForm>> {
    let d = f.degree();
    let mut out = Vec::new();
    for m in problem.magnitudes() {
        let reps = f.representatives_for(m)?;
        if set.is_homogeneous() && set.alpha0_relation(m).is_none() {
            return Err(Error::Invariant(format!("no alpha_0 relation for |m| = {m}")));
        }
        for (mu_index, mu) in reps.mus.iter().enumerate() {
            for i0 in 0..d {
                let (j, k) = set.pair_for(i0, d);
                out.push(LogLinearForm {
                    i0,
                    j,
                    k,
                    rhs: m,
                    mu_index,
                    log_alpha0: alpha0_log(f, mu, i0, j, k),
                    log_alphas: unit_logs(f, j, k),
                });
            }
        }
    }
    Ok(out)
}

/// Result of one reduction pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPass {
    /// `c0 = 10^digits`.
    pub digits: u32,
    /// Reduced bound on `A`.
    pub bound: Integer,
}

/// Both passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// First pass, starting from `C9`.
    pub first: ReductionPass,
    /// Second pass, starting from `A1`.
    pub second: ReductionPass,
}

/// Starting exponent `d_i` of `c0 = 10^{d_i}` for a prior bound `x`:
/// the smallest value for which a lattice of typical shape satisfies the
/// lemma hypothesis (with `||s_k|| ~ 1/8` in the inhomogeneous case).
pub fn initial_digits(ledger: &BoundLedger, homogeneous: bool, x: &Float) -> u32 {
    let prec = x.prec();
    let p = ledger.p as u32;
    let (kappa, x0) = if homogeneous {
        let d = ledger.d as u32;
        (
            Float::with_val(prec, d * d + d - 2).sqrt(),
            Float::with_val(prec, x * ledger.big_t) * 7u32 / 6u32,
        )
    } else {
        (Float::with_val(prec, p * p + 5 * p + 3).sqrt(), Float::with_val(prec, x * ledger.multiplier))
    };
    // The inhomogeneous hypothesis also involves ||s_k||, taken as 1/8.
    let slack = if homogeneous { 1u32 } else { 8 };
    let scale = Float::with_val(prec, 2).pow(f64::from(p - 1) / 2.0) * slack;
    let v = (scale * kappa * x0).log10() * p;
    v.ceil().to_f64() as u32
}

fn lattice_for(logs: &[Float], kept: &[usize], c0: &Float) -> Result<LatticeBasis> {
    let row: Vec<Integer> =
        kept.iter().map(|&s| round_to_integer(&Float::with_val(c0.prec(), &logs[s] * c0))).collect();
    LatticeBasis::log_form_shape(&row)
}

/// Largest reduced bound over all forms for `c0 = 10^digits`, or `None` if
/// a hypothesis fails somewhere.
fn try_pass(
    forms: &[LogLinearForm],
    set: &RelationSet,
    ledger: &BoundLedger,
    prior: &Float,
    digits: u32,
    prec_bits: u32,
) -> Result<Option<Float>> {
    let d = ledger.d;
    let kept = set.surviving(d);
    let c0_int = Integer::from(10).pow(digits);
    let c0 = Float::with_val(prec_bits, &c0_int);
    let homogeneous = set.is_homogeneous();
    let input = LemmaInput {
        degree: d,
        p: kept.len(),
        prior_bound: Float::with_val(prec_bits, prior),
        t_multiplier: if homogeneous { ledger.big_t } else { ledger.multiplier },
        t0: set.t0,
        c0: c0_int,
        c5: Float::with_val(prec_bits, &ledger.c5),
        c6: Float::with_val(prec_bits, &ledger.c6),
    };
    let mut by_pair: BTreeMap<(usize, usize), Vec<&LogLinearForm>> = BTreeMap::new();
    for fm in forms {
        by_pair.entry((fm.j, fm.k)).or_default().push(fm);
    }
    let mut worst: Option<Float> = None;
    for group in by_pair.values() {
        let basis = lattice_for(&group[0].log_alphas, &kept, &c0)?;
        let outcome = lll_reduce(&basis)?;
        let bounds: Vec<Option<Float>> = if homogeneous {
            vec![check_hypothesis_z(&outcome, &input)?]
        } else {
            let mut v = Vec::new();
            for fm in group {
                let mut target = vec![Integer::new(); kept.len()];
                let t = Float::with_val(prec_bits, &fm.log_alpha0 * &c0) * set.t0;
                target[kept.len() - 1] = -round_to_integer(&t);
                let coords = coords_of_target(&outcome, &target)?;
                v.push(if coords.target_in_lattice() {
                    None
                } else {
                    check_hypothesis_nz(&outcome, &coords, &input)
                });
            }
            v
        };
        for b in bounds {
            match b {
                None => return Ok(None),
                Some(b) => {
                    if worst.as_ref().is_none_or(|w| b > *w) {
                        worst = Some(b);
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn run_pass(
    forms: &[LogLinearForm],
    set: &RelationSet,
    ledger: &BoundLedger,
    prior: &Float,
    f: &FieldData,
) -> Result<ReductionPass> {
    let mut digits = initial_digits(ledger, set.is_homogeneous(), prior);
    for _ in 0..=C0_ESCALATIONS {
        if f.prec.digits() < digits + LOG_GUARD_DIGITS {
            return Err(Error::PrecisionExhausted(format!(
                "c0 = 10^{digits} needs more than {} digits of the logarithms",
                f.prec.digits()
            )));
        }
        if let Some(bound) = try_pass(forms, set, ledger, prior, digits, f.prec.bits())? {
            let prior_floor = floor_to_integer(prior);
            let bound = floor_to_integer(&bound).max(Integer::from(6)).min(prior_floor.max(Integer::from(6)));
            return Ok(ReductionPass { digits, bound });
        }
        digits += 1;
    }
    Err(Error::ReductionFailed(format!(
        "lattice hypothesis still fails with c0 = 10^{}",
        digits - 1
    )))
}

/// Digits of working precision needed for both passes.
pub fn required_digits(ledger: &BoundLedger, homogeneous: bool) -> u32 {
    initial_digits(ledger, homogeneous, &ledger.c9) + C0_ESCALATIONS + LOG_GUARD_DIGITS + 20
}

/// Run the two passes.
pub fn reduce_bounds(
    forms: &[LogLinearForm],
    set: &RelationSet,
    ledger: &BoundLedger,
    f: &FieldData,
) -> Result<ReductionReport> {
    let first = run_pass(forms, set, ledger, &ledger.c9, f)?;
    let a1 = Float::with_val(f.prec.bits(), &first.bound);
    let second = run_pass(forms, set, ledger, &a1, f)?;
    Ok(ReductionReport { first, second })
}
