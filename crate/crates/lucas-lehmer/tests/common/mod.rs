//! Property checks shared by the property-test suite and the acceptance
//! runner.  Each check returns `Err(reason)` on a counterexample.

#![allow(dead_code)]

use lucas_lehmer::contfrac::convergents_with;
use lucas_lehmer::forms::{build_form, reduce_to_core, CORE_PAIRS};
use lucas_lehmer::lattice::{integer_determinant, lll_reduce, LatticeBasis};
use lucas_lehmer::numberfield::{field_data, FieldKey};
use lucas_lehmer::precision::Precision;
use lucas_lehmer::primdiv::{has_primitive_divisor_direct, PairKey, SequenceKind};
use lucas_lehmer::thue::{build_forms, relation_set, ThueProblem};
use proptest::prelude::*;
use rug::{Float, Integer};

/// Largest entry of the random lattices.
pub const LATTICE_ENTRY: i64 = 1_000_000;
/// Coefficient range of the exhaustive shortest-vector search.
pub const SHORTEST_SEARCH: i64 = 20;
/// Denominator bound of the best-approximation check.
pub const BEST_APPROX_QMAX: u32 = 200;
/// Box of the even-index symmetry identity.
pub const SYMMETRY_BOX: i64 = 20;
/// Box of the power-lift composition identity.
pub const COMPOSITION_BOX: i64 = 10;

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Strategy: a 3x3 integer matrix with entries in `[-LATTICE_ENTRY, LATTICE_ENTRY]`.
pub fn small_lattice() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-LATTICE_ENTRY..=LATTICE_ENTRY, 3), 3)
}

fn sq_norm_i128(v: &[i128]) -> i128 {
    v.iter().map(|x| x * x).sum()
}

/// LLL: unimodular transform, `reduced = original * transform`, preserved
/// determinant, and `|b_1|^2 <= 2^(p-1) lambda_1^2` with `lambda_1` from an
/// exhaustive search.  Singular inputs pass vacuously.
pub fn check_lll(columns: &[Vec<i64>]) -> Check {
    let basis = LatticeBasis::from_i64_columns(columns).map_err(|e| e.to_string())?;
    let det = basis.determinant().map_err(|e| e.to_string())?;
    if det == 0 {
        return Ok(());
    }
    let out = lll_reduce(&basis).map_err(|e| e.to_string())?;
    let p = columns.len();
    let t_det = integer_determinant(&out.transform);
    ensure(Integer::from(t_det.abs_ref()) == 1, || format!("transform determinant {t_det}"))?;
    let red_det = out.reduced.determinant().map_err(|e| e.to_string())?;
    ensure(Integer::from(red_det.abs_ref()) == Integer::from(det.abs_ref()), || {
        format!("determinant {det} became {red_det}")
    })?;
    for (c, col) in out.reduced.columns().iter().enumerate() {
        for r in 0..p {
            let mut acc = Integer::new();
            for (k, orig) in basis.columns().iter().enumerate() {
                acc += Integer::from(&orig[r] * &out.transform[c][k]);
            }
            ensure(acc == col[r], || format!("reduced column {c} is not original * transform"))?;
        }
    }
    // Exhaustive shortest vector over small coefficient vectors of the
    // reduced basis (entries fit comfortably in i128).
    let red: Vec<Vec<i128>> = out
        .reduced
        .columns()
        .iter()
        .map(|c| c.iter().map(|v| v.to_i128().expect("reduced entries stay small")).collect())
        .collect();
    let mut lambda1 = i128::MAX;
    let r = SHORTEST_SEARCH as i128;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let v: Vec<i128> = (0..p).map(|i| a * red[0][i] + b * red[1][i] + c * red[2][i]).collect();
                lambda1 = lambda1.min(sq_norm_i128(&v));
            }
        }
    }
    let b1 = sq_norm_i128(&red[0]);
    ensure(b1 <= (1i128 << (p - 1)) * lambda1, || format!("|b1|^2 = {b1} exceeds 2^(p-1) * {lambda1}"))
}

/// Strategy: a non-square positive integer and a rational shift, giving the
/// target `sqrt(radicand) + num / den`.
pub fn quadratic_target() -> impl Strategy<Value = (u32, i32, u32)> {
    (2u32..100_000)
        .prop_filter("non-square radicand", |n| {
            let r = (*n as f64).sqrt() as u32;
            (r.saturating_sub(1)..=r + 1).all(|s| s * s != *n)
        })
        .prop_flat_map(|n| (Just(n), -1000i32..1000, 1u32..1000))
}

/// Convergents of a quadratic irrational: determinant identity for
/// consecutive pairs, and (for small denominators) best approximation.
pub fn check_convergents(radicand: u32, num: i32, den: u32) -> Check {
    let eval = move |p: Precision| {
        Float::with_val(p.bits(), radicand).sqrt() + Float::with_val(p.bits(), num) / den
    };
    let prec = Precision::new(80).map_err(|e| e.to_string())?;
    let qmax = Integer::from(Integer::u_pow_u(10, 30));
    let stream = convergents_with(eval, &qmax, prec).map_err(|e| e.to_string())?;
    let conv = &stream.convergents;
    ensure(!conv.is_empty(), || "no convergents".into())?;
    for w in conv.windows(2) {
        let (p0, q0) = &w[0];
        let (p1, q1) = &w[1];
        let det = Integer::from(p1 * q0) - Integer::from(p0 * q1);
        ensure(Integer::from(det.abs_ref()) == 1, || format!("p_i q_(i-1) - p_(i-1) q_i = {det}"))?;
    }
    let x = eval(Precision::new(120).map_err(|e| e.to_string())?);
    let dist = |p: &Integer, q: &Integer| (Float::with_val(x.prec(), &x * q) - p).abs();
    for (p, q) in conv.iter().filter(|(_, q)| *q <= BEST_APPROX_QMAX) {
        let here = dist(p, q);
        let qi = q.to_u32().expect("small denominator");
        for q2 in 1..qi {
            let q2 = Integer::from(q2);
            let p2 = Float::with_val(x.prec(), &x * &q2).round().to_integer().expect("finite");
            ensure(here < dist(&p2, &q2), || format!("{p}/{q} is beaten by {p2}/{q2}"))?;
        }
    }
    Ok(())
}

/// Odd `t` with `t > 3` and `2t <= 30`.
pub const SYMMETRY_INDICES: [u32; 6] = [5, 7, 9, 11, 13, 15];

/// `F_2t(x, y) = F_t(x, -y)` over the symmetry box.
pub fn check_symmetry(t: u32) -> Check {
    let odd = build_form(t).map_err(|e| e.to_string())?;
    let even = build_form(2 * t).map_err(|e| e.to_string())?;
    for x in -SYMMETRY_BOX..=SYMMETRY_BOX {
        for y in -SYMMETRY_BOX..=SYMMETRY_BOX {
            ensure(even.evaluate_i64(x, y) == odd.evaluate_i64(x, -y), || {
                format!("F_{}({x}, {y}) != F_{t}({x}, {})", 2 * t, -y)
            })?;
        }
    }
    Ok(())
}

/// `F_n(x, y) = F_m(X'(x, y), Y'(x, y))` for every core pair over the
/// composition box.
pub fn check_composition() -> Check {
    for (n, m) in CORE_PAIRS {
        let red = reduce_to_core(n).map_err(|e| e.to_string())?;
        let big = build_form(n).map_err(|e| e.to_string())?;
        let core = build_form(m).map_err(|e| e.to_string())?;
        for x in -COMPOSITION_BOX..=COMPOSITION_BOX {
            for y in -COMPOSITION_BOX..=COMPOSITION_BOX {
                let (x, y) = (Integer::from(x), Integer::from(y));
                let (xp, yp) = red.substitute(&x, &y);
                ensure(big.evaluate(&x, &y) == core.evaluate(&xp, &yp), || {
                    format!("composition fails for ({n}, {m}) at ({x}, {y})")
                })?;
            }
        }
    }
    Ok(())
}

/// `Lambda' - t0 Lambda` vanishes to `digits - 10` digits for every built
/// linear form of index `n` at the exponent vector `a` (cycled to length).
pub fn check_lambda_prime(n: u32, a: &[i64], digits: u32) -> Check {
    let prec = Precision::new(digits).map_err(|e| e.to_string())?;
    let key = FieldKey::Cyclotomic(n);
    let f = field_data(key, prec).map_err(|e| e.to_string())?;
    let set = relation_set(key).map_err(|e| e.to_string())?;
    let problem = ThueProblem::for_index(n).map_err(|e| e.to_string())?;
    let forms = build_forms(&problem, &f, &set).map_err(|e| e.to_string())?;
    let tol = prec.ten_pow_neg(digits - 10);
    for form in &forms {
        let exps: Vec<Integer> = (0..form.log_alphas.len()).map(|i| Integer::from(a[i % a.len()])).collect();
        let lhs = form.lambda_prime(&set, &exps);
        let rhs = Float::with_val(prec.bits(), form.lambda(&exps) * set.t0);
        let diff = Float::with_val(prec.bits(), &lhs - &rhs).abs();
        ensure(diff < tol, || format!("n = {n}, i0 = {}: |Lambda' - t0 Lambda| = {diff}", form.i0))?;
    }
    Ok(())
}

/// Strategy: coprime integers `alpha`, `beta` with `alpha != +-beta`, both
/// nonzero.
pub fn integer_root_pair() -> impl Strategy<Value = (i64, i64)> {
    (-200i64..=200, -200i64..=200).prop_filter("non-degenerate coprime pair", |&(a, b)| {
        a != 0 && b != 0 && a != b && a != -b && Integer::from(a).gcd(&Integer::from(b)) == 1
    })
}

/// A Lucas sequence with distinct coprime integer roots has a primitive
/// divisor at every index `12 < n <= 30`.
pub fn check_integer_roots_have_primitive_divisors(alpha: i64, beta: i64, n: u32) -> Check {
    let s = (alpha + beta) * (alpha + beta);
    let t = (alpha - beta) * (alpha - beta);
    let key = PairKey::new(s, t);
    let has = has_primitive_divisor_direct(&key, SequenceKind::Lucas, n).map_err(|e| e.to_string())?;
    ensure(has, || format!("alpha = {alpha}, beta = {beta}: u_{n} has no primitive divisor"))
}
