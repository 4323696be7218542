//! Exact integer LLL reduction and the lattice lemmas that turn a short
//! reduced basis into a smaller bound for the exponents of a linear form in
//! logarithms.
//!
//! The reduction is the all-integer variant working with the Gram-Schmidt
//! numerators `lambda_{k,j}` and the Gram determinants `d_k`, so no rounding
//! ever happens.  The reduction parameter is 3/4.

use rug::ops::{DivRounding, Pow};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// A lattice given by basis columns with integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    columns: Vec<Vec<Integer>>,
}

impl LatticeBasis {
    /// Basis from its columns; all columns must have the same length.
    pub fn from_columns(columns: Vec<Vec<Integer>>) -> Result<Self> {
        let len = columns.first().map(Vec::len).unwrap_or(0);
        if columns.is_empty() || columns.iter().any(|c| c.len() != len) || len < columns.len() {
            return Err(Error::InvalidInput("basis columns must be nonempty and of equal length".into()));
        }
        Ok(LatticeBasis { columns })
    }

    /// Basis from machine-integer columns.
    pub fn from_i64_columns(columns: &[Vec<i64>]) -> Result<Self> {
        Self::from_columns(
            columns.iter().map(|c| c.iter().map(|&v| Integer::from(v)).collect()).collect(),
        )
    }

    /// The shape used for linear forms in `p` logarithms: identity in the
    /// first `p - 1` rows, and the last row holding `[c0 log alpha_i]`.
    pub fn log_form_shape(last_row: &[Integer]) -> Result<Self> {
        let p = last_row.len();
        let columns = (0..p)
            .map(|i| {
                let mut col = vec![Integer::new(); p];
                if i + 1 < p {
                    col[i] = Integer::from(1);
                }
                col[p - 1] = last_row[i].clone();
                col
            })
            .collect();
        Self::from_columns(columns)
    }

    /// Number of basis vectors.
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.columns[0].len()
    }

    /// Basis columns.
    pub fn columns(&self) -> &[Vec<Integer>] {
        &self.columns
    }

    /// Determinant of a square basis.
    pub fn determinant(&self) -> Result<Integer> {
        if self.rank() != self.ambient_dim() {
            return Err(Error::InvalidInput("determinant of a non-square basis".into()));
        }
        Ok(integer_determinant(&self.columns))
    }
}

/// Exact determinant by fraction-free elimination.
pub fn integer_determinant(matrix: &[Vec<Integer>]) -> Integer {
    let n = matrix.len();
    let mut m: Vec<Vec<Integer>> = matrix.to_vec();
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = Integer::from(&m[i][j] * &m[k][k]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return Integer::from(1);
    }
    Integer::from(&m[n - 1][n - 1] * sign)
}

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut s = Integer::new();
    for (x, y) in a.iter().zip(b) {
        s += Integer::from(x * y);
    }
    s
}

/// Euclidean length of an integer vector, at `bits` precision.
pub fn euclidean_norm(v: &[Integer], bits: u32) -> Float {
    Float::with_val(bits, dot(v, v)).sqrt()
}

/// A reduced basis together with the unimodular transform producing it.
#[derive(Debug, Clone)]
pub struct ReductionOutcome {
    /// The reduced basis.
    pub reduced: LatticeBasis,
    /// `reduced = original * transform` (columns).
    pub transform: Vec<Vec<Integer>>,
}

impl ReductionOutcome {
    /// `|b_1|` at `bits` precision.
    pub fn b1_norm(&self, bits: u32) -> Float {
        euclidean_norm(&self.reduced.columns[0], bits)
    }
}

fn round_div(num: &Integer, den: &Integer) -> Integer {
    // nearest integer to num/den (den > 0), ties away from zero
    let two_num = Integer::from(num * 2);
    let two_den = Integer::from(den * 2);
    if *num >= 0 {
        Integer::from(two_num + den).div_floor(two_den)
    } else {
        -Integer::from(Integer::from(-two_num) + den).div_floor(two_den)
    }
}

struct IntegerLll {
    b: Vec<Vec<Integer>>,
    h: Vec<Vec<Integer>>,
    lambda: Vec<Vec<Integer>>,
    d: Vec<Integer>,
}

impl IntegerLll {
    // Indices follow the 1-based textbook presentation via d[0] = 1 and
    // vector i stored at position i - 1.
    fn red(&mut self, k: usize, l: usize) {
        let two_lam = Integer::from(&self.lambda[k][l] * 2).abs();
        if two_lam > self.d[l] {
            let q = round_div(&self.lambda[k][l], &self.d[l]);
            let (bk, bl) = (k - 1, l - 1);
            for i in 0..self.b[bk].len() {
                let t = Integer::from(&q * &self.b[bl][i]);
                self.b[bk][i] -= t;
            }
            for i in 0..self.h[bk].len() {
                let t = Integer::from(&q * &self.h[bl][i]);
                self.h[bk][i] -= t;
            }
            let t = Integer::from(&q * &self.d[l]);
            self.lambda[k][l] -= t;
            for i in 1..l {
                let t = Integer::from(&q * &self.lambda[l][i]);
                self.lambda[k][i] -= t;
            }
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k - 1, k - 2);
        self.h.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let bb = (Integer::from(&self.d[k - 2] * &self.d[k]) + Integer::from(&lam * &lam)) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            let new_ik = (Integer::from(&self.d[k] * &self.lambda[i][k - 1]) - Integer::from(&lam * &t))
                / &self.d[k - 1];
            let new_ik1 = (Integer::from(&bb * &t) + Integer::from(&lam * &new_ik)) / &self.d[k];
            self.lambda[i][k] = new_ik;
            self.lambda[i][k - 1] = new_ik1;
        }
        self.d[k - 1] = bb;
    }
}

/// Reduce `basis` with parameter 3/4, recording the transform.
pub fn lll_reduce(basis: &LatticeBasis) -> Result<ReductionOutcome> {
    let n = basis.rank();
    let mut st = IntegerLll {
        b: basis.columns.clone(),
        h: (0..n)
            .map(|i| (0..n).map(|j| Integer::from(u32::from(i == j))).collect())
            .collect(),
        lambda: vec![vec![Integer::new(); n + 1]; n + 1],
        d: vec![Integer::new(); n + 1],
    };
    st.d[0] = Integer::from(1);
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1] == 0 {
        return Err(Error::DependentBasis);
    }
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&st.b[k - 1], &st.b[j - 1]);
                for i in 1..j {
                    u = (Integer::from(&st.d[i] * &u)
                        - Integer::from(&st.lambda[k][i] * &st.lambda[j][i]))
                        / &st.d[i - 1];
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u == 0 {
                        return Err(Error::DependentBasis);
                    }
                    st.d[k] = u;
                }
            }
        }
        st.red(k, k - 1);
        // Lovasz condition with parameter 3/4, cleared of denominators.
        let lhs = Integer::from(&st.d[k] * &st.d[k - 2]) * 4u32;
        let rhs = Integer::from(&st.d[k - 1] * &st.d[k - 1]) * 3u32
            - Integer::from(&st.lambda[k][k - 1] * &st.lambda[k][k - 1]) * 4u32;
        if lhs < rhs {
            st.swap(k, kmax);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                st.red(k, l);
            }
            k += 1;
        }
    }
    // h holds, per reduced vector, its coordinates in the original basis;
    // transpose into column form of the transform matrix.
    let transform: Vec<Vec<Integer>> = st.h;
    let reduced = LatticeBasis { columns: st.b };
    let det = integer_determinant(&transform);
    if det != 1 && det != -1 {
        return Err(Error::Invariant("LLL transform is not unimodular".into()));
    }
    Ok(ReductionOutcome { reduced, transform })
}

/// Coordinates of a target vector in the reduced basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetCoordinates {
    /// `x = sum s_i b_i`.
    pub s: Vec<Rational>,
    /// The largest (0-based) `k` with `s_k` not an integer, if any.
    pub k: Option<usize>,
    /// Distance from `s_k` to the nearest integer.
    pub s_k_dist: Option<Rational>,
}

impl TargetCoordinates {
    /// True when the target is itself a lattice vector.
    pub fn target_in_lattice(&self) -> bool {
        self.k.is_none()
    }
}

/// Solve `x = sum s_i b_i` exactly for a square reduced basis.
pub fn coords_of_target(outcome: &ReductionOutcome, x: &[Integer]) -> Result<TargetCoordinates> {
    let cols = &outcome.reduced.columns;
    let n = cols.len();
    if x.len() != n || outcome.reduced.ambient_dim() != n {
        return Err(Error::InvalidInput("target dimension does not match a square basis".into()));
    }
    // augmented rows [B | x]
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..n).map(|c| Rational::from(&cols[c][r])).collect();
            row.push(Rational::from(&x[r]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0).ok_or(Error::DependentBasis)?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col] == 0 {
                continue;
            }
            let f = Rational::from(&m[r][col] / &p);
            for c in col..=n {
                let t = Rational::from(&f * &m[col][c]);
                m[r][c] -= t;
            }
        }
    }
    let s: Vec<Rational> = (0..n).map(|i| Rational::from(&m[i][n] / &m[i][i])).collect();
    let k = (0..n).rev().find(|&i| *s[i].denom() != 1);
    let s_k_dist = k.map(|i| {
        let r = s[i].clone();
        let fl = Rational::from(r.floor_ref());
        let frac = Rational::from(&r - &fl);
        let other = Rational::from(1 - &frac);
        if frac < other {
            frac
        } else {
            other
        }
    });
    Ok(TargetCoordinates { s, k, s_k_dist })
}

/// Data shared by both lattice lemmas.
#[derive(Debug, Clone)]
pub struct LemmaInput {
    /// Field degree `d`.
    pub degree: usize,
    /// Lattice dimension.
    pub p: usize,
    /// Bound on the exponents known before this reduction (C9 or A1).
    pub prior_bound: Float,
    /// Multiplier turning an exponent bound into a coefficient bound for
    /// the reduced form: `(d - p) T` in the inhomogeneous case, `T` in the
    /// homogeneous case.
    pub t_multiplier: u32,
    /// Elimination multiplier `t_0`.
    pub t0: u32,
    /// Scaling constant `c_0`.
    pub c0: Integer,
    /// `C_5`.
    pub c5: Float,
    /// `C_6`.
    pub c6: Float,
}

/// The coefficient bound `X_0` of the inhomogeneous lemma.
pub fn inhomogeneous_coefficient_bound(input: &LemmaInput) -> Float {
    Float::with_val(input.prior_bound.prec(), &input.prior_bound * input.t_multiplier)
}

/// The coefficient bound `(7/6) T X` of the homogeneous lemma: the
/// reduced coefficients satisfy `|a'_i| <= T (A + 1) <= (7/6) T A` for
/// `A >= 6`.
pub fn homogeneous_coefficient_bound(input: &LemmaInput) -> Float {
    Float::with_val(input.prior_bound.prec(), &input.prior_bound * input.t_multiplier) * 7u32 / 6u32
}

fn reduced_bound(input: &LemmaInput, x0: &Float) -> Float {
    let prec = x0.prec();
    let num = Float::with_val(prec, &input.c0) * input.t0 * &input.c6;
    let l = Float::with_val(prec, num / x0).ln();
    Float::with_val(prec, &input.c5 * l) / input.degree as u32
}

/// Inhomogeneous lemma: when
/// `2^(-(p-1)/2) ||s_k|| |b_1| >= sqrt(p^2 + 5p + 3) X_0`, the exponents
/// satisfy `A <= (C5/d) log(c0 t0 C6 / X_0)`.  Returns `None` when the
/// hypothesis fails (the caller should enlarge `c_0`).
pub fn check_hypothesis_nz(
    outcome: &ReductionOutcome,
    coords: &TargetCoordinates,
    input: &LemmaInput,
) -> Option<Float> {
    let dist = coords.s_k_dist.as_ref()?;
    let prec = input.prior_bound.prec().max(64);
    let p = input.p as u32;
    let b1 = outcome.b1_norm(prec);
    let scale = Float::with_val(prec, 2).pow(-(f64::from(p - 1) / 2.0));
    let lhs = b1 * Float::with_val(prec, dist) * scale;
    let x0 = inhomogeneous_coefficient_bound(input);
    let rhs = Float::with_val(prec, p * p + 5 * p + 3).sqrt() * &x0;
    (lhs >= rhs).then(|| reduced_bound(input, &x0))
}

/// Homogeneous lemma (all logarithms in the lattice, no target): when
/// `2^(-(q-1)/2) |b_1| > sqrt(d^2 + d - 2) X'` with `q = d - 1` and
/// `X' = (7/6) T X`, the reduced coefficients satisfy
/// `A' <= (7 C5 T / 6d) log(c0 t0 C6 / X')`, and the original exponents
/// `A <= (A' + T) / t_0`.
pub fn check_hypothesis_z(outcome: &ReductionOutcome, input: &LemmaInput) -> Result<Option<Float>> {
    if input.degree < 3 {
        return Err(Error::InvalidInput("the lattice lemmas need degree d >= 3".into()));
    }
    let prec = input.prior_bound.prec().max(64);
    let q = input.p as u32;
    let d = input.degree as u32;
    let b1 = outcome.b1_norm(prec);
    let scale = Float::with_val(prec, 2).pow(-(f64::from(q - 1) / 2.0));
    let lhs = b1 * scale;
    let x0 = homogeneous_coefficient_bound(input);
    let rhs = Float::with_val(prec, d * d + d - 2).sqrt() * &x0;
    if lhs <= rhs {
        return Ok(None);
    }
    let num = Float::with_val(prec, &input.c0) * input.t0 * &input.c6;
    let l = Float::with_val(prec, num / &x0).ln();
    let a_prime = Float::with_val(prec, &input.c5 * l) * input.t_multiplier * 7u32 / (6 * d);
    Ok(Some((a_prime + input.t_multiplier) / input.t0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq_norm(v: &[Integer]) -> Integer {
        dot(v, v)
    }

    /// Shortest nonzero vector by exhaustive search over coefficients in
    /// `[-bound, bound]`.
    pub(crate) fn brute_shortest(basis: &LatticeBasis, bound: i64) -> Integer {
        let n = basis.rank();
        let dim = basis.ambient_dim();
        let mut best: Option<Integer> = None;
        let mut coeff = vec![-bound; n];
        loop {
            if coeff.iter().any(|&c| c != 0) {
                let mut v = vec![Integer::new(); dim];
                for (c, col) in coeff.iter().zip(basis.columns()) {
                    for (vi, x) in v.iter_mut().zip(col) {
                        *vi += Integer::from(x * *c);
                    }
                }
                let s = sq_norm(&v);
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return best.expect("nonempty");
                }
                coeff[i] += 1;
                if coeff[i] > bound {
                    coeff[i] = -bound;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn identity_is_reduced() {
        let cols = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let b = LatticeBasis::from_i64_columns(&cols).unwrap();
        let out = lll_reduce(&b).unwrap();
        assert_eq!(out.reduced, b);
        assert_eq!(out.b1_norm(64), 1);
    }

    #[test]
    fn two_dimensional_example() {
        let b = LatticeBasis::from_i64_columns(&[vec![1, 1], vec![0, 5]]).unwrap();
        let out = lll_reduce(&b).unwrap();
        assert_eq!(sq_norm(&out.reduced.columns()[0]), 2);
        assert_eq!(brute_shortest(&b, 10), 2);
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let b = LatticeBasis::from_i64_columns(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(lll_reduce(&b).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn log_shaped_lattice() {
        let prec = 200;
        let c0 = Float::with_val(prec, 1e8);
        let row: Vec<Integer> = [2u32, 3, 5]
            .iter()
            .map(|&v| crate::precision::round_to_integer(&(Float::with_val(prec, v).ln() * &c0)))
            .collect();
        let b = LatticeBasis::log_form_shape(&row).unwrap();
        let out = lll_reduce(&b).unwrap();
        let b1 = out.b1_norm(prec);
        let cube_root = Float::with_val(prec, c0.cbrt_ref()) / 10u32;
        assert!(b1 >= cube_root);
        // The reduced first vector is within 2^((p-1)/2) of the shortest one.
        let reduced = lll_reduce(&out.reduced).unwrap();
        let lambda1 = brute_shortest(&reduced.reduced, 3);
        assert!(sq_norm(&out.reduced.columns()[0]) <= lambda1 * 4u32);
        assert_eq!(
            b.determinant().unwrap().abs(),
            out.reduced.determinant().unwrap().abs()
        );
    }

    #[test]
    fn target_coordinates() {
        let b = LatticeBasis::from_i64_columns(&[vec![3, 1, 0], vec![1, 4, 1], vec![0, 2, 5]]).unwrap();
        let out = lll_reduce(&b).unwrap();
        let zero = vec![Integer::new(); 3];
        let c = coords_of_target(&out, &zero).unwrap();
        assert!(c.target_in_lattice());
        let b1 = out.reduced.columns()[0].clone();
        let c = coords_of_target(&out, &b1).unwrap();
        assert_eq!(c.s, vec![Rational::from(1), Rational::new(), Rational::new()]);
        assert!(c.target_in_lattice());
        // Independent check by Cramer's rule.
        let x: Vec<Integer> = vec![7.into(), (-2).into(), 11.into()];
        let c = coords_of_target(&out, &x).unwrap();
        let cols = out.reduced.columns();
        let det = integer_determinant(cols);
        for i in 0..3 {
            let mut m = cols.to_vec();
            m[i] = x.clone();
            let expect = Rational::from((integer_determinant(&m), det.clone()));
            assert_eq!(c.s[i], expect);
        }
        assert!(!c.target_in_lattice());
    }

    #[test]
    fn hypothesis_fails_for_tiny_c0() {
        let prec = 200;
        let c0 = Integer::from(10);
        let row: Vec<Integer> = [2u32, 3]
            .iter()
            .map(|&v| crate::precision::round_to_integer(&(Float::with_val(prec, v).ln() * 10u32)))
            .collect();
        let b = LatticeBasis::log_form_shape(&row).unwrap();
        let out = lll_reduce(&b).unwrap();
        let input = LemmaInput {
            degree: 3,
            p: 2,
            prior_bound: Float::with_val(prec, 1e12),
            t_multiplier: 1,
            t0: 1,
            c0,
            c5: Float::with_val(prec, 2.66),
            c6: Float::with_val(prec, 5900),
        };
        let x: Vec<Integer> = vec![0.into(), (-7).into()];
        let c = coords_of_target(&out, &x).unwrap();
        assert!(check_hypothesis_nz(&out, &c, &input).is_none());
        assert!(check_hypothesis_z(&out, &input).unwrap().is_none());
        let low = LemmaInput { degree: 2, ..input };
        assert!(check_hypothesis_z(&out, &low).is_err());
    }
}
