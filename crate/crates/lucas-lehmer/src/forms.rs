//! Cyclotomic binary forms `F_n(X, Y)`.
//!
//! `F_n` is the homogeneous form of degree `phi(n)/2` with
//! `F_n(a^2 + b^2, ab) = Phi_n(a, b)`, equivalently
//! `F_n(X, Y) = prod (X - 2cos(2 pi j / n) Y)` over `j < n/2` coprime to `n`.
//! Coefficients are produced by exact integer arithmetic: the cyclotomic
//! polynomial is obtained by exact division of `z^n - 1`, and its palindromic
//! halves are rewritten in `w = z + 1/z`.

use std::collections::BTreeSet;

use rug::ops::Pow;
use rug::Integer;

use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients in increasing degree.
pub(crate) type IntPoly = Vec<Integer>;

fn trim(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}

/// Exact division of `num` by the monic polynomial `den`.
fn div_exact_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dn = den.len() - 1;
    let mut rem = num.clone();
    let qlen = num.len() - dn;
    let mut quot = vec![Integer::new(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c != 0 {
            for (j, dc) in den.iter().enumerate() {
                rem[i + j] -= Integer::from(&c * dc);
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "division is not exact");
    quot
}

/// The cyclotomic polynomial `Phi_n(z)` with exact integer coefficients.
pub(crate) fn cyclotomic_polynomial(n: u32) -> IntPoly {
    let mut p: IntPoly = vec![Integer::new(); n as usize + 1];
    p[0] = Integer::from(-1);
    p[n as usize] = Integer::from(1);
    for d in 1..n {
        if n % d == 0 {
            p = div_exact_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    trim(&mut p);
    p
}

/// `V_k(w)` with `V_k(z + 1/z) = z^k + z^-k`, for `k = 0..=max`.
pub(crate) fn chebyshev_v(max: usize) -> Vec<IntPoly> {
    let mut v: Vec<IntPoly> = Vec::with_capacity(max + 1);
    v.push(vec![Integer::from(2)]);
    if max >= 1 {
        v.push(vec![Integer::new(), Integer::from(1)]);
    }
    for k in 2..=max {
        let mut next = vec![Integer::new(); k + 1];
        for (i, c) in v[k - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in v[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        v.push(next);
    }
    v
}

/// Minimal polynomial of `2cos(2 pi / n)` (increasing degree, monic).
pub(crate) fn real_cyclotomic_minpoly(n: u32) -> IntPoly {
    let phi = cyclotomic_polynomial(n);
    let half = (phi.len() - 1) / 2;
    let v = chebyshev_v(half);
    let mut psi: IntPoly = vec![Integer::new(); half + 1];
    psi[0] += &phi[half];
    for k in 1..=half {
        for (i, c) in v[k].iter().enumerate() {
            psi[i] += Integer::from(&phi[half + k] * c);
        }
    }
    trim(&mut psi);
    psi
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&j| gcd(j, n) == 1).count() as u32
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest prime divisor of `n` (1 for `n = 1`).
pub fn largest_prime_factor(mut n: u32) -> u32 {
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            best = p;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        best = best.max(n);
    }
    best
}

/// The integers `a < n/2` coprime to `n`, in increasing order.  They index
/// the real embeddings `2cos(2 pi a / n)` throughout the crate.
pub fn coprime_residues(n: u32) -> Vec<u32> {
    (1..n).filter(|&a| 2 * a < n && gcd(a, n) == 1).collect()
}

fn check_index(n: u32) -> Result<()> {
    if n <= 4 || n == 6 {
        Err(Error::ExcludedIndex(n))
    } else {
        Ok(())
    }
}

/// Homogeneous integer binary form `sum c_k X^(d-k) Y^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    n: u32,
    coeffs: Vec<Integer>,
}

impl BinaryForm {
    /// Index `n` the form was built for.
    pub fn index(&self) -> u32 {
        self.n
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients in descending powers of `X`.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Exact value at `(x, y)`.
    pub fn evaluate(&self, x: &Integer, y: &Integer) -> Integer {
        evaluate_coeffs(&self.coeffs, x, y)
    }

    /// Value at machine-integer arguments.
    pub fn evaluate_i64(&self, x: i64, y: i64) -> Integer {
        self.evaluate(&Integer::from(x), &Integer::from(y))
    }

    /// The form `F(X, -Y)`.
    pub fn with_negated_y(&self) -> BinaryForm {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { Integer::from(-c) } else { c.clone() })
            .collect();
        BinaryForm { n: self.n, coeffs }
    }

    /// Dump line `n degree c_0 ... c_d`.
    pub fn dump_line(&self) -> String {
        let mut s = format!("{} {}", self.n, self.degree());
        for c in &self.coeffs {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }
}

/// Exact value of `sum c_k x^(d-k) y^k` (coefficients descending in `x`).
pub(crate) fn evaluate_coeffs(coeffs: &[Integer], x: &Integer, y: &Integer) -> Integer {
    let mut acc = Integer::new();
    let mut ypow = Integer::from(1);
    let d = coeffs.len() - 1;
    let mut xpows = Vec::with_capacity(d + 1);
    xpows.push(Integer::from(1));
    for i in 1..=d {
        xpows.push(Integer::from(&xpows[i - 1] * x));
    }
    for (k, c) in coeffs.iter().enumerate() {
        if *c != 0 {
            acc += Integer::from(c * &ypow) * &xpows[d - k];
        }
        ypow *= y;
    }
    acc
}

/// Build `F_n` for `n > 4`, `n != 6`.
pub fn build_form(n: u32) -> Result<BinaryForm> {
    check_index(n)?;
    let psi = real_cyclotomic_minpoly(n);
    let coeffs: Vec<Integer> = psi.iter().rev().cloned().collect();
    let form = BinaryForm { n, coeffs };
    if form.degree() as u32 != euler_phi(n) / 2 || form.coeffs[0] != 1 {
        return Err(Error::Invariant(format!("form F_{n} has wrong shape")));
    }
    Ok(form)
}

/// Admissible values of `Phi_n(alpha, beta)` for a pair without primitive
/// divisor of its `n`-th term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormTarget {
    n: u32,
    rhs: BTreeSet<i64>,
}

impl FormTarget {
    /// The admissible right-hand sides for index `n`.
    pub fn new(n: u32) -> Result<Self> {
        check_index(n)?;
        let rhs: BTreeSet<i64> = if n == 12 {
            [1, -1, 2, -2, 3, -3, 6, -6].into_iter().collect()
        } else {
            let p = i64::from(largest_prime_factor(n / gcd(n, 3)));
            [1, -1, p, -p].into_iter().collect()
        };
        Ok(FormTarget { n, rhs })
    }

    /// Index.
    pub fn index(&self) -> u32 {
        self.n
    }

    /// The right-hand sides in increasing order.
    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.rhs.iter().copied()
    }

    /// The distinct absolute values of the right-hand sides.
    pub fn magnitudes(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.rhs.iter().map(|v| v.abs()).collect();
        set.into_iter().collect()
    }

    /// True when `v` is admissible.
    pub fn contains(&self, v: &Integer) -> bool {
        v.to_i64().is_some_and(|v| self.rhs.contains(&v))
    }
}

/// The identity `F_2t(X, Y) = F_t(X, -Y)` for odd `t`.
#[derive(Debug, Clone)]
pub struct EvenReduction {
    /// The odd index `t`.
    pub odd: BinaryForm,
    /// The form of index `2t`.
    pub even: BinaryForm,
}

impl EvenReduction {
    /// Map a solution of `F_t(X, Y') = m` to a solution of `F_2t(X, Y) = m`.
    pub fn map_solution(&self, x: &Integer, y: &Integer) -> (Integer, Integer) {
        (x.clone(), Integer::from(-y))
    }
}

/// Check `F_2t(X, Y) = F_t(X, -Y)` coefficientwise and return the pair.
pub fn reduce_even(t: u32) -> Result<EvenReduction> {
    if t % 2 == 0 || t <= 3 {
        return Err(Error::InvalidInput(format!(
            "the even-index identity needs an odd t > 3, got {t}"
        )));
    }
    let odd = build_form(t)?;
    let even = build_form(2 * t)?;
    if odd.with_negated_y().coeffs != even.coeffs {
        return Err(Error::Invariant(format!("F_{} != F_{}(X,-Y)", 2 * t, t)));
    }
    Ok(EvenReduction { odd, even })
}

/// How a form of index `n` is expressed through a form of smaller index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreSubstitution {
    /// `F_n(X, Y) = F_m(X, -Y)` with `n = 2m`, `m` odd.
    NegateY,
    /// `F_n(X, Y) = F_m(X', Y^k)` with `k = n/m` and `X'` the integer
    /// polynomial given (coefficients of `X^(k-2i) Y^(2i)`, `i = 0..`).
    PowerLift {
        /// The exponent `k = n/m`.
        k: u32,
        /// `X'(X, Y)`, stored as a binary form of degree `k` in `(X, Y)`.
        x_prime: Vec<Integer>,
    },
}

/// Reduction of an index to a smaller core index.
#[derive(Debug, Clone)]
pub struct CoreReduction {
    /// Original index.
    pub n: u32,
    /// Core index.
    pub m: u32,
    /// The substitution relating the two forms.
    pub substitution: CoreSubstitution,
}

/// The index pairs with a smaller core that occur for `n <= 30`.
pub const CORE_PAIRS: [(u32, u32); 7] =
    [(14, 7), (18, 9), (22, 11), (26, 13), (27, 9), (28, 14), (30, 15)];

/// `a^k + b^k` as a form in `(x, y)` where `a + b = x`, `ab = y^2`; returned
/// in descending powers of `x` (length `k + 1`).
fn power_sum_form(k: u32) -> Vec<Integer> {
    // D_0 = 2, D_1 = x, D_j = x D_{j-1} - y^2 D_{j-2}; kept in increasing
    // powers of y with length j+1.
    let mut prev: Vec<Integer> = vec![Integer::from(2)];
    let mut cur: Vec<Integer> = vec![Integer::from(1), Integer::new()];
    if k == 0 {
        return prev;
    }
    for _ in 2..=k {
        let mut next = vec![Integer::new(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i + 2] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

impl CoreReduction {
    /// `(X', Y')` at `(x, y)`.
    pub fn substitute(&self, x: &Integer, y: &Integer) -> (Integer, Integer) {
        match &self.substitution {
            CoreSubstitution::NegateY => (x.clone(), Integer::from(-y)),
            CoreSubstitution::PowerLift { k, x_prime } => {
                (evaluate_coeffs(x_prime, x, y), y.clone().pow(*k))
            }
        }
    }

    /// All integer `(x, y)` whose image under [`Self::substitute`] is
    /// `(xp, yp)`.
    pub fn pullback(&self, xp: &Integer, yp: &Integer) -> Vec<(Integer, Integer)> {
        match &self.substitution {
            CoreSubstitution::NegateY => vec![(xp.clone(), Integer::from(-yp))],
            CoreSubstitution::PowerLift { k, x_prime } => {
                let mut ys = Vec::new();
                if *k % 2 == 1 {
                    let r = Integer::from(yp.abs_ref()).root(*k);
                    if Integer::from(r.clone().pow(*k)) == Integer::from(yp.abs_ref()) {
                        ys.push(if *yp < 0 { -r } else { r });
                    }
                } else if *yp >= 0 {
                    let r = yp.clone().root(*k);
                    if Integer::from(r.clone().pow(*k)) == *yp {
                        ys.push(Integer::from(-&r));
                        if r != 0 {
                            ys.push(r);
                        }
                    }
                }
                let mut out = Vec::new();
                for y in ys {
                    // X'(x, y) - xp is a monic polynomial in x; its integer
                    // roots are bounded by one plus its largest coefficient.
                    let mut bound = Integer::from(xp.abs_ref());
                    let mut ypow = Integer::from(1);
                    for c in x_prime.iter() {
                        let t = Integer::from(c * &ypow).abs();
                        if t > bound {
                            bound = t;
                        }
                        ypow *= &y;
                    }
                    let bound = bound.to_i64().unwrap_or(i64::MAX / 2) + 1;
                    for x in -bound..=bound {
                        let x = Integer::from(x);
                        if evaluate_coeffs(x_prime, &x, &y) == *xp {
                            out.push((x, y.clone()));
                        }
                    }
                }
                out
            }
        }
    }
}

/// Reduce `n` to its core index (one step).
pub fn reduce_to_core(n: u32) -> Result<CoreReduction> {
    let &(_, m) = CORE_PAIRS
        .iter()
        .find(|(a, _)| *a == n)
        .ok_or(Error::UnsupportedIndex { n, what: "core reduction" })?;
    let pn = largest_prime_factor(n / gcd(n, 3));
    let pm = largest_prime_factor(m / gcd(m, 3));
    if pn != pm {
        return Err(Error::Invariant(format!("P({n}) != P({m}) for core pair")));
    }
    let substitution = if n == 2 * m && m % 2 == 1 {
        CoreSubstitution::NegateY
    } else {
        let k = n / m;
        CoreSubstitution::PowerLift { k, x_prime: power_sum_form(k) }
    };
    Ok(CoreReduction { n, m, substitution })
}
