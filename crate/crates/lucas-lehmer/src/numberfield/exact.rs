//! Exact arithmetic in `Q[g]/(f(g))` on the power basis of a generator `g`.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// A number field presented by the monic integer minimal polynomial of its
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactField {
    minpoly: Vec<Integer>,
}

/// An element `sum c_i g^i` with rational coefficients, `i < degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<Rational>,
}

impl FieldElement {
    /// Coefficients on the power basis, increasing degree.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

impl ExactField {
    /// Field defined by a monic integer polynomial (increasing degree).
    pub fn new(minpoly: Vec<Integer>) -> Result<Self> {
        if minpoly.len() < 2 || *minpoly.last().expect("nonempty") != 1 {
            return Err(Error::InvalidInput("minimal polynomial must be monic of degree >= 1".into()));
        }
        Ok(ExactField { minpoly })
    }

    /// Degree of the field.
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// The defining polynomial, increasing degree.
    pub fn minpoly(&self) -> &[Integer] {
        &self.minpoly
    }

    /// Reduce an arbitrary-length polynomial modulo the defining polynomial.
    pub fn element(&self, coeffs: &[Rational]) -> FieldElement {
        let d = self.degree();
        let mut c: Vec<Rational> = coeffs.to_vec();
        if c.len() < d {
            c.resize(d, Rational::new());
        }
        for top in (d..c.len()).rev() {
            let lead = std::mem::take(&mut c[top]);
            if lead != 0 {
                for (i, m) in self.minpoly[..d].iter().enumerate() {
                    c[top - d + i] -= Rational::from(&lead * m);
                }
            }
        }
        c.truncate(d);
        FieldElement { coeffs: c }
    }

    /// Element from integer coefficients.
    pub fn element_from_ints(&self, coeffs: &[i64]) -> FieldElement {
        let c: Vec<Rational> = coeffs.iter().map(|&v| Rational::from(v)).collect();
        self.element(&c)
    }

    /// The rational constant `v`.
    pub fn constant(&self, v: impl Into<Rational>) -> FieldElement {
        self.element(&[v.into()])
    }

    /// The generator `g`.
    pub fn generator(&self) -> FieldElement {
        self.element(&[Rational::new(), Rational::from(1)])
    }

    /// `a + b`.
    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let c: Vec<Rational> =
            a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| Rational::from(x + y)).collect();
        FieldElement { coeffs: c }
    }

    /// `a - b`.
    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let c: Vec<Rational> =
            a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| Rational::from(x - y)).collect();
        FieldElement { coeffs: c }
    }

    /// `-a`.
    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().map(|x| Rational::from(-x)).collect() }
    }

    /// `a * b`.
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut prod = vec![Rational::new(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += Rational::from(x * y);
            }
        }
        self.element(&prod)
    }

    /// True for the zero element.
    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|c| *c == 0)
    }

    /// True when `a = 1`.
    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.coeffs[0] == 1 && a.coeffs[1..].iter().all(|c| *c == 0)
    }

    /// Matrix of multiplication by `a` on the power basis (column `i` is
    /// `a g^i`).
    fn multiplication_matrix(&self, a: &FieldElement) -> Vec<Vec<Rational>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        let g = self.generator();
        for _ in 0..d {
            cols.push(cur.coeffs.clone());
            cur = self.mul(&cur, &g);
        }
        // transpose into rows
        (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
    }

    /// Field norm `N(a)`, the determinant of multiplication by `a`.
    pub fn norm(&self, a: &FieldElement) -> Rational {
        let mut m = self.multiplication_matrix(a);
        let d = m.len();
        let mut det = Rational::from(1);
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| m[r][col] != 0) else {
                return Rational::new();
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det *= &p;
            for r in col + 1..d {
                if m[r][col] == 0 {
                    continue;
                }
                let f = Rational::from(&m[r][col] / &p);
                for c in col..d {
                    let t = Rational::from(&f * &m[col][c]);
                    m[r][c] -= t;
                }
            }
        }
        det
    }

    /// Multiplicative inverse; fails for zero.
    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        let d = self.degree();
        let mut m = self.multiplication_matrix(a);
        let mut rhs: Vec<Rational> = vec![Rational::new(); d];
        rhs[0] = Rational::from(1);
        for col in 0..d {
            let piv = (col..d).find(|&r| m[r][col] != 0).ok_or(Error::NonUnit)?;
            m.swap(piv, col);
            rhs.swap(piv, col);
            let p = m[col][col].clone();
            for r in 0..d {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let f = Rational::from(&m[r][col] / &p);
                for c in col..d {
                    let t = Rational::from(&f * &m[col][c]);
                    m[r][c] -= t;
                }
                let t = Rational::from(&f * &rhs[col]);
                rhs[r] -= t;
            }
        }
        let coeffs = (0..d).map(|i| Rational::from(&rhs[i] / &m[i][i])).collect();
        Ok(FieldElement { coeffs })
    }

    /// Inverse of a unit of the maximal order: fails unless `N(a) = +-1`.
    pub fn unit_inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        let n = self.norm(a);
        if n != 1 && n != -1 {
            return Err(Error::NonUnit);
        }
        self.inverse(a)
    }

    /// `a^e` for any integer `e` (negative exponents need `a != 0`).
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inverse(a)? } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.constant(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Apply the endomorphism sending the generator to `image`.
    pub fn substitute(&self, a: &FieldElement, image: &FieldElement) -> FieldElement {
        let mut acc = self.constant(0);
        for c in a.coeffs.iter().rev() {
            acc = self.mul(&acc, image);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Real value of `a` under the embedding sending the generator to `root`.
    pub fn embed(&self, a: &FieldElement, root: &Float) -> Float {
        let prec = root.prec();
        let mut acc = Float::new(prec);
        for c in a.coeffs.iter().rev() {
            acc *= root;
            acc += Float::with_val(prec, c);
        }
        acc
    }
}
