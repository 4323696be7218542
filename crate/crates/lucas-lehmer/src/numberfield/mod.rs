//! Per-field data for `Q(2cos(2 pi/n))` and for the quartic field attached
//! to `X^2 - 3Y^2 = -2`: real embeddings, fundamental units, ideal
//! generators and heights.
//!
//! Embeddings of the cyclotomic fields are indexed by the increasing list
//! `a_1 = 1 < a_2 < ...` of residues below `n/2` coprime to `n`; embedding
//! `l` sends `r = 2cos(2 pi/n)` to `2cos(2 pi a_l/n)`.

pub mod catalog;
pub mod exact;
pub mod height;

use rug::float::Constant;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{chebyshev_v, coprime_residues, gcd, largest_prime_factor, real_cyclotomic_minpoly};
use crate::precision::{agree_to_digits, Precision};

use catalog::{entries_for, Expression, Slot};
pub use exact::{ExactField, FieldElement};

/// Identifies one of the supported fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldKey {
    /// `Q(2cos(2 pi/n))`.
    Cyclotomic(u32),
    /// The quartic field of `S^4 - 4S^3 - 12S^2 + 8S + 4`.
    SpecialQuartic,
}

/// Indices whose cyclotomic field is catalogued.
pub const CATALOGUED_INDICES: [u32; 14] = [7, 9, 11, 13, 15, 16, 17, 19, 20, 21, 23, 24, 25, 29];

/// Coefficients (increasing degree) of the quartic `S^4 - 4S^3 - 12S^2 + 8S + 4`.
pub const SPECIAL_QUARTIC: [i64; 5] = [4, 8, -12, -4, 1];

impl FieldKey {
    /// Degree of the field.
    pub fn degree(self) -> usize {
        match self {
            FieldKey::Cyclotomic(n) => coprime_residues(n).len(),
            FieldKey::SpecialQuartic => 4,
        }
    }

    /// Monic minimal polynomial of the generator.
    pub fn minpoly(self) -> Vec<Integer> {
        match self {
            FieldKey::Cyclotomic(n) => real_cyclotomic_minpoly(n),
            FieldKey::SpecialQuartic => SPECIAL_QUARTIC.iter().map(|&c| Integer::from(c)).collect(),
        }
    }

    /// The image of the generator under embedding `l` (0-based).
    pub fn root(self, l: usize, prec: Precision) -> Float {
        let bits = prec.bits() + 32;
        let v = match self {
            FieldKey::Cyclotomic(n) => {
                let a = coprime_residues(n)[l];
                two_cos(a, n, bits)
            }
            FieldKey::SpecialQuartic => {
                let s3 = Float::with_val(bits, 3).sqrt();
                let (outer, inner) = if l < 2 { (1, 1) } else { (-1, -1) };
                let base = Float::with_val(bits, 1) + Float::with_val(bits, &s3 * outer);
                let rad = (Float::with_val(bits, 6) + Float::with_val(bits, &s3 * (2 * inner))).sqrt();
                if l % 2 == 0 {
                    base + rad
                } else {
                    base - rad
                }
            }
        };
        Float::with_val(prec.bits(), v)
    }
}

/// `2cos(2 pi a/n)` with `bits` of mantissa.
pub fn two_cos(a: u32, n: u32, bits: u32) -> Float {
    let pi = Float::with_val(bits + 16, Constant::Pi);
    let ang = pi * Float::with_val(bits + 16, 2 * a) / Float::with_val(bits + 16, n);
    Float::with_val(bits, ang.cos() * 2u32)
}

/// Symbolic origin of a real algebraic number, used to recompute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealDescriptor {
    /// `2cos(2 pi a/n)`.
    TwoCos { a: u32, n: u32 },
    /// Root number `index` of the special quartic (nested-radical order).
    QuarticRoot { index: usize },
    /// `(a + sqrt(b))/c`.
    QuadraticSurd { a: i64, b: i64, c: i64 },
    /// A field element under an embedding, optionally in absolute value.
    Element { field: FieldKey, coeffs: Vec<Rational>, embedding: usize, absolute: bool },
}

impl RealDescriptor {
    /// Evaluate at the given precision.
    pub fn evaluate(&self, prec: Precision) -> Float {
        let bits = prec.bits();
        match self {
            RealDescriptor::TwoCos { a, n } => two_cos(*a, *n, bits),
            RealDescriptor::QuarticRoot { index } => FieldKey::SpecialQuartic.root(*index, prec),
            RealDescriptor::QuadraticSurd { a, b, c } => {
                let s = Float::with_val(bits + 16, *b).sqrt();
                Float::with_val(bits, (s + *a) / *c)
            }
            RealDescriptor::Element { field, coeffs, embedding, absolute } => {
                let root = field.root(*embedding, prec.plus(10));
                let k = ExactField::new(field.minpoly()).expect("monic");
                let e = k.element(coeffs);
                let v = k.embed(&e, &root);
                let v = if *absolute { v.abs() } else { v };
                Float::with_val(bits, v)
            }
        }
    }
}

/// A real algebraic number with a known working value.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicReal {
    value: Float,
    prec: Precision,
    descriptor: RealDescriptor,
}

impl AlgebraicReal {
    /// Evaluate `descriptor` at `prec`.
    pub fn new(descriptor: RealDescriptor, prec: Precision) -> Self {
        AlgebraicReal { value: descriptor.evaluate(prec), prec, descriptor }
    }

    /// Working value.
    pub fn value(&self) -> &Float {
        &self.value
    }

    /// Working precision.
    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Symbolic origin.
    pub fn descriptor(&self) -> &RealDescriptor {
        &self.descriptor
    }

    /// Value recomputed at another precision.
    pub fn evaluate(&self, prec: Precision) -> Float {
        self.descriptor.evaluate(prec)
    }

    /// True when a recomputation at `prec + 20` agrees to `prec - 5` digits.
    pub fn is_consistent(&self) -> bool {
        let hi = self.evaluate(self.prec.plus(20));
        agree_to_digits(&self.value, &hi, self.prec.digits() - 5)
    }
}

/// Fundamental units of one field with the absolute values of their
/// conjugates.
#[derive(Debug, Clone)]
pub struct UnitSystem {
    /// Field.
    pub field: FieldKey,
    /// Degree `d`.
    pub degree: usize,
    /// The `d - 1` units on the power basis of the generator.
    pub exact_units: Vec<FieldElement>,
    /// `conjugates[i][j] = |eps_i^(j)|`.
    pub conjugates: Vec<Vec<AlgebraicReal>>,
}

impl UnitSystem {
    /// `|eps_i^(j)|` as a float.
    pub fn abs_conjugate(&self, i: usize, j: usize) -> &Float {
        self.conjugates[i][j].value()
    }
}

/// Non-associate elements whose norm has a given absolute value.
#[derive(Debug, Clone)]
pub struct RepresentativeSet {
    /// `|m|`.
    pub rhs: i64,
    /// The representatives on the power basis.
    pub mus: Vec<FieldElement>,
    /// `conjugates[s][l] = |mu_s^(l)|`.
    pub conjugates: Vec<Vec<Float>>,
}

impl RepresentativeSet {
    /// Largest conjugate modulus over all representatives.
    pub fn max_conjugate(&self) -> Float {
        self.conjugates.iter().flatten().max_by(|a, b| a.total_cmp(b)).expect("nonempty").clone()
    }

    /// Smallest conjugate modulus over all representatives.
    pub fn min_conjugate(&self) -> Float {
        self.conjugates.iter().flatten().min_by(|a, b| a.total_cmp(b)).expect("nonempty").clone()
    }
}

/// Everything the Thue solver needs to know about a field.
#[derive(Debug, Clone)]
pub struct FieldData {
    /// Which field.
    pub key: FieldKey,
    /// Working precision.
    pub prec: Precision,
    /// Exact arithmetic on the power basis of the generator.
    pub exact: ExactField,
    /// Real embeddings of the generator (= the roots of `F(X, 1)`).
    pub roots: Vec<AlgebraicReal>,
    /// Fundamental units.
    pub units: UnitSystem,
    /// Galois group of the normal closure as permutations of embedding
    /// indices; the identity comes first.
    pub galois: Vec<Vec<usize>>,
    /// For abelian fields, the image of the generator under the
    /// automorphism aligned with `galois`.
    pub automorphisms: Option<Vec<FieldElement>>,
    /// Representative sets, one per admissible `|m|`.
    pub representatives: Vec<RepresentativeSet>,
    /// Degree used for the modified height.
    pub height_degree: u32,
}

/// Elements of the quartic field's Galois group (dihedral of order 8)
/// acting on the four roots in nested-radical order.
pub const QUARTIC_GALOIS: [[usize; 4]; 8] = [
    [0, 1, 2, 3],
    [1, 0, 2, 3],
    [0, 1, 3, 2],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
    [2, 3, 1, 0],
    [3, 2, 0, 1],
];

/// `sin(a pi/n)/sin(pi/n)` as a polynomial in `r = 2cos(2 pi/n)` (not reduced).
fn sine_ratio_poly(a: u32, n: u32) -> Vec<Rational> {
    // For odd a, sin(a t)/sin t = 1 + sum_{k=1}^{(a-1)/2} 2cos(2kt); with
    // t = pi/n each 2cos(2k pi/n) = V_k(r).  For even a (odd n) use n - a.
    let a = if a % 2 == 0 { n - a } else { a };
    let half = ((a - 1) / 2) as usize;
    let v = chebyshev_v(half);
    let mut out = vec![Rational::new(); half + 1];
    out[0] += 1;
    for vk in v.iter().skip(1) {
        for (i, c) in vk.iter().enumerate() {
            out[i] += c;
        }
    }
    out
}

fn expression_element(k: &ExactField, field: FieldKey, e: &Expression) -> Result<FieldElement> {
    match (e, field) {
        (Expression::SineRatio(a), FieldKey::Cyclotomic(n)) => Ok(k.element(&sine_ratio_poly(*a, n))),
        (Expression::Polynomial { coeffs, denominator }, _) => {
            let c: Vec<Rational> =
                coeffs.iter().map(|&v| Rational::from((v, *denominator))).collect();
            Ok(k.element(&c))
        }
        _ => Err(Error::InvalidInput("sine ratios need a cyclotomic field".into())),
    }
}

fn element_conjugates(k: &ExactField, e: &FieldElement, roots: &[AlgebraicReal]) -> Vec<Float> {
    roots.iter().map(|r| k.embed(e, r.value()).abs()).collect()
}

/// The prime `P(n/(n,3))` whose ideal the catalogued generator produces.
pub fn ideal_prime(n: u32) -> i64 {
    i64::from(largest_prime_factor(n / gcd(n, 3)))
}

/// Build the field data of `key` at precision `prec`.
pub fn field_data(key: FieldKey, prec: Precision) -> Result<FieldData> {
    let prec = Precision::new(prec.digits())?;
    if let FieldKey::Cyclotomic(n) = key {
        if !CATALOGUED_INDICES.contains(&n) {
            return Err(Error::UnsupportedIndex { n, what: "the unit catalogue" });
        }
    }
    let exact = ExactField::new(key.minpoly())?;
    let d = exact.degree();
    let roots: Vec<AlgebraicReal> = (0..d)
        .map(|l| {
            let desc = match key {
                FieldKey::Cyclotomic(n) => RealDescriptor::TwoCos { a: coprime_residues(n)[l], n },
                FieldKey::SpecialQuartic => RealDescriptor::QuarticRoot { index: l },
            };
            AlgebraicReal::new(desc, prec)
        })
        .collect();

    let entries = entries_for(key)?;
    let mut exact_units = Vec::new();
    let mut mu_gen = None;
    for e in &entries {
        let el = expression_element(&exact, key, &e.expression)?;
        match e.slot {
            Slot::Unit(i) => {
                if i != exact_units.len() + 1 {
                    return Err(Error::Invariant(format!("catalogue units out of order for {key:?}")));
                }
                exact_units.push(el);
            }
            Slot::IdealGenerator => mu_gen = Some(el),
        }
    }
    if exact_units.len() != d - 1 {
        return Err(Error::Invariant(format!("{key:?}: expected {} units", d - 1)));
    }
    for (i, u) in exact_units.iter().enumerate() {
        let nrm = exact.norm(u);
        if nrm != 1 && nrm != -1 {
            return Err(Error::Invariant(format!("{key:?}: unit {} has norm {nrm}", i + 1)));
        }
    }
    let conjugates: Vec<Vec<AlgebraicReal>> = exact_units
        .iter()
        .map(|u| {
            (0..d)
                .map(|l| {
                    AlgebraicReal::new(
                        RealDescriptor::Element {
                            field: key,
                            coeffs: u.coeffs().to_vec(),
                            embedding: l,
                            absolute: true,
                        },
                        prec,
                    )
                })
                .collect()
        })
        .collect();
    let units = UnitSystem { field: key, degree: d, exact_units, conjugates };

    let (galois, automorphisms) = match key {
        FieldKey::Cyclotomic(n) => {
            let res = coprime_residues(n);
            let index_of = |v: u32| {
                let v = v % n;
                let v = v.min(n - v);
                res.iter().position(|&a| a == v).expect("coprime residue")
            };
            let v = chebyshev_v(n as usize);
            let mut perms = Vec::new();
            let mut auts = Vec::new();
            for &c in &res {
                perms.push(res.iter().map(|&a| index_of(c * a)).collect::<Vec<_>>());
                let img: Vec<Rational> = v[c as usize].iter().map(Rational::from).collect();
                auts.push(exact.element(&img));
            }
            (perms, Some(auts))
        }
        FieldKey::SpecialQuartic => (QUARTIC_GALOIS.iter().map(|p| p.to_vec()).collect(), None),
    };

    let mut representatives = vec![RepresentativeSet {
        rhs: 1,
        mus: vec![exact.constant(1)],
        conjugates: vec![vec![prec.float(1); d]],
    }];
    if let FieldKey::Cyclotomic(n) = key {
        let mu = mu_gen.ok_or_else(|| Error::Invariant(format!("no ideal generator for n = {n}")))?;
        let p = ideal_prime(n);
        let nrm = exact.norm(&mu);
        if nrm != p && nrm != -p {
            return Err(Error::Invariant(format!("generator for n = {n} has norm {nrm}, not +-{p}")));
        }
        let conj = element_conjugates(&exact, &mu, &roots);
        representatives.push(RepresentativeSet { rhs: p, mus: vec![mu], conjugates: vec![conj] });
    }

    let height_degree = match key {
        FieldKey::Cyclotomic(_) => d as u32,
        FieldKey::SpecialQuartic => 24,
    };

    Ok(FieldData { key, prec, exact, roots, units, galois, automorphisms, representatives, height_degree })
}

impl FieldData {
    /// Degree `d`.
    pub fn degree(&self) -> usize {
        self.exact.degree()
    }

    /// Root `xi^(l)` as a float.
    pub fn root(&self, l: usize) -> &Float {
        self.roots[l].value()
    }

    /// Representative set for `|m|`.
    pub fn representatives_for(&self, m: i64) -> Result<&RepresentativeSet> {
        self.representatives.iter().find(|r| r.rhs == m.abs()).ok_or(Error::InadmissibleRhs {
            n: match self.key {
                FieldKey::Cyclotomic(n) => n,
                FieldKey::SpecialQuartic => 12,
            },
            k: m,
        })
    }

    /// The conjugate `sigma(e)` of `e` for the automorphism with position
    /// `g` in [`Self::galois`] (abelian fields only).
    pub fn conjugate_element(&self, e: &FieldElement, g: usize) -> Result<FieldElement> {
        let auts = self
            .automorphisms
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("field is not abelian".into()))?;
        Ok(self.exact.substitute(e, &auts[g]))
    }

    /// Position in [`Self::galois`] of the automorphism sending embedding
    /// 0 to embedding `l` (abelian fields only).
    pub fn automorphism_to(&self, l: usize) -> usize {
        self.galois.iter().position(|p| p[0] == l).expect("transitive group")
    }

    /// The element `e` viewed at embedding `l`, as an element of the field
    /// itself (abelian fields only): `sigma_l(e)`.
    pub fn element_at(&self, e: &FieldElement, l: usize) -> Result<FieldElement> {
        self.conjugate_element(e, self.automorphism_to(l))
    }
}
