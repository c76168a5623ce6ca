//! Exact rational scalars, vectors and forms.
//!
//! Everything downstream is built on [`Rational`] (an arbitrary precision
//! reduced fraction). There is no floating point in this module.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// A point or vector of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        QVector(values.iter().map(|&v| int(v)).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Self {
        QVector(values.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Componentwise floor.
    pub fn floor(&self) -> Self {
        QVector(self.0.iter().map(|c| c.floor()).collect())
    }

    /// Componentwise nearest integer, rounding halves up.
    pub fn round(&self) -> Self {
        let half = rat(1, 2);
        QVector(self.0.iter().map(|c| (c + &half).floor()).collect())
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Integer coordinates; `None` unless the vector is integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Reduction into the half-open unit cube `[0,1)^n`.
    pub fn reduce_mod_lattice(&self) -> Self {
        QVector(self.0.iter().map(|c| c - c.floor()).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// A linear form `x -> sum coeffs_i x_i` on `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(pub Vec<Rational>);

impl LinearForm {
    pub fn from_ints(values: &[i64]) -> Self {
        LinearForm(values.iter().map(|&v| int(v)).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Self {
        LinearForm(values.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm(vec![Rational::zero(); dim])
    }

    /// The coordinate form `e_i^*`.
    pub fn coordinate(dim: usize, axis: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[axis] = Rational::one();
        LinearForm(coeffs)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Unchecked evaluation; dimensions must agree.
    pub fn apply(&self, x: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), x.dim());
        self.0.iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    /// Value on `x - base`.
    pub fn apply_shifted(&self, x: &QVector, base: &QVector) -> Rational {
        self.0
            .iter()
            .zip(x.0.iter().zip(&base.0))
            .map(|(a, (xi, bi))| a * (xi - bi))
            .sum()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        LinearForm(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn sub(&self, other: &LinearForm) -> Self {
        LinearForm(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        LinearForm(self.0.iter().map(|c| -c).collect())
    }

    /// The form `x -> self(A x)`, i.e. the row vector times `A`.
    pub fn compose(&self, a: &IntMatrix) -> Self {
        let n = a.dim();
        LinearForm(
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&i| a.get(i, j) != 0)
                        .map(|i| &self.0[i] * int(a.get(i, j)))
                        .sum()
                })
                .collect(),
        )
    }

    /// Same coefficients read as a vector (used for outward normals).
    pub fn as_vector(&self) -> QVector {
        QVector(self.0.clone())
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        primitive_integer(&self.0)
    }

    /// Primitive integer normal with a positive leading nonzero entry; the
    /// key of the unsigned hyperplane family `self = const`.
    pub fn unsigned_key(&self) -> Vec<BigInt> {
        let mut p = self.primitive_integer();
        if let Some(first) = p.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                p.iter_mut().for_each(|c| *c = -c.clone());
            }
        }
        p
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(","))
    }
}

/// Exact dot product of a form and a point.
pub fn evaluate(form: &LinearForm, x: &QVector) -> Result<Rational> {
    if form.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: x.dim(),
        });
    }
    Ok(form.apply(x))
}

/// `x -> form(x - base)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFunctional {
    pub form: LinearForm,
    pub base: QVector,
}

impl AffineFunctional {
    pub fn new(form: LinearForm, base: QVector) -> Self {
        AffineFunctional { form, base }
    }

    pub fn value(&self, x: &QVector) -> Rational {
        self.form.apply_shifted(x, &self.base)
    }
}

/// Positive multiple of `values` with coprime integer entries (zero stays zero).
pub fn primitive_integer(values: &[Rational]) -> Vec<BigInt> {
    let den = values.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Extended gcd on integers: returns `(g, s, t)` with `g = s*a + t*b`, `g >= 0`.
fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Smallest positive value of `form` on `Z^n` together with an integer vector attaining it.
///
/// With coefficients written `m_i / d` over a common denominator, the step is
/// `gcd(m) / d` and the witness comes from the Bezout coefficients of `m`.
pub fn primitive_step(form: &LinearForm) -> Result<(QVector, Rational)> {
    if form.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let den = form.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = form
        .0
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();

    // Running Bezout combination: g = sum coef_i * ints_i.
    let mut g = BigInt::zero();
    let mut coef: Vec<BigInt> = Vec::with_capacity(ints.len());
    for m in &ints {
        if g.is_zero() {
            if m.is_zero() {
                coef.push(BigInt::zero());
            } else {
                coef.push(if m.is_negative() { -BigInt::one() } else { BigInt::one() });
                g = m.abs();
            }
            continue;
        }
        if (m % &g).is_zero() {
            coef.push(BigInt::zero());
            continue;
        }
        let (h, s, t) = extended_gcd(&g, m);
        coef.iter_mut().for_each(|c| *c = &*c * &s);
        coef.push(t);
        g = h;
    }
    let step = Rational::new(g, den);
    Ok((QVector::from_bigints(&coef), step))
}

/// Square integer matrix; a symmetry when its determinant is `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix rows must form a square".into()));
        }
        Ok(IntMatrix {
            n,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        let n = self.n;
        QVector(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| self.get(i, j) != 0)
                        .map(|j| &x.0[j] * int(self.get(i, j)))
                        .sum()
                })
                .collect(),
        )
    }

    pub fn determinant(&self) -> Rational {
        let rows: Vec<Vec<Rational>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| int(self.get(i, j))).collect())
            .collect();
        crate::linalg::determinant(rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<IntMatrix> {
        use num_traits::ToPrimitive;
        let rows: Vec<Vec<Rational>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| int(self.get(i, j))).collect())
            .collect();
        let inv = crate::linalg::inverse(&rows)?;
        let mut entries = Vec::with_capacity(self.n * self.n);
        for row in inv {
            for c in row {
                if !c.is_integer() {
                    return None;
                }
                entries.push(c.to_integer().to_i64()?);
            }
        }
        Some(IntMatrix { n: self.n, entries })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| format!("{r:?}")).collect();
        write!(f, "[{}]", rows.join(","))
    }
}
