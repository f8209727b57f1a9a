//! Coefficient arithmetic with two scalar paths.
//!
//! [`GaussRational`] is exact arithmetic over ℚ(i) and backs every check
//! whose inputs are rational; `Complex64` is the floating fallback. Both
//! implement [`Field`], which is what the realizations are generic over.
//! [`Scalar`] is the runtime-tagged value used at API boundaries (CLI,
//! parameter parsing, FFI) before a mode has been committed to.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

/// A Gaussian rational `re + im·i` with `re, im ∈ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn imag_unit() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `Some(v)` when the value is a (real) integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.im.is_zero() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: divide in floating point.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let d = rhs.norm_sqr();
        assert!(!d.is_zero(), "division by zero in GaussRational");
        let num = self * rhs.conj();
        Self::new(num.re / &d, num.im / d)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Coefficient field used by truncated realizations.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(p: i64, q: i64) -> Self;
    /// Embeds a real float; exact fields refuse.
    fn from_real(x: f64) -> Option<Self>;
    /// Converts a tagged scalar; an exact field refuses a float input.
    fn from_scalar(s: &Scalar) -> Result<Self>;
    fn to_scalar(&self) -> Scalar;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;

    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Integer value when the scalar is (exactly) a real integer.
    fn as_integer(&self) -> Option<i64>;

    /// Grouping key for weights: exact values compare exactly, floats are
    /// snapped to a 1e-9 grid.
    fn weight_key(&self) -> WeightKey;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeightKey {
    Exact(String),
    Float(i64, i64),
}

impl Field for GaussRational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn imag_unit() -> Self {
        GaussRational::imag_unit()
    }
    fn from_i64(v: i64) -> Self {
        GaussRational::from_i64(v)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        GaussRational::ratio(p, q)
    }
    fn from_real(_x: f64) -> Option<Self> {
        None
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Exact(g) => Ok(g.clone()),
            Scalar::Float(c) => Err(Error::ModeMismatch(format!(
                "float value {c} cannot enter the exact path"
            ))),
        }
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        GaussRational::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        GaussRational::to_c64(self)
    }
    fn as_integer(&self) -> Option<i64> {
        GaussRational::as_integer(self).and_then(|v| v.to_i64())
    }
    fn weight_key(&self) -> WeightKey {
        WeightKey::Exact(self.to_string())
    }
}

impl Field for Complex64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Complex64::new(p as f64 / q as f64, 0.0)
    }
    fn from_real(x: f64) -> Option<Self> {
        Some(Complex64::new(x, 0.0))
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        Ok(s.to_c64())
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn as_integer(&self) -> Option<i64> {
        (self.im == 0.0 && self.re.fract() == 0.0 && self.re.abs() < 9.0e15)
            .then_some(self.re as i64)
    }
    fn weight_key(&self) -> WeightKey {
        WeightKey::Float((self.re * 1e9).round() as i64, (self.im * 1e9).round() as i64)
    }
}

/// A runtime-tagged scalar.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussRational),
    Float(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Exact(_) => ScalarMode::Exact,
            Scalar::Float(_) => ScalarMode::Float,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar::Exact(GaussRational::from_i64(v))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_c64(),
            Scalar::Float(c) => *c,
        }
    }

    /// Switches to the float path (lossy for exact inputs, explicit by design
    /// of the call site).
    pub fn to_float(&self) -> Self {
        Scalar::Float(self.to_c64())
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.clone() + b.clone())),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a + b)),
            _ => Err(Error::ModeMismatch("cannot add exact and float scalars".into())),
        }
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.clone() * b.clone())),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a * b)),
            _ => Err(Error::ModeMismatch("cannot multiply exact and float scalars".into())),
        }
    }

    /// Exact equality in exact mode, bitwise equality in float mode.
    pub fn try_eq(&self, rhs: &Scalar) -> Result<bool> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(a == b),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(a == b),
            _ => Err(Error::ModeMismatch("cannot compare exact and float scalars".into())),
        }
    }

    pub fn as_exact(&self) -> Option<&GaussRational> {
        match self {
            Scalar::Exact(g) => Some(g),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => write!(f, "{g}"),
            Scalar::Float(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else if c.im < 0.0 {
                    write!(f, "{}-{}i", c.re, -c.im)
                } else {
                    write!(f, "{}+{}i", c.re, c.im)
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Splits `text` into signed additive terms, e.g. `-1+0.5i` → `[(-,"1"), (+,"0.5i")]`.
/// A sign directly after `/` or `*` belongs to the term.
pub(crate) fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        let is_sign = ch == '+' || ch == '-';
        let glued = matches!(prev, Some('/') | Some('*'));
        if is_sign && !glued {
            if !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = false;
            } else if prev.is_some() && !matches!(prev, Some('+') | Some('-')) {
                return Err(Error::Parse(format!("misplaced sign in '{text}'")));
            }
            if ch == '-' {
                negative = !negative;
            }
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in '{text}'")));
    }
    terms.push((negative, current));
    Ok(terms)
}

/// Parses an unsigned decimal (`1.25`) or fraction (`3/4`) into a rational.
pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a number: '{text}'"));
    if let Some((p, q)) = text.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{text}'")));
        }
        return Ok(p / q);
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Parses one term of a complex literal: `1.5`, `2/3`, `0.5i`, `i`.
pub(crate) fn parse_numeric_term(term: &str) -> Result<GaussRational> {
    if let Some(coef) = term.strip_suffix('i') {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let c = if coef.is_empty() { BigRational::one() } else { parse_rational(coef)? };
        Ok(GaussRational::new(BigRational::zero(), c))
    } else {
        Ok(GaussRational::real(parse_rational(term)?))
    }
}

/// Parses a scalar literal (`-1.5`, `-1/2`, `-1.5+0.25i`, `i`). Literals are
/// rational, so the result is always on the exact path; callers switch to
/// floats with [`Scalar::to_float`].
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut acc = GaussRational::from_i64(0);
    for (negative, term) in split_terms(text)? {
        let v = parse_numeric_term(&term)?;
        acc = if negative { acc - v } else { acc + v };
    }
    Ok(Scalar::Exact(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_complex_literals() {
        let s = parse_scalar("-1.5+0.25i").unwrap();
        assert_eq!(s.to_c64(), Complex64::new(-1.5, 0.25));
        assert_eq!(parse_scalar("i").unwrap().to_c64(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_scalar("-1/2").unwrap().to_c64(), Complex64::new(-0.5, 0.0));
        assert_eq!(parse_scalar("-1+0.5i").unwrap().to_c64(), Complex64::new(-1.0, 0.5));
        assert_eq!(parse_scalar("-i").unwrap().to_c64(), Complex64::new(0.0, -1.0));
        assert!(parse_scalar("1.7").unwrap().as_exact().is_some());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1+").is_err());
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn decimal_is_exact() {
        let s = parse_scalar("1.7").unwrap();
        let g = s.as_exact().unwrap();
        assert_eq!(g.re, BigRational::new(17.into(), 10.into()));
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let e = Scalar::from_i64(1);
        let f = Scalar::float(1.0, 0.0);
        assert!(matches!(e.try_add(&f), Err(Error::ModeMismatch(_))));
        assert!(e.try_add(&Scalar::from_i64(2)).unwrap().try_eq(&Scalar::from_i64(3)).unwrap());
        assert!(GaussRational::from_scalar(&f).is_err());
    }

    #[test]
    fn gauss_division_inverts_multiplication() {
        let a = GaussRational::new(BigRational::new(3.into(), 2.into()), BigRational::from_integer((-2).into()));
        let b = GaussRational::new(BigRational::from_integer(1.into()), BigRational::new(1.into(), 3.into()));
        assert_eq!((a.clone() * b.clone()) / b, a);
    }
}
