//! Exact scalar arithmetic: rationals and Gaussian rationals.
//!
//! Every algebraic decision in this crate (classification, lattice
//! membership, index computation, obstruction tests) happens over Q or
//! Q(i) with no floating point involved.  `GaussRat` is a thin pair of
//! `BigRational` parts with field operations, conjugation and the
//! conversions the numeric layer needs.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

pub type Rat = BigRational;

/// Parse a rational written as `p`, `-p`, or `p/q` with integer parts.
/// Decimal notation is rejected so inputs stay exact.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    if s.contains('.') {
        return Err(RatParseError::DecimalNotation(s.to_string()));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num = BigInt::from_str(num_str)
        .map_err(|_| RatParseError::BadInteger(num_str.to_string()))?;
    let den = match den_str {
        Some(d) => BigInt::from_str(d).map_err(|_| RatParseError::BadInteger(d.to_string()))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("decimal notation `{0}` is not accepted; write an exact fraction p/q")]
    DecimalNotation(String),
    #[error("`{0}` is not an integer")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rat_frac: zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convert to f64.  `BigRational::to_f64` handles large numerators and
/// denominators by going through the bit representations, so this is a
/// plain delegation with a panic on the (unreachable) failure path.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational does not fit in f64 range")
}

/// Floor of a rational as a BigInt.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Sign of a rational as -1, 0, or 1.
pub fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Format `r` as `p` or `p/q` (reduced, denominator positive).
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Gaussian rational re + i*im with exact field arithmetic.
/// Serializes as the exact string pair ["p/q", "r/s"].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (rat_string(&self.re), rat_string(&self.im)).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (re, im) = <(String, String)>::deserialize(deserializer)?;
        Ok(GaussRat {
            re: parse_rat(&re).map_err(D::Error::custom)?,
            im: parse_rat(&im).map_err(D::Error::custom)?,
        })
    }
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: rat_i64(n), im: Rat::zero() }
    }

    pub fn from_real(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    /// Build (nr/dr) + i (ni/di).
    pub fn from_fracs(nr: i64, dr: i64, ni: i64, di: i64) -> Self {
        GaussRat { re: rat_frac(nr, dr), im: rat_frac(ni, di) }
    }

    pub fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        GaussRat { re: Rat::one(), im: Rat::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|^2 = re^2 + im^2, an exact rational.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero Gaussian rational");
        let n = self.norm_sqr();
        GaussRat { re: &self.re / &n, im: -&self.im / &n }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }

    pub fn mul_i(&self) -> Self {
        GaussRat { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Sign of the imaginary part: -1, 0, or 1.
    pub fn im_sign(&self) -> i32 {
        rat_sign(&self.im)
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", rat_string(&self.re), rat_string(&self.im))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_string(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", rat_string(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{} - {}i", rat_string(&self.re), rat_string(&(-self.im.clone())))
        } else {
            write!(f, "{} + {}i", rat_string(&self.re), rat_string(&self.im))
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.inv()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

/// Total order on Gaussian rationals: lexicographic on (re, im).  Used
/// only to make canonical keys sortable; it has no algebraic meaning.
impl PartialOrd for GaussRat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussRat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

/// Exact dot product sum_j a_j k_j with integer k.
pub fn dot_int(a: &[GaussRat], k: &[BigInt]) -> GaussRat {
    assert_eq!(a.len(), k.len(), "dot_int: length mismatch");
    let mut acc = GaussRat::zero();
    for (aj, kj) in a.iter().zip(k.iter()) {
        let kr = Rat::from_integer(kj.clone());
        acc += &aj.scale(&kr);
    }
    acc
}
