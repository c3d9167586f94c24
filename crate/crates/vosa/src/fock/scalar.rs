//! Coefficient fields: exact Gaussian rationals and complex doubles.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field of coefficients for state vectors.
pub trait Scalar:
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
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn imag_unit() -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
}

/// Exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gq { re, im: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Gq::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gq::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn big(n: BigInt) -> Self {
        Gq::real(BigRational::from_integer(n))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Gq { re: &self.re * r, im: &self.im * r }
    }

    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
}

impl Scalar for Gq {
    fn zero() -> Self {
        Gq::real(BigRational::zero())
    }
    fn one() -> Self {
        Gq::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Gq::int(n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Gq::ratio(num, den)
    }
    fn imag_unit() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::one() }
    }
    fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -&self.im }
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gq { re: &self.re / &n, im: -&self.im / &n })
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, rhs: Gq) -> Gq {
        Gq { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, rhs: Gq) -> Gq {
        Gq { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, rhs: Gq) -> Gq {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gq::real(self.re * rhs.re);
        }
        Gq {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses rationals such as `"7/10"`, `"-3"` or `"3/2"` (real only).
impl FromStr for Gq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Gq::real(BigRational::new(num, den)))
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| Complex64::new(1.0, 0.0) / *self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Comparison tolerance carried by the approximate domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    pub fn eq(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-12, rel: 1e-10 }
    }
}

/// Generalized binomial coefficient C(n, k) for any integer n and k ≥ 0.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_ops() {
        let i = Gq::imag_unit();
        assert_eq!(i.clone() * i.clone(), Gq::int(-1));
        let z = Gq::ratio(3, 4) + Gq::ratio(1, 2) * i;
        assert_eq!(z.clone() * z.inv().unwrap(), Gq::one());
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.to_string(), "3/4+1/2i");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!("7/10".parse::<Gq>().unwrap(), Gq::ratio(7, 10));
        assert_eq!("-3".parse::<Gq>().unwrap(), Gq::int(-3));
        assert!("1/0".parse::<Gq>().is_err());
        assert!("abc".parse::<Gq>().is_err());
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(-1, 7), BigInt::from(-1));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
    }
}

/// Serialized as its display string, e.g. `"7/10"`.
impl serde::Serialize for Gq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Gq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
