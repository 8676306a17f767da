//! Exact Gaussian rationals `a + b i` with `a, b ∈ ℚ`.
//!
//! The imaginary part is optional: real values carry `im = None`, which keeps
//! the common real-only paths as cheap as a plain `BigRational`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::Coeff;
use super::AlgebraError;

/// Exact element of ℚ(i), stored in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    re: BigRational,
    im: Option<BigRational>,
}

impl ExactScalar {
    pub fn real(re: BigRational) -> Self {
        ExactScalar { re, im: None }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        let im = if im.is_zero() { None } else { Some(im) };
        ExactScalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::real(BigRational::from_integer(n))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> BigRational {
        self.im.clone().unwrap_or_else(BigRational::zero)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_none()
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: self.im.as_ref().map(|v| -v),
        }
    }

    /// `|a + b i|² = a² + b²`.
    pub fn norm_sqr(&self) -> BigRational {
        match &self.im {
            None => &self.re * &self.re,
            Some(im) => &self.re * &self.re + im * im,
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero_value() {
            return Err(AlgebraError::DivisionByZero);
        }
        match &self.im {
            None => Ok(Self::real(self.re.recip())),
            Some(im) => {
                let n = self.norm_sqr();
                Ok(Self::gaussian(&self.re / &n, -(im / &n)))
            }
        }
    }

    fn is_zero_value(&self) -> bool {
        self.im.is_none() && self.re.is_zero()
    }

    /// Exact square root inside ℚ(i) for rational radicands.
    ///
    /// Positive rational squares give rational roots, negative ones give
    /// purely imaginary roots. Everything else is rejected.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if !self.is_real() {
            return None;
        }
        let r = self.re.abs();
        let root = rational_sqrt(&r)?;
        if self.re.is_negative() {
            Some(Self::gaussian(BigRational::zero(), root))
        } else {
            Some(Self::real(root))
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one_value();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn one_value() -> Self {
        Self::real(BigRational::one())
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Coeff for ExactScalar {
    fn zero() -> Self {
        Self::real(BigRational::zero())
    }
    fn one() -> Self {
        Self::one_value()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        self.inv()
    }
    fn from_scalar(s: &ExactScalar) -> Self {
        s.clone()
    }
    fn try_sqrt(&self) -> Result<Self, AlgebraError> {
        self.sqrt_exact()
            .ok_or_else(|| AlgebraError::NoSquareRoot(self.to_string()))
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        let im = match (&self.im, &o.im) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(a + b),
        };
        ExactScalar::gaussian(&self.re + &o.re, im.unwrap_or_else(BigRational::zero))
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        match (&self.im, &o.im) {
            (None, None) => ExactScalar::real(&self.re * &o.re),
            (Some(a), None) => ExactScalar::gaussian(&self.re * &o.re, a * &o.re),
            (None, Some(b)) => ExactScalar::gaussian(&self.re * &o.re, &self.re * b),
            (Some(a), Some(b)) => {
                ExactScalar::gaussian(&self.re * &o.re - a * b, &self.re * b + a * &o.re)
            }
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::inv`] for the checked path.
    fn div(self, o: &ExactScalar) -> ExactScalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -&self.re,
            im: self.im.as_ref().map(|v| -v),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                <&ExactScalar as $tr<&ExactScalar>>::$m(&self, &o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                <&ExactScalar as $tr<&ExactScalar>>::$m(&self, o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        ExactScalar::real(q)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.im {
            None => write!(f, "{}", fmt_rational(&self.re)),
            Some(im) => {
                let sign = if im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{} i",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for ExactScalar {
    type Err = AlgebraError;

    /// Accepts `p/q`, `p`, and Gaussian forms `p/q+r/s i` / `p/q-r/s i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(ExactScalar::real(parse_rational(t)?));
        };
        let body = body.trim_end();
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last()
            .map(|(k, _)| k)
            .ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
        let re = parse_rational(&body[..split])?;
        let im_str = body[split..].trim();
        let im = match im_str {
            "+" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => parse_rational(im_str.trim_start_matches('+'))?,
        };
        Ok(ExactScalar::gaussian(re, im))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = ExactScalar::ratio(6, -4);
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(ExactScalar::ratio(4, 2).to_string(), "2");
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = ExactScalar::i();
        assert_eq!(&i * &i, ExactScalar::from_int(-1));
        let z = ExactScalar::gaussian(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, ExactScalar::from_int(1));
        assert!((&z * &z.conj()).is_real());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1/2", "-7", "1/2+3/4 i", "-1/3-2 i", "0+1 i"] {
            let v: ExactScalar = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<ExactScalar>().unwrap(), v);
        }
        assert_eq!("0+1 i".parse::<ExactScalar>().unwrap(), ExactScalar::i());
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("abc".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(
            ExactScalar::ratio(9, 4).sqrt_exact(),
            Some(ExactScalar::ratio(3, 2))
        );
        assert_eq!(
            ExactScalar::from_int(-4).sqrt_exact(),
            Some(&ExactScalar::from_int(2) * &ExactScalar::i())
        );
        assert_eq!(ExactScalar::ratio(1, 3).sqrt_exact(), None);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(ExactScalar::from_int(0).inv(), Err(AlgebraError::DivisionByZero));
    }
}
