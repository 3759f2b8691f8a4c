use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses a decimal literal such as `-0.171`, `5.829` or `1e-3` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, body) = match mant.as_bytes()[0] {
        b'-' => (true, &mant[1..]),
        b'+' => (false, &mant[1..]),
        _ => (false, mant),
    };
    let (ip, fp) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return Err(err());
    }
    if !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{ip}{fp}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Nearest double to a rational, robust for huge numerators and denominators.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let s = super::scaled::ScaledReal::from_big_rational(x);
    s.to_f64()
}

/// Complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigGaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl BigGaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Self {
            re: &self.re / &d,
            im: -(&self.im / &d),
        })
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Parses `RE` or `RE,IM`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((r, i)) => Ok(Self::new(parse_decimal(r)?, parse_decimal(i)?)),
            None => Ok(Self::real(parse_decimal(s)?)),
        }
    }
}

impl fmt::Display for BigGaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a BigGaussianRational> for &'a BigGaussianRational {
    type Output = BigGaussianRational;
    fn add(self, rhs: Self) -> BigGaussianRational {
        BigGaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a BigGaussianRational> for &'a BigGaussianRational {
    type Output = BigGaussianRational;
    fn sub(self, rhs: Self) -> BigGaussianRational {
        BigGaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a BigGaussianRational> for &'a BigGaussianRational {
    type Output = BigGaussianRational;
    fn mul(self, rhs: Self) -> BigGaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return BigGaussianRational::real(&self.re * &rhs.re);
        }
        BigGaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for BigGaussianRational {
    type Output = BigGaussianRational;
    fn neg(self) -> BigGaussianRational {
        BigGaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for BigGaussianRational {
    type Output = BigGaussianRational;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for BigGaussianRational {
    type Output = BigGaussianRational;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for BigGaussianRational {
    type Output = BigGaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_decimal("0.171").unwrap(), rat(171, 1000));
        assert_eq!(parse_decimal("-1").unwrap(), rat(-1, 1));
        assert_eq!(parse_decimal("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_decimal("-.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_decimal("2.5E2").unwrap(), rat(250, 1));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn parse_complex() {
        let z = BigGaussianRational::parse("2,0.5").unwrap();
        assert_eq!(z.re, rat(2, 1));
        assert_eq!(z.im, rat(1, 2));
    }

    #[test]
    fn inverse() {
        let z = BigGaussianRational::new(rat(3, 2), rat(-7, 5));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, BigGaussianRational::one());
        assert!(BigGaussianRational::zero().inv().is_none());
    }

    #[test]
    fn huge_to_f64() {
        let big = BigRational::from_integer(num_traits::pow(BigInt::from(10), 400));
        let x = &big / (&big * BigRational::from_integer(BigInt::from(4)));
        assert_eq!(rational_to_f64(&x), 0.25);
    }
}
