use std::f64::consts::{LN_10, PI};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::rational::BigGaussianRational;
use crate::error::{Error, Result};

/// Significant digits carried in a `ScaledReal` mantissa.
pub const MANTISSA_DIGITS: usize = 20;

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

/// Wraps an angle into (−π, π].
pub fn wrap_phase(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let mut y = x - 2.0 * PI * (x / (2.0 * PI)).round();
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// A real number stored as sign, base-10 exponent and a decimal mantissa.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledReal {
    pub sign: i8,
    pub log10_mag: f64,
    /// Decimal digits `d.ddd…` in [1, 10).
    pub mantissa: String,
    /// Power of ten paired with the mantissa.
    pub exponent: i64,
}

impl ScaledReal {
    pub fn zero() -> Self {
        Self {
            sign: 0,
            log10_mag: f64::NEG_INFINITY,
            mantissa: "0".into(),
            exponent: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    fn from_parts(sign: i8, digits: &BigInt, exponent: i64) -> Self {
        let s = digits.to_string();
        let mantissa = format!("{}.{}", &s[..1], &s[1..]);
        let m: f64 = mantissa.parse().unwrap();
        Self {
            sign,
            log10_mag: exponent as f64 + m.log10(),
            mantissa,
            exponent,
        }
    }

    /// Exact decimal expansion of a rational, truncated to `MANTISSA_DIGITS`.
    pub fn from_big_rational(x: &BigRational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let sign = if x.is_negative() { -1 } else { 1 };
        let p = x.numer().abs();
        let q = x.denom().clone();
        let mut e =
            ((p.bits() as f64 - q.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let lo = pow10(MANTISSA_DIGITS - 1);
        let hi = pow10(MANTISSA_DIGITS);
        loop {
            let k = MANTISSA_DIGITS as i64 - 1 - e;
            let m = if k >= 0 {
                (&p * pow10(k as usize)).div_floor(&q)
            } else {
                p.div_floor(&(&q * pow10((-k) as usize)))
            };
            if m >= hi {
                e += 1;
            } else if m < lo {
                e -= 1;
            } else {
                return Self::from_parts(sign, &m, e);
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        let s = format!("{:.*e}", MANTISSA_DIGITS - 1, x.abs());
        let (m, e) = s.split_once('e').unwrap();
        Self {
            sign: if x < 0.0 { -1 } else { 1 },
            log10_mag: x.abs().log10(),
            mantissa: m.to_string(),
            exponent: e.parse().unwrap(),
        }
    }

    /// Builds a value from a sign and log₁₀|x|, with 16 significant digits.
    pub fn from_log10(sign: i8, log10_mag: f64) -> Self {
        if sign == 0 || log10_mag == f64::NEG_INFINITY {
            return Self::zero();
        }
        let mut e = log10_mag.floor();
        let mut m = 10f64.powf(log10_mag - e);
        if m >= 10.0 {
            m /= 10.0;
            e += 1.0;
        }
        let s = format!("{:.15e}", m);
        let (ms, me) = s.split_once('e').unwrap();
        let exponent = e as i64 + me.parse::<i64>().unwrap();
        Self {
            sign: sign.signum(),
            log10_mag,
            mantissa: ms.to_string(),
            exponent,
        }
    }

    pub fn mantissa_f64(&self) -> f64 {
        self.mantissa.parse().unwrap()
    }

    fn mantissa_digits(&self) -> (BigInt, usize) {
        let d: String = self.mantissa.chars().filter(|c| *c != '.').collect();
        (d.parse().unwrap(), d.len() - 1)
    }

    /// Exact rational value `sign · mantissa · 10^exponent`.
    pub fn to_big_rational(&self) -> BigRational {
        if self.sign == 0 {
            return BigRational::zero();
        }
        let (m, frac) = self.mantissa_digits();
        let m = if self.sign < 0 { -m } else { m };
        let shift = self.exponent - frac as i64;
        if shift >= 0 {
            BigRational::from_integer(m * pow10(shift as usize))
        } else {
            BigRational::new(m, pow10((-shift) as usize))
        }
    }

    /// Nearest double; saturates to ±∞ or 0 outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let v: f64 = format!("{}e{}", self.mantissa, self.exponent)
            .parse()
            .unwrap();
        v * self.sign as f64
    }

    pub fn to_log_complex(&self) -> LogComplex {
        if self.sign == 0 {
            return LogComplex::zero();
        }
        LogComplex {
            log_mag: self.exponent as f64 * LN_10 + self.mantissa_f64().ln(),
            phase: if self.sign < 0 { PI } else { 0.0 },
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_big_rational(&(self.to_big_rational() * rhs.to_big_rational()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_big_rational(&(self.to_big_rational() + rhs.to_big_rational()))
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    /// |self/rhs − 1| evaluated exactly on the stored digits.
    pub fn rel_diff(&self, rhs: &Self) -> f64 {
        if rhs.sign == 0 {
            return if self.sign == 0 { 0.0 } else { f64::INFINITY };
        }
        let a = self.to_big_rational();
        let b = rhs.to_big_rational();
        let r = ((a - &b) / b).abs();
        ScaledReal::from_big_rational(&r).to_f64()
    }

    /// Rounds to `k` significant digits, e.g. `1.99529e233`.
    pub fn format_sig(&self, k: usize) -> String {
        if self.sign == 0 {
            return "0".into();
        }
        let (m, frac) = self.mantissa_digits();
        let k = k.clamp(1, frac + 1);
        let drop = frac + 1 - k;
        let unit = pow10(drop);
        let (mut q, r) = m.div_rem(&unit);
        if drop > 0 && &r * 2 >= unit {
            q += 1;
        }
        let mut e = self.exponent;
        if q == pow10(k) {
            q = pow10(k - 1);
            e += 1;
        }
        let s = q.to_string();
        let body = if k > 1 {
            format!("{}.{}", &s[..1], &s[1..])
        } else {
            s
        };
        let sign = if self.sign < 0 { "-" } else { "" };
        format!("{sign}{body}e{e}")
    }
}

impl fmt::Display for ScaledReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_sig(f.precision().unwrap_or(6)))
    }
}

/// A complex number stored as natural log-modulus and phase in (−π, π].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    pub log_mag: f64,
    pub phase: f64,
}

impl LogComplex {
    pub fn zero() -> Self {
        Self {
            log_mag: f64::NEG_INFINITY,
            phase: 0.0,
        }
    }

    pub fn one() -> Self {
        Self {
            log_mag: 0.0,
            phase: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// e^w for a complex exponent w.
    pub fn exp(w: Complex64) -> Self {
        Self {
            log_mag: w.re,
            phase: wrap_phase(w.im),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::zero();
        }
        Self {
            log_mag: z.norm().ln(),
            phase: z.arg(),
        }
    }

    pub fn from_big_rational(x: &BigRational) -> Self {
        ScaledReal::from_big_rational(x).to_log_complex()
    }

    pub fn from_gaussian(x: &BigGaussianRational) -> Self {
        let re = ScaledReal::from_big_rational(&x.re).to_log_complex();
        let im = ScaledReal::from_big_rational(&x.im).to_log_complex();
        let im = LogComplex {
            log_mag: im.log_mag,
            phase: wrap_phase(im.phase + PI / 2.0),
        };
        re.add(&im)
    }

    /// Log of the value as a complex number (phase in (−π, π]).
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.log_mag, self.phase)
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mag.exp(), self.phase)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            log_mag: self.log_mag + rhs.log_mag,
            phase: wrap_phase(self.phase + rhs.phase),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        Self {
            log_mag: self.log_mag - rhs.log_mag,
            phase: wrap_phase(self.phase - rhs.phase),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            log_mag: self.log_mag,
            phase: wrap_phase(-self.phase),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            log_mag: self.log_mag,
            phase: wrap_phase(self.phase + PI),
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.mul(&Self::from_complex(k))
    }

    /// Sum, factoring out the operand of larger modulus.
    pub fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return *self;
        }
        if self.is_zero() {
            return *rhs;
        }
        let (big, small) = if self.log_mag >= rhs.log_mag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let t = Complex64::from_polar((small.log_mag - big.log_mag).exp(), small.phase - big.phase);
        let s = Complex64::new(1.0, 0.0) + t;
        // Below a few ulps the operands are negatives of each other.
        if s.norm() <= 4.0 * f64::EPSILON {
            return Self::zero();
        }
        Self {
            log_mag: big.log_mag + s.norm().ln(),
            phase: wrap_phase(big.phase + s.arg()),
        }
    }

    /// |self/rhs − 1| without forming either value.
    pub fn rel_diff(&self, rhs: &Self) -> f64 {
        if rhs.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let x = self.log_mag - rhs.log_mag;
        let y = wrap_phase(self.phase - rhs.phase);
        let s = (0.5 * y).sin();
        let re = x.exp_m1() * y.cos() - 2.0 * s * s;
        let im = x.exp() * y.sin();
        re.hypot(im)
    }

    /// Relative size of the imaginary part, |sin(phase)|.
    pub fn imag_residue(&self) -> f64 {
        self.phase.sin().abs()
    }

    /// Converts to a real value, failing if the imaginary residue exceeds `tol`.
    pub fn to_scaled_real(&self, tol: f64) -> Result<ScaledReal> {
        if self.is_zero() {
            return Ok(ScaledReal::zero());
        }
        let residue = self.imag_residue();
        if residue > tol {
            return Err(Error::NonReal { residue });
        }
        let sign = if self.phase.cos() >= 0.0 { 1 } else { -1 };
        let l10 = self.log_mag / LN_10;
        // Take the integer part of the exponent out before the division rounds.
        let e = l10.floor();
        let frac = (self.log_mag - e * LN_10) / LN_10;
        let mut r = ScaledReal::from_log10(sign, frac);
        r.exponent += e as i64;
        r.log10_mag = l10;
        Ok(r)
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({:.15e}) * exp(i*{:.15e})", self.log_mag, self.phase)
    }
}
