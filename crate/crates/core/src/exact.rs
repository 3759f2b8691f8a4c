//! Exact evaluation of Meixner polynomials in rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::numerics::rational::{rat, rational_to_f64};
use crate::numerics::{BigGaussianRational, LogComplex, ScaledReal};

/// The parameters (c, β, n) as exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct MeixnerParams {
    pub c: BigRational,
    pub beta: BigRational,
    pub n: u32,
}

impl MeixnerParams {
    /// Validates 0 < c < 1 and 1 ≤ β < 2.
    pub fn new(c: BigRational, beta: BigRational, n: u32) -> Result<Self> {
        if !(c.is_positive() && c < BigRational::one()) {
            return Err(Error::Domain(format!("c = {c} must lie in (0, 1)")));
        }
        if beta < BigRational::one() || beta >= rat(2, 1) {
            return Err(Error::Domain(format!("beta = {beta} must lie in [1, 2)")));
        }
        Ok(Self { c, beta, n })
    }

    pub fn parse(c: &str, beta: &str, n: u32) -> Result<Self> {
        Self::new(
            crate::numerics::parse_decimal(c)?,
            crate::numerics::parse_decimal(beta)?,
            n,
        )
    }

    pub fn c_f64(&self) -> f64 {
        rational_to_f64(&self.c)
    }

    pub fn beta_f64(&self) -> f64 {
        rational_to_f64(&self.beta)
    }

    pub fn with_n(&self, n: u32) -> Self {
        Self { n, ..self.clone() }
    }
}

/// An exactly computed polynomial value.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactValue {
    pub value: BigGaussianRational,
}

impl ExactValue {
    pub fn to_log_complex(&self) -> LogComplex {
        LogComplex::from_gaussian(&self.value)
    }

    /// `Some` only for real values.
    pub fn to_scaled_real(&self) -> Option<ScaledReal> {
        self.value
            .is_real()
            .then(|| ScaledReal::from_big_rational(&self.value.re))
    }
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn one_minus_inv_c(p: &MeixnerParams) -> BigRational {
    BigRational::one() - p.c.recip()
}

/// M_n(x; β, c) from the terminating hypergeometric sum
/// Σₖ (−n)ₖ(−x)ₖ/((β)ₖ k!) (1 − 1/c)ᵏ.
pub fn meixner_hyp(p: &MeixnerParams, x: &BigGaussianRational) -> ExactValue {
    let r = one_minus_inv_c(p);
    let n = p.n as i64;
    let mut term = BigGaussianRational::one();
    let mut sum = BigGaussianRational::one();
    for k in 0..n {
        let kk = int(k);
        let factor = (int(k - n) * &r) / ((&p.beta + &kk) * int(k + 1));
        let mx = BigGaussianRational::real(kk) - x.clone();
        term = (&term * &mx).scale(&factor);
        sum = &sum + &term;
    }
    ExactValue { value: sum }
}

/// π_n = (β)ₙ (1 − 1/c)⁻ⁿ Mₙ.
pub fn monic_from_meixner(p: &MeixnerParams, x: &BigGaussianRational) -> ExactValue {
    let m = meixner_hyp(p, x);
    let r = one_minus_inv_c(p);
    let mut k = BigRational::one();
    for j in 0..p.n as i64 {
        k = k * (&p.beta + int(j)) / &r;
    }
    ExactValue {
        value: m.value.scale(&k),
    }
}

/// π_n by the three-term recurrence from π₀ = 1, π₋₁ = 0.
pub fn monic_recurrence(p: &MeixnerParams, x: &BigGaussianRational) -> ExactValue {
    let one_c = BigRational::one() - &p.c;
    let one_c2 = &one_c * &one_c;
    let mut prev = BigGaussianRational::zero();
    let mut cur = BigGaussianRational::one();
    for k in 0..p.n as i64 {
        let kk = int(k);
        let ak = (&kk + (&kk + &p.beta) * &p.c) / &one_c;
        let bk = &kk * (&kk + &p.beta - BigRational::one()) * &p.c / &one_c2;
        let shifted = x - &BigGaussianRational::real(ak);
        let next = &(&shifted * &cur) - &prev.scale(&bk);
        prev = cur;
        cur = next;
    }
    ExactValue { value: cur }
}

/// The argument n·z − β/2 at which the scaled polynomial is sampled.
pub fn scaled_argument(p: &MeixnerParams, z: &BigGaussianRational) -> BigGaussianRational {
    let n = int(p.n as i64);
    let shift = BigGaussianRational::real(&p.beta / int(2));
    &z.scale(&n) - &shift
}

/// π_n(n·z − β/2), exactly.
pub fn eval_scaled_exact(p: &MeixnerParams, z: &BigGaussianRational) -> ExactValue {
    monic_recurrence(p, &scaled_argument(p, z))
}

/// (β)ₖ cᵏ / k!, the discrete weight normalised by Γ(β).
pub fn weight_ratio(p: &MeixnerParams, k: u32) -> BigRational {
    let mut w = BigRational::one();
    for j in 0..k as i64 {
        w = w * (&p.beta + int(j)) * &p.c / int(j + 1);
    }
    w
}

/// The squared norm c⁻ⁿ n! (1−c)^{-β} / (β)ₙ, without the (1−c)^{-β} factor.
pub fn norm_without_power(p: &MeixnerParams) -> BigRational {
    let mut v = BigRational::one();
    for j in 0..p.n as i64 {
        v = v * int(j + 1) / ((&p.beta + int(j)) * &p.c);
    }
    v
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.value.is_real() {
            write!(f, "{}", ScaledReal::from_big_rational(&self.value.re))
        } else {
            write!(f, "{}", self.to_log_complex())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn params(n: u32) -> MeixnerParams {
        MeixnerParams::new(rat(1, 2), rat(3, 2), n).unwrap()
    }

    fn g(re: BigRational) -> BigGaussianRational {
        BigGaussianRational::real(re)
    }

    #[test]
    fn validation() {
        assert!(MeixnerParams::new(rat(1, 1), rat(3, 2), 1).is_err());
        assert!(MeixnerParams::new(rat(0, 1), rat(3, 2), 1).is_err());
        assert!(MeixnerParams::new(rat(1, 2), rat(2, 1), 1).is_err());
        assert!(MeixnerParams::new(rat(1, 2), rat(1, 1), 0).is_ok());
    }

    #[test]
    fn degree_zero() {
        let x = g(rat(17, 3));
        assert_eq!(
            meixner_hyp(&params(0), &x).value,
            BigGaussianRational::one()
        );
        assert_eq!(
            monic_from_meixner(&params(0), &x).value,
            BigGaussianRational::one()
        );
    }

    #[test]
    fn degree_one_by_hand() {
        // M₁ = 1 − 2z/3, π₁ = z − 3/2
        let z = rat(7, 5);
        let m = meixner_hyp(&params(1), &g(z.clone()));
        assert_eq!(m.value.re, BigRational::one() - rat(2, 3) * &z);
        let pi = monic_from_meixner(&params(1), &g(z.clone()));
        assert_eq!(pi.value.re, &z - rat(3, 2));
        let pr = monic_recurrence(&params(1), &g(z.clone()));
        assert_eq!(pr.value.re, &z - rat(3, 2));
        assert!(monic_recurrence(&params(1), &g(rat(3, 2))).value.is_zero());
    }

    #[test]
    fn cross_oracle_small() {
        let x = g(rat(7, 3));
        assert_eq!(
            monic_from_meixner(&params(5), &x),
            monic_recurrence(&params(5), &x)
        );
        let x = g(rat(0, 1));
        assert_eq!(
            monic_from_meixner(&params(2), &x),
            monic_recurrence(&params(2), &x)
        );
    }

    #[test]
    fn leading_coefficient_is_one() {
        // n-th forward difference of a monic degree-n polynomial is n!.
        for n in 1..=5u32 {
            let p = params(n);
            let mut acc = BigRational::zero();
            let mut binom = BigRational::one();
            for j in 0..=n as i64 {
                let v = monic_from_meixner(&p, &g(int(j))).value.re;
                let sign = if (n as i64 - j) % 2 == 0 { 1 } else { -1 };
                acc += int(sign) * &binom * v;
                binom = binom * int(n as i64 - j) / int(j + 1);
            }
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(acc, int(fact), "n = {n}");
        }
    }

    #[test]
    fn weights() {
        let p = params(0);
        assert_eq!(weight_ratio(&p, 0), BigRational::one());
        assert_eq!(weight_ratio(&p, 1), rat(3, 4));
        assert_eq!(weight_ratio(&p, 2), rat(15, 32));
    }

    #[test]
    fn table_point_minus_one() {
        let v = eval_scaled_exact(&params(100), &g(rat(-1, 1)));
        assert_eq!(v.to_scaled_real().unwrap().format_sig(6), "1.99529e233");
    }

    #[test]
    fn conjugate_symmetry() {
        let z = BigGaussianRational::new(rat(21, 10), rat(-3, 7));
        let p = params(12);
        assert_eq!(
            eval_scaled_exact(&p, &z.conj()).value,
            eval_scaled_exact(&p, &z).value.conj()
        );
    }
}
