use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B₂ₖ for k = 1..10.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const SHIFT_TO: f64 = 20.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// sin(πx) with exact reduction of the argument.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0 * r.signum();
    }
    if r.abs() == 0.5 {
        return r.signum();
    }
    (PI * r).sin()
}

/// cos(πx) with exact reduction of the argument.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r.abs() == 0.5 {
        return 0.0;
    }
    (PI * r).cos()
}

/// Log-gamma on the branch continuous along rays from +∞.
///
/// The argument is shifted with Γ(z+1) = zΓ(z) until Re z ≥ 20 and the
/// Stirling series is summed there. On the negative real axis the result is
/// the limit from the upper half-plane.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole {
            func: "ln_gamma",
            at: format!("{z}"),
        });
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += ln_upper(w);
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

/// Principal log, taking arg = +π on the negative real axis.
fn ln_upper(w: Complex64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        Complex64::new((-w.re).ln(), PI)
    } else {
        w.ln()
    }
}

fn stirling(w: Complex64) -> Complex64 {
    let mut s = (w - 0.5) * w.ln() - w + HALF_LN_2PI;
    let r = w.inv();
    let r2 = r * r;
    let mut p = r;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        s += p * (b / (m * (m - 1.0)));
        p *= r2;
    }
    s
}

/// ln|Γ(x)| and the sign of Γ(x) for real x.
pub fn ln_gamma_real(x: f64) -> Result<(f64, i8)> {
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole {
            func: "ln_gamma_real",
            at: format!("{x}"),
        });
    }
    if x > 0.0 {
        return Ok((ln_gamma(Complex64::new(x, 0.0))?.re, 1));
    }
    let s = sin_pi(x);
    let lg = ln_gamma(Complex64::new(1.0 - x, 0.0))?.re;
    Ok((PI.ln() - s.abs().ln() - lg, if s > 0.0 { 1 } else { -1 }))
}

/// Digamma ψ(z) = Γ′(z)/Γ(z) by the same shift plus asymptotic series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole {
            func: "digamma",
            at: format!("{z}"),
        });
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.inv();
        w += 1.0;
    }
    let r = w.inv();
    let r2 = r * r;
    let mut s = w.ln() - 0.5 * r;
    let mut p = r2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let m = 2.0 * (k as f64 + 1.0);
        s -= p * (b / m);
        p *= r2;
    }
    Ok(s - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ScaledReal;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_one() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-13);
        assert!(ln_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-13);
    }

    #[test]
    fn factorial_100() {
        let f: BigInt = (1..=100u32).map(BigInt::from).product();
        let s = ScaledReal::from_big_rational(&BigRational::from_integer(f));
        let want = s.to_log_complex().log_mag;
        let got = ln_gamma(c(101.0, 0.0)).unwrap();
        assert!((got.re - want).abs() < 1e-12, "{} vs {}", got.re, want);
        assert!((got.re - 363.739_375_555_563_5).abs() < 1e-10);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn half_squares_to_pi() {
        let g = ln_gamma(c(0.5, 0.0)).unwrap().re;
        assert!((2.0 * g - PI.ln()).abs() < 1e-14);
        assert!((g - 0.572_364_942_9).abs() < 1e-10);
    }

    #[test]
    fn poles() {
        assert!(ln_gamma(c(0.0, 0.0)).is_err());
        assert!(ln_gamma(c(-3.0, 0.0)).is_err());
        assert!(ln_gamma(c(-3.0, 1e-300)).is_ok());
        assert!(ln_gamma_real(-2.0).is_err());
    }

    #[test]
    fn negative_real_sign() {
        // Γ(−0.5) = −2√π, Γ(−1.5) = 4√π/3
        let (l, s) = ln_gamma_real(-0.5).unwrap();
        assert_eq!(s, -1);
        assert!((l - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        let (l, s) = ln_gamma_real(-1.5).unwrap();
        assert_eq!(s, 1);
        assert!((l - (4.0 * PI.sqrt() / 3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn complex_reflection() {
        // Γ(z)Γ(1−z) = π/sin(πz)
        let z = c(0.3, 2.1);
        let lhs = (ln_gamma(z).unwrap() + ln_gamma(1.0 - z).unwrap()).exp();
        let rhs = PI / (PI * z).sin();
        assert!((lhs / rhs - 1.0).norm() < 1e-13);
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap().re + euler).abs() < 1e-14);
        let e = 1e-5;
        let fd =
            (ln_gamma(c(3.7 + e, 1.2)).unwrap() - ln_gamma(c(3.7 - e, 1.2)).unwrap()) / (2.0 * e);
        assert!((digamma(c(3.7, 1.2)).unwrap() - fd).norm() < 1e-9);
    }

    #[test]
    fn trig_reduction() {
        assert_eq!(sin_pi(100.0), 0.0);
        assert_eq!(sin_pi(100.5), 1.0);
        assert_eq!(cos_pi(-7.5), 0.0);
        assert!((sin_pi(1e6 + 0.25) - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
