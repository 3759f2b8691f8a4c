//! The scalar function D(z) attached to the origin.
//!
//! With t = 2nπs and w = 2nπz,
//! log D = (1/2πi) ∫₀^∞ [log(1 − e^{−t−iπβ})/(t + iw) − log(1 − e^{−t+iπβ})/(t − iw)] dt.
//! The integral is cut at t = 70, where e^{−t} < 10⁻³⁰. On the imaginary
//! axis the `Upper` side is the + boundary value, the limit from Re z < 0.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::equilibrium::Side;
use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadTol};
use crate::params::Params;

const T_MAX: f64 = 70.0;

/// Below this |Re(2nπz)| the integral is replaced by the boundary value on
/// the imaginary axis; the difference is O(ε log ε).
const AXIS_SNAP: f64 = 1e-9;

fn ln_1m(q: Complex64) -> Complex64 {
    if q.norm() < 0.5 {
        let w = -q;
        let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
        Complex64::new(re, w.im.atan2(1.0 + w.re))
    } else {
        (1.0 - q).ln()
    }
}

/// log(1 − e^{−t − iσπβ}).
fn kernel_log(t: f64, beta: f64, sigma: f64) -> Complex64 {
    ln_1m(Complex64::from_polar((-t).exp(), -sigma * PI * beta))
}

fn breakpoints(extra: &[f64], w: Complex64) -> Vec<f64> {
    let s = w.norm();
    let mut pts = vec![0.0, T_MAX, 1.0, 10.0, 0.5 * s, s, 2.0 * s];
    pts.extend_from_slice(extra);
    pts.retain(|p| *p >= 0.0 && *p <= T_MAX);
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    pts
}

fn integrate_pieces<F: Fn(f64) -> Complex64>(f: F, pts: &[f64], tol: f64) -> Result<Complex64> {
    let qt = QuadTol::new(tol / pts.len() as f64, 1e-15);
    let mut s = Complex64::new(0.0, 0.0);
    for w in pts.windows(2) {
        s += integrate(&f, w[0], w[1], qt)?.value;
    }
    Ok(s)
}

/// log D(z).
pub fn ln_d_function(z: Complex64, p: &Params, side: Side, tol: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Pole {
            func: "D",
            at: "0".into(),
        });
    }
    let w = 2.0 * PI * p.nf() * z;
    let i = Complex64::new(0.0, 1.0);
    let beta = p.beta;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let side = if z.re == 0.0 || w.re.abs() >= AXIS_SNAP {
        side
    } else if z.re < 0.0 {
        Side::Upper
    } else {
        Side::Lower
    };
    if w.re.abs() >= AXIS_SNAP {
        let t0 = 2.0 * PI * p.nf() * z.im.abs();
        let pts = breakpoints(&[t0], w);
        let f = |t: f64| {
            kernel_log(t, beta, 1.0) / (t + i * w) - kernel_log(t, beta, -1.0) / (t - i * w)
        };
        return Ok(integrate_pieces(f, &pts, tol)? / two_pi_i);
    }
    if side == Side::None {
        return Err(Error::OnCut {
            func: "D",
            at: format!("{z}"),
        });
    }
    // Re z = 0: one denominator vanishes at t = y0 on the path.
    let y = 2.0 * PI * p.nf() * z.im;
    let y0 = y.abs();
    let (sing_sigma, sing_sign, reg_sigma, reg_den): (f64, f64, f64, f64) = if y > 0.0 {
        // L₋(t)/(t − y0) is singular; the other term is −L₊(t)/(t + y0).
        (1.0, 1.0, -1.0, y0)
    } else {
        // −L₊(t)/(t − y0) is singular; the other term is L₋(t)/(t + y0).
        (-1.0, -1.0, 1.0, y0)
    };
    let ls = kernel_log(y0, beta, sing_sigma);
    let pts = breakpoints(&[y0], w);
    let pv_body = |t: f64| {
        let d = t - y0;
        if d == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        (kernel_log(t, beta, sing_sigma) - ls) / d
    };
    let mut pv = integrate_pieces(pv_body, &pts, tol)?;
    pv += ls * ((T_MAX - y0) / y0).ln();
    let pv = pv * sing_sign;
    let reg = integrate_pieces(
        |t| kernel_log(t, beta, reg_sigma) / (t + reg_den),
        &pts,
        tol,
    )? * (-sing_sign);
    // Plemelj: in both cases the limit from the left adds iπ·L(y0).
    let jump = Complex64::new(0.0, PI) * ls * if side == Side::Upper { 1.0 } else { -1.0 };
    Ok((pv + reg + jump) / two_pi_i)
}

/// D(z).
pub fn d_function(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    Ok(ln_d_function(z, p, side, 1e-12)?.exp())
}
