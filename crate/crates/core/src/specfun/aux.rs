//! The auxiliary functions V, W, H, H̃, E, Ẽ, G̃′ and the constant L.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::equilibrium::{ln_branch, Equilibrium, Side, TurningPoints};
use crate::error::{Error, Result};
use crate::numerics::gamma::{cos_pi, sin_pi};
use crate::numerics::{digamma, integrate, ln_gamma, LogComplex, QuadTol};
use crate::params::Params;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Nodes X_k = (k + β/2)/n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeGrid {
    pub n: u32,
    pub beta: f64,
}

impl NodeGrid {
    pub fn node(&self, k: u32) -> f64 {
        (k as f64 + 0.5 * self.beta) / self.n as f64
    }

    /// The nodes inside (0, 1); exactly k = 0..n−1 when 1 ≤ β < 2.
    pub fn nodes_in_unit_interval(&self) -> Vec<f64> {
        (0..self.n)
            .map(|k| self.node(k))
            .filter(|x| *x < 1.0)
            .collect()
    }

    pub fn is_node(&self, x: f64) -> bool {
        let k = x * self.n as f64 - 0.5 * self.beta;
        k >= -0.5 && (k - k.round()).abs() < 1e-12 * (1.0 + k.abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AuxValues {
    pub v: Complex64,
    pub w: LogComplex,
    pub h: LogComplex,
    pub h_tilde: LogComplex,
    pub e: Complex64,
    pub e_tilde: Complex64,
    pub l: Complex64,
}

fn cut_error(func: &'static str, z: Complex64) -> Error {
    Error::OnCut {
        func,
        at: format!("{z}"),
    }
}

/// e^{2πiσt} with the real part of t reduced first.
pub(crate) fn exp_2pi_i(t: Complex64, sigma: f64) -> Complex64 {
    let r = t.re - t.re.round();
    Complex64::from_polar((-2.0 * PI * sigma * t.im).exp(), 2.0 * PI * sigma * r)
}

/// log Γ(nz + 1 − β/2) − log Γ(nz + β/2), conjugate-symmetric.
fn gamma_ratio(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    let n = p.nf();
    let b2 = 0.5 * p.beta;
    if z.im == 0.0 && side == Side::Lower {
        return Ok(gamma_ratio(z, p, Side::Upper)?.conj());
    }
    Ok(ln_gamma(n * z + (1.0 - b2))? - ln_gamma(n * z + b2)?)
}

/// log(2niπ c^{−β/2}).
fn log_2ni_pi(p: &Params) -> Complex64 {
    c((2.0 * PI * p.nf()).ln() - 0.5 * p.beta * p.c.ln(), 0.5 * PI)
}

/// V(z) = log[Γ(nz+1−β/2)/(z^{1−β}Γ(nz+β/2))] − log(2niπc^{−β/2}).
pub fn v_function(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && side == Side::None {
        return Err(cut_error("V", z));
    }
    let s = Side::resolve(z, side);
    let sg = if s == Side::Lower { -1.0 } else { 1.0 };
    Ok(gamma_ratio(z, p, s)? - (1.0 - p.beta) * ln_branch(z, sg) - log_2ni_pi(p))
}

/// log W(z), W = 2inπ Γ(nz+β/2) c^{−β/2}/Γ(nz+1−β/2).
pub fn ln_w(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    Ok(log_2ni_pi(p) - gamma_ratio(z, p, Side::resolve(z, side))?)
}

fn side_sign(z: Complex64, side: Side) -> f64 {
    if Side::resolve(z, side) == Side::Lower {
        -1.0
    } else {
        1.0
    }
}

/// log H(z), H = (z/(z−1))^{1−β} W.
pub fn ln_h(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    if z.im == 0.0 && (0.0..=1.0).contains(&z.re) {
        if side == Side::None {
            return Err(cut_error("H", z));
        }
        if z.re == 0.0 || z.re == 1.0 {
            return Err(Error::Pole {
                func: "H",
                at: format!("{z}"),
            });
        }
    }
    let sg = side_sign(z, side);
    let lr = ln_branch(z, sg) - ln_branch(z - 1.0, sg);
    Ok((1.0 - p.beta) * lr + ln_w(z, p, side)?)
}

/// log H̃(z), H̃ = (z/(1−z))^{1−β} W.
pub fn ln_h_tilde(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    if z.im == 0.0 {
        if z.re == 0.0 || z.re == 1.0 {
            return Err(Error::Pole {
                func: "H_tilde",
                at: format!("{z}"),
            });
        }
        if !(0.0..1.0).contains(&z.re) && side == Side::None {
            return Err(cut_error("H_tilde", z));
        }
    }
    let sg = side_sign(z, side);
    let r = z / (1.0 - z);
    let r = if z.im == 0.0 { c(r.re, 0.0) } else { r };
    Ok((1.0 - p.beta) * ln_branch(r, sg) + ln_w(z, p, side)?)
}

/// log E(z), from the Γ-ratio form of the node product and the closed form
/// of exp{−n∫₀¹ log(z − x) dx}.
pub fn ln_e(z: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    if z.im == 0.0 && (0.0..=1.0).contains(&z.re) {
        if side == Side::None {
            return Err(cut_error("E", z));
        }
        if z.re == 0.0 || z.re == 1.0 {
            return Err(Error::Pole {
                func: "E",
                at: format!("{z}"),
            });
        }
    }
    let n = p.nf();
    let sg = side_sign(z, side);
    let lz = ln_branch(z, sg);
    let lz1 = ln_branch(z - 1.0, sg);
    let t = n * z - 0.5 * p.beta;
    let prod = ln_gamma(t + 1.0)? - ln_gamma(t + 1.0 - n)? - n * n.ln();
    let integral = n - n * (z * lz - (z - 1.0) * lz1);
    Ok(0.5 * (1.0 - p.beta) * (lz1 - lz) + integral + prod)
}

/// Ẽ(z) = ±iE e^{∓iπ(nz−β/2)}/(2 sin(nπz − βπ/2)) in ℂ±, continued to (0, 1).
pub fn e_tilde(z: Complex64, e: Complex64, p: &Params, side: Side) -> Result<Complex64> {
    let t = p.nf() * z - 0.5 * p.beta;
    if z.im == 0.0 && z.re > 0.0 && z.re < 1.0 {
        let s = sin_pi(t.re);
        if s == 0.0 {
            return Err(Error::Pole {
                func: "E_tilde",
                at: format!("{z}"),
            });
        }
        let sg = side_sign(z, side);
        let ph = c(cos_pi(t.re), -sg * sin_pi(t.re));
        return Ok(c(0.0, sg) * e * ph / (2.0 * s));
    }
    let sg = side_sign(z, side);
    Ok(e / (1.0 - exp_2pi_i(t, sg)))
}

/// L = β log n + log(2iπc^{−β/2}), returned with its O(1/n) error size.
pub fn l_estimate(p: &Params) -> (Complex64, f64) {
    let n = p.nf();
    let v = c(
        p.beta * n.ln() + (2.0 * PI).ln() - 0.5 * p.beta * p.c.ln(),
        0.5 * PI,
    );
    (v, 1.0 / n)
}

/// All auxiliary values at z. On a cut the `side` boundary value is used.
pub fn aux_values(z: Complex64, p: &Params, side: Side) -> Result<AuxValues> {
    let e = ln_e(z, p, side)?.exp();
    Ok(AuxValues {
        v: v_function(z, p, side)?,
        w: LogComplex::exp(ln_w(z, p, side)?),
        h: LogComplex::exp(ln_h(z, p, side)?),
        h_tilde: LogComplex::exp(ln_h_tilde(z, p, side)?),
        e,
        e_tilde: e_tilde(z, e, p, side)?,
        l: l_estimate(p).0,
    })
}

/// V′(s) for real s > 0.
pub fn v_prime_real(s: f64, p: &Params) -> Result<f64> {
    let n = p.nf();
    let b2 = 0.5 * p.beta;
    let d1 = digamma(c(n * s + 1.0 - b2, 0.0))?.re;
    let d2 = digamma(c(n * s + b2, 0.0))?.re;
    Ok(n * (d1 - d2) - (1.0 - p.beta) / s)
}

/// G̃′(z) = ∫_a^b V′(s)√((s−a)(b−s)) ds / (2π(s−z)√((z−a)(z−b))).
pub fn g_tilde_prime(z: Complex64, p: &Params, tp: &TurningPoints) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= tp.a && z.re <= tp.b {
        return Err(cut_error("G_tilde_prime", z));
    }
    let h = |s: f64| -> f64 {
        let vp = v_prime_real(s, p).unwrap_or(f64::NAN);
        vp * ((s - tp.a) * (tp.b - s)).max(0.0).sqrt() / (2.0 * PI)
    };
    // n·ψ differences carry ~1e-13 absolute noise.
    let tol = QuadTol::new(1e-10, 1e-10);
    let inside = z.re > tp.a && z.re < tp.b;
    // Near the cut, subtract h(Re z) so the kernel stays bounded.
    let x0 = z.re;
    let h0 = if inside { h(x0) } else { 0.0 };
    let f = |s: f64| c(h(s) - h0, 0.0) / (s - z);
    let mut pts = vec![tp.a, tp.b];
    if inside {
        pts.insert(1, x0);
    }
    let mut s = c(0.0, 0.0);
    for w in pts.windows(2) {
        s += integrate(f, w[0], w[1], tol)?.value;
    }
    if inside {
        s += h0 * ((tp.b - z).ln() - (tp.a - z).ln());
    }
    if s.re.is_nan() {
        return Err(Error::Domain("V' evaluated at a pole".into()));
    }
    Ok(s / ((z - tp.a).sqrt() * (z - tp.b).sqrt()))
}

/// G̃(z) = −∫_z^{z+i∞} G̃′(ζ) dζ, with the ray pointing into the upper
/// half-plane (the + boundary value for z on [a, b]).
pub fn g_tilde_upper(z: Complex64, p: &Params, tp: &TurningPoints) -> Result<Complex64> {
    let f = |u: f64| -> Complex64 {
        let s = u / (1.0 - u);
        let zeta = z + c(0.0, s);
        match g_tilde_prime(zeta, p, tp) {
            Ok(g) => g * c(0.0, 1.0) / ((1.0 - u) * (1.0 - u)),
            Err(_) => c(f64::NAN, f64::NAN),
        }
    };
    let r = integrate(f, 0.0, 1.0, QuadTol::new(1e-10, 1e-8))?;
    if r.value.re.is_nan() {
        return Err(Error::Domain("G_tilde integrand failed".into()));
    }
    Ok(-r.value)
}

/// |−e^{2n(φ−φ̃)}H̃/(HE) + 1/Ẽ − 1/E|·|E| at z off the real axis.
/// `flip` negates φ̃, for checking that the residual detects a wrong phase.
pub fn jot00_residual(z: Complex64, p: &Params, eq: &Equilibrium, flip: bool) -> Result<f64> {
    let n = p.nf();
    let phi = eq.phi(z, Side::None)?.value;
    let mut pt = eq.phi_tilde(z, Side::None)?.value;
    if flip {
        pt = -pt;
    }
    let e = ln_e(z, p, Side::None)?.exp();
    let et = e_tilde(z, e, p, Side::None)?;
    let lh = ln_h_tilde(z, p, Side::None)? - ln_h(z, p, Side::None)?;
    let first = -(2.0 * n * (phi - pt) + lh).exp() / e;
    Ok(((first + 1.0 / et - 1.0 / e) * e).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Params {
        Params::new(0.5, 1.5, n).unwrap()
    }

    #[test]
    fn nodes() {
        let g = NodeGrid { n: 10, beta: 1.5 };
        let xs = g.nodes_in_unit_interval();
        assert_eq!(xs.len(), 10);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(g.node(10) > 1.0);
        assert!(g.is_node(0.075));
        assert!(!g.is_node(0.08));
    }

    #[test]
    fn e_close_to_one_far_out() {
        let mut last = f64::INFINITY;
        for n in [10, 100, 1000] {
            let e = ln_e(c(3.0, 0.0), &p(n), Side::None).unwrap().exp();
            let d = (e - 1.0).norm();
            assert!(d < 2.0 / n as f64, "n={n}: {e}");
            assert!(d < last);
            last = d;
        }
    }

    #[test]
    fn e_matches_product_definition() {
        // Direct product over the nodes for a small n.
        let pp = p(7);
        let z = c(0.4, 0.3);
        let mut prod = c(1.0, 0.0);
        for k in 0..7 {
            prod *= z - (k as f64 + 0.75) / 7.0;
        }
        let n = 7.0;
        let integral = (n - n * (z * z.ln() - (z - 1.0) * (z - 1.0).ln())).exp();
        let pre = ((z - 1.0) / z).powf(-0.25);
        let want = pre * integral * prod;
        let got = ln_e(z, &pp, Side::None).unwrap().exp();
        assert!((got / want - 1.0).norm() < 1e-12, "{got} {want}");
    }

    #[test]
    fn e_ratio_forms_agree() {
        let pp = p(100);
        for z in [c(0.3, 0.01), c(2.0, -0.5), c(-0.2, 0.002)] {
            let e = ln_e(z, &pp, Side::None).unwrap().exp();
            let et = e_tilde(z, e, &pp, Side::None).unwrap();
            let sg = z.im.signum();
            let t = pp.nf() * z - 0.75;
            let f1 = 1.0 - exp_2pi_i(t, sg);
            let f2 = c(0.0, -2.0 * sg) * (c(0.0, sg * PI) * t).exp() * (PI * t).sin();
            assert!((e / et - f1).norm() < 1e-12 * f1.norm());
            assert!((f1 - f2).norm() < 1e-12 * f1.norm());
        }
    }

    #[test]
    fn h_tilde_over_h() {
        let pp = p(50);
        for z in [c(0.3, 0.2), c(2.0, -1.0), c(-1.0, 0.5)] {
            let r = ln_h_tilde(z, &pp, Side::None).unwrap() - ln_h(z, &pp, Side::None).unwrap();
            let want = c(0.0, z.im.signum() * PI * (1.0 - pp.beta));
            let d = LogComplex::exp(r).rel_diff(&LogComplex::exp(want));
            assert!(d < 1e-12, "{z}: {r} {want}");
        }
    }

    #[test]
    fn h_from_v() {
        let pp = p(40);
        for z in [c(0.3, 0.2), c(3.0, -1.0), c(-2.0, 0.5)] {
            let v = v_function(z, &pp, Side::None).unwrap();
            let lh = (pp.beta - 1.0) * (z - 1.0).ln() - v;
            let got = LogComplex::exp(ln_h(z, &pp, Side::None).unwrap());
            assert!(got.rel_diff(&LogComplex::exp(lh)) < 1e-12, "{z}");
            let lht = (pp.beta - 1.0) * (1.0 - z).ln() - v;
            let got = LogComplex::exp(ln_h_tilde(z, &pp, Side::None).unwrap());
            assert!(got.rel_diff(&LogComplex::exp(lht)) < 1e-12, "{z}");
        }
    }

    #[test]
    fn v_leading_behaviour() {
        let pp = p(1000);
        let v = v_function(c(2.0, 1.0), &pp, Side::None).unwrap();
        let want = -l_estimate(&pp).0;
        assert!((v - want).norm() < 1e-3);
    }

    #[test]
    fn l_value() {
        let (l, err) = l_estimate(&p(100));
        let want = c(
            1.5 * 100f64.ln() + (2.0 * PI * 2f64.powf(0.75)).ln(),
            0.5 * PI,
        );
        assert!((l - want).norm() < 1e-14);
        assert_eq!(err, 0.01);
    }

    #[test]
    fn e_tilde_continuous_across_unit_interval() {
        let pp = p(20);
        let x = c(0.43, 0.0);
        let eu = ln_e(x, &pp, Side::Upper).unwrap().exp();
        let el = ln_e(x, &pp, Side::Lower).unwrap().exp();
        let tu = e_tilde(x, eu, &pp, Side::Upper).unwrap();
        let tl = e_tilde(x, el, &pp, Side::Lower).unwrap();
        assert!((tu / tl - 1.0).norm() < 1e-12);
    }

    #[test]
    fn g_tilde_prime_decay() {
        let tp = crate::equilibrium::turning_points(0.5).unwrap();
        let pp = p(100);
        let a = g_tilde_prime(c(100.0, 0.0), &pp, &tp).unwrap() * 1e4;
        let b = g_tilde_prime(c(1000.0, 0.0), &pp, &tp).unwrap() * 1e6;
        assert!(a.norm() < 1.0 && b.norm() < 1.0);
        assert!((a / b).norm() < 2.0 && (a / b).norm() > 0.5);
    }

    #[test]
    fn jump_identity_near_strip() {
        let eq = Equilibrium::new(0.5).unwrap();
        for n in [10, 50] {
            let pp = p(n);
            for k in 0..10 {
                let x = 0.03 + 0.09 * k as f64;
                for y in [0.02, -0.05] {
                    let r = jot00_residual(c(x, y), &pp, &eq, false).unwrap();
                    assert!(r < 1e-8, "n={n} z={x}+{y}i: {r}");
                }
            }
            let bad = jot00_residual(c(0.3, 0.02), &pp, &eq, true).unwrap();
            assert!(bad > 1e-3);
        }
    }

    #[test]
    fn boundary_product_on_unit_interval() {
        let pp = p(30);
        for x in [0.1, 0.27, 0.5, 0.81] {
            let z = c(x, 0.0);
            let ep = ln_e(z, &pp, Side::Upper).unwrap().exp();
            let em = ln_e(z, &pp, Side::Lower).unwrap().exp();
            let et = e_tilde(z, ep, &pp, Side::Upper).unwrap();
            let s = (PI * (30.0 * x - 0.75)).sin();
            let want = ep * em / (4.0 * s * s);
            assert!((et * et / want - 1.0).norm() < 1e-9, "x={x}");
            let ratio = ep / em;
            let rw = -(c(0.0, 2.0 * PI * (30.0 * x - 0.75))).exp();
            assert!((ratio - rw).norm() < 1e-9);
        }
    }

    #[test]
    fn d_jump_matches_e_ratio() {
        let pp = p(100);
        for y in [
            0.001, -0.001, 0.005, -0.005, 0.02, -0.02, 0.05, -0.05, 0.1, -0.1,
        ] {
            let z = c(0.0, y);
            let lp = crate::specfun::ln_d_function(z, &pp, Side::Upper, 1e-13).unwrap();
            let lm = crate::specfun::ln_d_function(z, &pp, Side::Lower, 1e-13).unwrap();
            let e = ln_e(z, &pp, Side::None).unwrap().exp();
            let et = e_tilde(z, e, &pp, Side::None).unwrap();
            let d = ((lp - lm).exp() - e / et).norm();
            assert!(d < 1e-8, "y={y}: {d}");
        }
    }

    #[test]
    fn h_inverse_bounded() {
        for n in [10, 100, 1000] {
            let pp = p(n);
            for z in [
                c(0.0, 0.5),
                c(0.5, 0.3),
                c(2.0, 0.0),
                c(5.0, -3.0),
                c(0.3, -0.01),
            ] {
                let h = ln_h(z, &pp, Side::Upper).unwrap();
                let ht = ln_h_tilde(z, &pp, Side::Upper).unwrap();
                assert!((-h.re).exp() < 10.0 && (-ht.re).exp() < 10.0, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn g_tilde_small_at_three() {
        let tp = crate::equilibrium::turning_points(0.5).unwrap();
        let pp = p(100);
        let g = g_tilde_upper(c(3.0, 0.0), &pp, &tp).unwrap();
        assert!(g.norm() < 10.0 / 100.0, "{g}");
    }
}
