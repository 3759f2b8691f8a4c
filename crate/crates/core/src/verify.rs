//! Identity suites: jump relations, local expansions and scalar identities,
//! each reported with its measured residual.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::asymptotics::{Engine, Formula};
use crate::equilibrium::{Equilibrium, Side};
use crate::error::Result;
use crate::params::Params;
use crate::specfun::aux::{e_tilde, exp_2pi_i, jot00_residual, ln_e};
use crate::specfun::{airy, d_function, ln_d_function};

/// A deliberate error, to confirm a suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    FlipPhiTilde,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn new(name: &'static str, residual: f64, tol: f64, detail: String) -> Self {
        Self {
            name,
            residual,
            tol,
            passed: residual <= tol,
            detail,
        }
    }

    fn failed(name: &'static str, tol: f64, err: impl fmt::Display) -> Self {
        Self {
            name,
            residual: f64::INFINITY,
            tol,
            passed: false,
            detail: format!("error: {err}"),
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {:<14} residual {:.3e} (tol {:.1e}) {}",
            self.name, self.residual, self.tol, self.detail
        )
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn run(name: &'static str, tol: f64, f: impl FnOnce() -> Result<(f64, String)>) -> SuiteResult {
    match f() {
        Ok((r, d)) => SuiteResult::new(name, r, tol, d),
        Err(e) => SuiteResult::failed(name, tol, e),
    }
}

/// g′₊ − g′₋ = −2πi on (0, a) and g′₊ + g′₋ = −log c on (a, b).
pub fn g_prime_jumps(eq: &Equilibrium) -> SuiteResult {
    run("g'-jumps", 1e-8, || {
        let tp = eq.tp;
        let mut worst: f64 = 0.0;
        for k in 1..10 {
            let x = tp.a * k as f64 / 10.0;
            let d = eq.g_prime(c(x, 0.0), Side::Upper)? - eq.g_prime(c(x, 0.0), Side::Lower)?;
            worst = worst.max((d - c(0.0, -2.0 * PI)).norm());
            let x = tp.a + tp.width * k as f64 / 10.0;
            let s = eq.g_prime(c(x, 0.0), Side::Upper)? + eq.g_prime(c(x, 0.0), Side::Lower)?;
            worst = worst.max((s + tp.c.ln()).norm());
        }
        Ok((worst, "18 points".into()))
    })
}

/// Boundary value from above or below by Richardson extrapolation off the axis.
fn limit(f: impl Fn(Complex64) -> Result<Complex64>, x: f64, sign: f64) -> Result<Complex64> {
    let h = 1e-6 * sign;
    Ok(2.0 * f(c(x, h))? - f(c(x, 2.0 * h))?)
}

/// The jump relations of φ and φ̃ across the real axis, with boundary values
/// taken as limits from off the axis and compared with the direct side values.
pub fn phi_boundary(eq: &Equilibrium) -> SuiteResult {
    run("phi-boundary", 1e-9, || {
        let tp = eq.tp;
        let phi = |z: Complex64| Ok(eq.phi(z, Side::None)?.value);
        let pt = |z: Complex64| Ok(eq.phi_tilde(z, Side::None)?.value);
        let mut worst: f64 = 0.0;
        for x in [0.05, 0.12, 0.5, 2.0, 4.5, 7.0, 20.0] {
            let (pp, pm) = (limit(phi, x, 1.0)?, limit(phi, x, -1.0)?);
            let (tp_, tm) = (limit(pt, x, 1.0)?, limit(pt, x, -1.0)?);
            let i2 = c(0.0, 2.0 * PI * (1.0 - x));
            let (r1, r2) = if x < tp.a {
                (pp - (pm - i2), tp_ - tm)
            } else if x < tp.b {
                (pp + pm, tp_ + tm)
            } else {
                (pp - pm, tp_ - (tm + i2))
            };
            worst = worst.max(r1.norm()).max(r2.norm());
            let zx = c(x, 0.0);
            worst = worst.max((eq.phi(zx, Side::Upper)?.value - pp).norm());
            worst = worst.max((eq.phi_tilde(zx, Side::Lower)?.value - tm).norm());
        }
        Ok((worst, "7 points, limits from Im z = ±1e-6".into()))
    })
}

/// 2g + 2φ − v − l = 0, with g from direct quadrature of the log potential.
pub fn g_phi_identity(eq: &Equilibrium) -> SuiteResult {
    run("gphi", 1e-9, || {
        let tp = eq.tp;
        let mut worst: f64 = 0.0;
        for z in [
            c(7.0, 0.0),
            c(20.0, 0.0),
            c(2.0, 1.0),
            c(-1.0, 0.5),
            c(0.1, -0.3),
            c(6.0, -2.0),
        ] {
            let g = eq.g_direct(z, Side::None)?;
            let phi = eq.phi(z, Side::None)?.value;
            let r = 2.0 * g + 2.0 * phi - tp.v_linear(z) - tp.lagrange_l();
            worst = worst.max(r.norm());
        }
        Ok((worst, "6 points".into()))
    })
}

/// φ near b and φ̃ near a against their leading terms; the remainder must be
/// at most ε² on circles of radius ε.
pub fn local_expansions(eq: &Equilibrium) -> SuiteResult {
    run("phi-local", 1.0, || {
        let tp = eq.tp;
        let kb = 4.0 / (3.0 * tp.b * tp.width.sqrt());
        let ka = -4.0 / (3.0 * tp.a * tp.width.sqrt());
        let mut worst: f64 = 0.0;
        for eps in [0.02, 0.01, 0.005] {
            for th in [0.0, 1.0, 2.0, 3.0] {
                let w = Complex64::from_polar(eps, th);
                let phi = eq.phi(tp.b + w, Side::Upper)?.value;
                worst = worst.max((phi - kb * w.powf(1.5)).norm() / (eps * eps));
                let pt = eq.phi_tilde(tp.a - w, Side::Upper)?.value;
                worst = worst.max((pt - ka * w.powf(1.5)).norm() / (eps * eps));
            }
        }
        Ok((
            worst,
            "max |remainder|/eps^2 over eps in {0.02, 0.01, 0.005}".into(),
        ))
    })
}

fn upper_lower(z: Complex64) -> f64 {
    if z.im >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// E/Ẽ = 1 − e^{±2iπ(nz−β/2)} in ℂ±.
pub fn e_ratio(p: &Params) -> SuiteResult {
    run("E/E~", 1e-12, || {
        let mut worst: f64 = 0.0;
        for z in [
            c(0.3, 0.01),
            c(0.7, -0.02),
            c(2.0, 0.5),
            c(-0.5, -0.3),
            c(0.01, 0.001),
        ] {
            let e = ln_e(z, p, Side::None)?.exp();
            let et = e_tilde(z, e, p, Side::None)?;
            let want = 1.0 - exp_2pi_i(p.nf() * z - 0.5 * p.beta, upper_lower(z));
            worst = worst.max((e / et - want).norm() / want.norm());
        }
        Ok((worst, "5 points".into()))
    })
}

/// Ẽ² = E₊E₋/(4 sin²(nπx − βπ/2)) on (0, 1) away from the nodes.
pub fn e_boundary_product(p: &Params) -> SuiteResult {
    run("E+E-", 1e-9, || {
        let n = p.nf();
        let mut worst: f64 = 0.0;
        for k in 0..9 {
            let x = (k as f64 + 0.3 + 0.5 * p.beta) / n.max(10.0)
                + 0.1 * k as f64 * (1.0 - 10.0 / n.max(10.0));
            if x <= 0.0 || x >= 1.0 {
                continue;
            }
            let z = c(x, 0.0);
            let ep = ln_e(z, p, Side::Upper)?.exp();
            let em = ln_e(z, p, Side::Lower)?.exp();
            let et = e_tilde(z, ep, p, Side::Upper)?;
            let s = (PI * (n * x - 0.5 * p.beta)).sin();
            let want = ep * em / (4.0 * s * s);
            worst = worst.max((et * et / want - 1.0).norm());
        }
        Ok((worst, "9 points in (0, 1)".into()))
    })
}

/// The scalar jump identity −e^{2n(φ−φ̃)}H̃/(HE) + 1/Ẽ = 1/E near the strip.
pub fn jot00(fault: Option<Fault>) -> SuiteResult {
    run("JoT00", 1e-8, || {
        let eq = Equilibrium::new(0.5)?;
        let flip = fault == Some(Fault::FlipPhiTilde);
        let mut worst: f64 = 0.0;
        for n in [10, 50] {
            let p = Params::new(0.5, 1.5, n)?;
            for k in 0..10 {
                let x = 0.03 + 0.09 * k as f64;
                for y in [0.02, -0.05] {
                    worst = worst.max(jot00_residual(c(x, y), &p, &eq, flip)?);
                }
            }
        }
        let note = if flip {
            "phi~ sign flipped"
        } else {
            "n in {10, 50}, 20 points each"
        };
        Ok((worst, note.into()))
    })
}

/// D₊/D₋ = E/Ẽ on the imaginary axis.
pub fn d_jump(p: &Params) -> SuiteResult {
    run("D-jump", 1e-8, || {
        let mut worst: f64 = 0.0;
        for y in [
            0.001, -0.001, 0.005, -0.005, 0.02, -0.02, 0.05, -0.05, 0.1, -0.1,
        ] {
            let z = c(0.0, y);
            let lp = ln_d_function(z, p, Side::Upper, 1e-13)?;
            let lm = ln_d_function(z, p, Side::Lower, 1e-13)?;
            let e = ln_e(z, p, Side::None)?.exp();
            let et = e_tilde(z, e, p, Side::None)?;
            worst = worst.max(((lp - lm).exp() - e / et).norm());
        }
        Ok((worst, "10 points".into()))
    })
}

/// |D(0.5) − 1| for each n; passes when it decreases with n.
pub fn d_convergence(c_: f64, beta: f64, ns: &[u32]) -> SuiteResult {
    run("D-to-one", 0.0, || {
        let mut sorted = ns.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut vals = vec![];
        for &n in &sorted {
            let p = Params::new(c_, beta, n)?;
            vals.push((n, (d_function(c(0.5, 0.0), &p, Side::None)? - 1.0).norm()));
        }
        let increases = vals.windows(2).filter(|w| w[1].1 >= w[0].1).count();
        let detail = vals
            .iter()
            .map(|(n, v)| format!("n={n}: {v:.3e}"))
            .collect::<Vec<_>>()
            .join(", ");
        Ok((increases as f64, format!("|D(0.5)-1| {detail}")))
    })
}

/// Ai·Bi′ − Ai′·Bi = 1/π.
pub fn wronskian() -> SuiteResult {
    run("Wronskian", 1e-12, || {
        let mut worst: f64 = 0.0;
        for k in 0..100 {
            let x = -20.0 + 40.0 * k as f64 / 99.0;
            let q = airy(x);
            let w = q.ai * q.bi_prime - q.ai_prime * q.bi;
            worst = worst.max((w * PI - 1.0).abs());
        }
        Ok((worst, "100 points in [-20, 20]".into()))
    })
}

/// The two band formulas agree.
pub fn o2_o3(p: &Params) -> SuiteResult {
    run("O2=O3", 1e-9, || {
        let e = Engine::new(*p)?;
        let tp = e.eq.tp;
        let mut worst: f64 = 0.0;
        for k in 1..10 {
            let x = tp.a + e.eps + (tp.width - 2.0 * e.eps) * k as f64 / 10.0;
            for y in [0.0, 0.01, -0.5 * e.delta] {
                let z = c(x, y);
                let a = e.eval_formula(Formula::O2, z)?.value;
                let b = e.eval_formula(Formula::O3, z)?.value;
                worst = worst.max(a.rel_diff(&b));
            }
        }
        Ok((worst, "27 band points".into()))
    })
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub fault: Option<Fault>,
}

/// All suites for one parameter set. `ns` lists the degrees used by the
/// D-convergence suite; `p.n` is used elsewhere.
pub fn run_all(p: &Params, ns: &[u32], opts: &VerifyOptions) -> Result<Vec<SuiteResult>> {
    let eq = Equilibrium::new(p.c)?;
    let d_ns: Vec<u32> = if ns.len() >= 2 {
        ns.to_vec()
    } else {
        vec![10, 100, 1000]
    };
    Ok(vec![
        g_prime_jumps(&eq),
        phi_boundary(&eq),
        g_phi_identity(&eq),
        local_expansions(&eq),
        e_ratio(p),
        e_boundary_product(p),
        jot00(opts.fault),
        d_jump(p),
        d_convergence(p.c, p.beta, &d_ns),
        wronskian(),
        o2_o3(p),
    ])
}
