//! Evaluation of the uniform expansions of π_n(nz − β/2).
//!
//! Every formula is evaluated for Im z ≥ 0, with upper boundary values on
//! the real axis; the lower half-plane follows by conjugation. Values are
//! assembled as logarithms and returned as `LogComplex`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::region::{classify_region, Region, RegionTag};
use crate::equilibrium::{ln_branch, pow_branch, Equilibrium, Side};
use crate::error::{Error, Result};
use crate::numerics::gamma::{cos_pi, sin_pi};
use crate::numerics::{LogComplex, ScaledReal};
use crate::params::Params;
use crate::specfun::{airy_scaled, ln_d_function, ExpScaled};

/// Imaginary residue tolerated when a real-axis result is made real.
pub const REAL_TOL: f64 = 1e-8;

/// Relative tolerance of the O2/O3 consistency check in debug builds.
pub const O2_O3_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    O4,
    O1,
    O0l,
    O0r,
    Oa,
    Ob,
    O2,
    O3,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::O4 => "O4",
            Formula::O1 => "O1",
            Formula::O0l => "O0l",
            Formula::O0r => "O0r",
            Formula::Oa => "Oa",
            Formula::Ob => "Ob",
            Formula::O2 => "O2",
            Formula::O3 => "O3",
        }
    }

    /// The formula used in a region; O3 serves the whole band.
    pub fn for_region(tag: RegionTag) -> Formula {
        match tag {
            RegionTag::Outer => Formula::O4,
            RegionTag::StripLeft => Formula::O1,
            RegionTag::OriginLeft => Formula::O0l,
            RegionTag::OriginRight => Formula::O0r,
            RegionTag::AiryA => Formula::Oa,
            RegionTag::AiryB => Formula::Ob,
            RegionTag::BandLeft | RegionTag::BandRight => Formula::O3,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticResult {
    pub value: LogComplex,
    /// Set for real z.
    pub real: Option<ScaledReal>,
    pub region: Region,
    pub formula: Formula,
    /// Relative size of the neglected terms.
    pub err_estimate: f64,
    pub warnings: Vec<String>,
}

struct Raw {
    value: LogComplex,
    err: f64,
    warnings: Vec<String>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn es_mul(a: ExpScaled, b: ExpScaled) -> ExpScaled {
    ExpScaled {
        m: a.m * b.m,
        e: a.e + b.e,
    }
}

fn es_from_ln(w: Complex64) -> ExpScaled {
    ExpScaled {
        m: Complex64::from_polar(1.0, w.im),
        e: w.re,
    }
}

fn es_to_log(x: ExpScaled) -> LogComplex {
    LogComplex::from_complex(x.m).mul(&LogComplex::exp(c(x.e, 0.0)))
}

/// cos(πt) and sin(πt), scaled by e^{π|Im t|}, with Re t reduced exactly.
pub fn cos_sin_pi(t: Complex64) -> (ExpScaled, ExpScaled) {
    let r = t.re - 2.0 * (0.5 * t.re).round();
    let y = t.im;
    let ay = y.abs();
    let q = (-2.0 * PI * ay).exp();
    let ch = 0.5 * (1.0 + q);
    let sh = 0.5 * y.signum() * -(-2.0 * PI * ay).exp_m1();
    let (sr, cr) = (sin_pi(r), cos_pi(r));
    let e = PI * ay;
    (
        ExpScaled {
            m: c(cr * ch, -sr * sh),
            e,
        },
        ExpScaled {
            m: c(sr * ch, cr * sh),
            e,
        },
    )
}

/// ((s+t)/2)^β − ((s−t)/2)^β, divided by t; even in t.
fn odd_part_over_t(s: Complex64, t: Complex64, beta: f64) -> Complex64 {
    let u = t / s;
    if u.norm() < 1e-3 {
        let b3 = beta * (beta - 1.0) * (beta - 2.0) / 6.0;
        let b5 = b3 * (beta - 3.0) * (beta - 4.0) / 20.0;
        let u2 = u * u;
        (0.5 * s).powf(beta) * (2.0 / s) * (beta + u2 * (b3 + u2 * b5))
    } else {
        ((0.5 * (s + t)).powf(beta) - (0.5 * (s - t)).powf(beta)) / t
    }
}

/// Evaluates the expansions for one parameter set and region geometry.
#[derive(Clone, Debug)]
pub struct Engine {
    pub params: Params,
    pub eps: f64,
    pub delta: f64,
    pub eq: Equilibrium,
}

impl Engine {
    /// Default geometry ε = δ₀/4, δ = δ₀/2.
    pub fn new(params: Params) -> Result<Self> {
        let eq = Equilibrium::new(params.c)?;
        let d0 = eq.tp.delta0();
        Self::with_regions(params, 0.25 * d0, 0.5 * d0)
    }

    /// Requires 0 < ε < δ < δ₀ and n ≥ 1.
    pub fn with_regions(params: Params, eps: f64, delta: f64) -> Result<Self> {
        if params.n == 0 {
            return Err(Error::Domain("the expansions need n >= 1".into()));
        }
        let eq = Equilibrium::new(params.c)?;
        let d0 = eq.tp.delta0();
        if !(eps > 0.0 && eps < delta && delta < d0) {
            return Err(Error::Domain(format!(
                "need 0 < epsilon < delta < {d0}, got epsilon = {eps}, delta = {delta}"
            )));
        }
        Ok(Self {
            params,
            eps,
            delta,
            eq,
        })
    }

    /// Absolute quadrature tolerance for φ, φ̃ and D.
    pub fn with_quad_tol(mut self, tol: f64) -> Result<Self> {
        self.eq = Equilibrium::with_tol(self.params.c, tol)?;
        Ok(self)
    }

    pub fn classify(&self, z: Complex64) -> Region {
        classify_region(z, self.eps, self.delta, &self.eq.tp)
    }

    /// Region lookup plus the matching formula.
    pub fn evaluate(&self, z: Complex64) -> Result<AsymptoticResult> {
        let region = self.classify(z);
        let f = Formula::for_region(region.tag);
        let mut r = self.eval_formula(f, z)?;
        if region.tag.is_band() && cfg!(debug_assertions) {
            self.check_o2(z, &mut r)?;
        }
        Ok(r)
    }

    pub fn eval_outer(&self, z: Complex64) -> Result<AsymptoticResult> {
        self.checked(Formula::O4, z, &[RegionTag::Outer])
    }

    pub fn eval_strip_left(&self, z: Complex64) -> Result<AsymptoticResult> {
        self.checked(Formula::O1, z, &[RegionTag::StripLeft])
    }

    pub fn eval_origin(&self, z: Complex64) -> Result<AsymptoticResult> {
        match self.classify(z).tag {
            RegionTag::OriginLeft => self.eval_formula(Formula::O0l, z),
            RegionTag::OriginRight => self.eval_formula(Formula::O0r, z),
            t => Err(mismatch("O0l/O0r", t)),
        }
    }

    pub fn eval_airy_a(&self, z: Complex64) -> Result<AsymptoticResult> {
        self.checked(Formula::Oa, z, &[RegionTag::AiryA])
    }

    pub fn eval_airy_b(&self, z: Complex64) -> Result<AsymptoticResult> {
        self.checked(Formula::Ob, z, &[RegionTag::AiryB])
    }

    /// O3 in the band; O2 is evaluated alongside and compared in debug builds.
    pub fn eval_band(&self, z: Complex64) -> Result<AsymptoticResult> {
        let mut r = self.checked(Formula::O3, z, &[RegionTag::BandLeft, RegionTag::BandRight])?;
        if cfg!(debug_assertions) {
            self.check_o2(z, &mut r)?;
        }
        Ok(r)
    }

    fn check_o2(&self, z: Complex64, r: &mut AsymptoticResult) -> Result<()> {
        let o2 = self.eval_formula(Formula::O2, z)?;
        let d = o2.value.rel_diff(&r.value);
        if d > O2_O3_TOL {
            r.warnings.push(format!("O2 and O3 differ by {d:.3e}"));
        }
        Ok(())
    }

    fn checked(&self, f: Formula, z: Complex64, tags: &[RegionTag]) -> Result<AsymptoticResult> {
        let t = self.classify(z).tag;
        if !tags.contains(&t) {
            return Err(mismatch(f.name(), t));
        }
        self.eval_formula(f, z)
    }

    /// Any formula at any z, without the region check. Used for overlap
    /// comparisons across region boundaries.
    pub fn eval_formula(&self, f: Formula, z: Complex64) -> Result<AsymptoticResult> {
        let lower = z.im < 0.0;
        let zu = if lower { z.conj() } else { z };
        let raw = match f {
            Formula::O4 => self.o4(zu)?,
            Formula::O1 => self.o1(zu, false)?,
            Formula::O0r => self.o1(zu, true)?,
            Formula::O0l => self.o0l(zu)?,
            Formula::Oa => self.oa(zu)?,
            Formula::Ob => self.ob(zu)?,
            Formula::O2 => self.o2(zu)?,
            Formula::O3 => self.o3(zu)?,
        };
        let value = if lower { raw.value.conj() } else { raw.value };
        let real = if z.im == 0.0 {
            Some(value.to_scaled_real(REAL_TOL)?)
        } else {
            None
        };
        Ok(AsymptoticResult {
            value,
            real,
            region: self.classify(z),
            formula: f,
            err_estimate: raw.err,
            warnings: raw.warnings,
        })
    }

    fn nf(&self) -> f64 {
        self.params.nf()
    }

    fn side(z: Complex64) -> Side {
        if z.im == 0.0 {
            Side::Upper
        } else {
            Side::None
        }
    }

    /// log of n^n e^{n(v+l)/2}, or of (−n)^n e^{n(v+l)/2}.
    fn prefactor(&self, z: Complex64, alternating: bool) -> Complex64 {
        let n = self.nf();
        let tp = &self.eq.tp;
        let mut w = n * n.ln() + 0.5 * n * (tp.v_linear(z) + tp.lagrange_l());
        if alternating && self.params.n % 2 == 1 {
            w += c(0.0, PI);
        }
        w
    }

    /// log of z^{(1−β)/2}((√(b−z)+√(a−z))/2)^β / ((a−z)^{1/4}(b−z)^{1/4}).
    fn left_amplitude(&self, z: Complex64, zpow: Complex64) -> Complex64 {
        let tp = &self.eq.tp;
        let beta = self.params.beta;
        let sb = pow_branch(tp.b - z, 0.5, -1.0);
        let sa = pow_branch(tp.a - z, 0.5, -1.0);
        0.5 * (1.0 - beta) * zpow + beta * (0.5 * (sa + sb)).ln()
            - 0.25 * ln_branch(tp.a - z, -1.0)
            - 0.25 * ln_branch(tp.b - z, -1.0)
    }

    /// First Airy correction (5/72 + 7/72)/|nφ| for each turning point; the
    /// O(1/n) constants of the outer formulas grow like this near a and b.
    /// φ̃ = φ + iπ(1 − z) on the upper side.
    fn turning_err(&self, z: Complex64, phi: Complex64) -> f64 {
        let n = self.nf();
        let pt = phi + c(0.0, PI) * (1.0 - z);
        1.0 / (6.0 * n * phi.norm()) + 1.0 / (6.0 * n * pt.norm())
    }

    fn o4(&self, z: Complex64) -> Result<Raw> {
        let tp = &self.eq.tp;
        let n = self.nf();
        let beta = self.params.beta;
        let phi = self.eq.phi(z, Self::side(z))?.value;
        let g = 0.5 * (tp.v_linear(z) + tp.lagrange_l()) - phi;
        let sa = pow_branch(z - tp.a, 0.5, 1.0);
        let sb = pow_branch(z - tp.b, 0.5, 1.0);
        let w = n * n.ln()
            + n * g
            + 0.5 * (1.0 - beta) * ln_branch(z, 1.0)
            + beta * (0.5 * (sa + sb)).ln()
            - 0.25 * ln_branch(z - tp.a, 1.0)
            - 0.25 * ln_branch(z - tp.b, 1.0);
        Ok(Raw {
            value: LogComplex::exp(w),
            err: 1.0 / n + self.turning_err(z, phi),
            warnings: vec![],
        })
    }

    /// O1, or O0r when `with_d` is set.
    fn o1(&self, z: Complex64, with_d: bool) -> Result<Raw> {
        let n = self.nf();
        let beta = self.params.beta;
        let pt = self.eq.phi_tilde(z, Self::side(z))?.value;
        let (_, sin) = cos_sin_pi(n * z - 0.5 * beta);
        let ln_sin = sin.ln();
        let mut w = self.prefactor(z, true)
            + c(2f64.ln(), PI)
            + self.left_amplitude(z, ln_branch(z, 1.0))
            + ln_sin
            - n * pt;
        let mut warnings = vec![];
        if with_d {
            w += ln_d_function(z, &self.params, Side::Upper, self.eq.tol)?;
        }
        // Re φ = Re φ̃ − π Im z in the upper half-plane.
        let re_phi = pt.re - PI * z.im;
        let second = (beta * n.ln() + n * re_phi + n * pt.re - ln_sin.re).exp();
        let phi = pt - c(0.0, PI) * (1.0 - z);
        let err = 1.0 / n + self.turning_err(z, phi) + second;
        if ln_sin.re < (10.0 * err).ln() {
            warnings.push("near a zero of sin(n pi z - beta pi/2); relative error degraded".into());
        }
        Ok(Raw {
            value: LogComplex::exp(w),
            err,
            warnings,
        })
    }

    fn o0l(&self, z: Complex64) -> Result<Raw> {
        let n = self.nf();
        let d_side = if z.re == 0.0 { Side::Upper } else { Side::None };
        let ln_d = ln_d_function(z, &self.params, d_side, self.eq.tol)?;
        let tp = &self.eq.tp;
        let phi = self.eq.phi(z, Self::side(z))?.value;
        let g = 0.5 * (tp.v_linear(z) + tp.lagrange_l()) - phi;
        let w = ln_d + n * n.ln() + n * g + self.left_amplitude(z, ln_branch(-z, -1.0));
        Ok(Raw {
            value: LogComplex::exp(w),
            err: 1.0 / n + self.turning_err(z, phi),
            warnings: vec![],
        })
    }

    /// Shared Airy assembly: e^{pa}·X + e^{pb}·Y.
    fn airy_sum(pa: Complex64, x: ExpScaled, pb: Complex64, y: ExpScaled) -> LogComplex {
        es_to_log(es_mul(es_from_ln(pa), x).add(es_mul(es_from_ln(pb), y)))
    }

    fn oa(&self, z: Complex64) -> Result<Raw> {
        let tp = &self.eq.tp;
        let n = self.nf();
        let beta = self.params.beta;
        let side = Self::side(z);
        let t = pow_branch(tp.a - z, 0.5, -1.0);
        let s = (tp.b - z).sqrt();
        let fr = self.eq.f_tilde_ratio(z, side, n)?;
        let f = fr * (tp.a - z);
        let sum = (0.5 * (s + t)).powf(beta) + (0.5 * (s - t)).powf(beta);
        let odd = odd_part_over_t(s, t, beta);
        let common = -0.5 * (beta - 1.0) * z.ln() - 0.25 * (tp.b - z).ln();
        let pa = sum.ln() + 0.25 * fr.ln() + common;
        let pb = odd.ln() - 0.25 * fr.ln() + common;
        let (cos, sin) = cos_sin_pi(n * z - 0.5 * beta);
        let ai = airy_scaled(f);
        let x = es_mul(cos, ai.ai).add(es_mul(sin, ai.bi).scale(c(-1.0, 0.0)));
        let y = es_mul(cos, ai.ai_prime).add(es_mul(sin, ai.bi_prime).scale(c(-1.0, 0.0)));
        let total = Self::airy_sum(pa, x, pb, y);
        let w = self.prefactor(z, true) + 0.5 * PI.ln();
        Ok(Raw {
            value: total.mul(&LogComplex::exp(w)),
            err: 1.0 / n,
            warnings: vec![],
        })
    }

    fn ob(&self, z: Complex64) -> Result<Raw> {
        let tp = &self.eq.tp;
        let n = self.nf();
        let beta = self.params.beta;
        let side = Self::side(z);
        let t = pow_branch(z - tp.b, 0.5, 1.0);
        let s = (z - tp.a).sqrt();
        let fr = self.eq.f_ratio(z, side, n)?;
        let f = fr * (z - tp.b);
        let sum = (0.5 * (s + t)).powf(beta) + (0.5 * (s - t)).powf(beta);
        let odd = odd_part_over_t(s, t, beta);
        let common = -0.5 * (beta - 1.0) * z.ln() - 0.25 * (z - tp.a).ln();
        let pa = sum.ln() + 0.25 * fr.ln() + common;
        let pb = odd.ln() - 0.25 * fr.ln() + common + c(0.0, PI);
        let ai = airy_scaled(f);
        let total = Self::airy_sum(pa, ai.ai, pb, ai.ai_prime);
        let w = self.prefactor(z, false) + 0.5 * PI.ln();
        Ok(Raw {
            value: total.mul(&LogComplex::exp(w)),
            err: 1.0 / n,
            warnings: vec![],
        })
    }

    fn band_u(&self, z: Complex64) -> Complex64 {
        let tp = &self.eq.tp;
        let w = (z - 0.5 * (tp.a + tp.b)) / (0.5 * tp.width);
        if z.im == 0.0 {
            c(w.re.clamp(-1.0, 1.0).acos(), 0.0)
        } else {
            w.acos()
        }
    }

    /// log of 2 z^{(1−β)/2}((b−a)/4)^{β/2}/((z−a)^{1/4}(b−z)^{1/4}).
    fn band_amplitude(&self, z: Complex64) -> Complex64 {
        let tp = &self.eq.tp;
        let beta = self.params.beta;
        2f64.ln() + 0.5 * (1.0 - beta) * z.ln() + 0.5 * beta * (0.25 * tp.width).ln()
            - 0.25 * ln_branch(z - tp.a, 1.0)
            - 0.25 * ln_branch(tp.b - z, -1.0)
    }

    fn band_raw(
        &self,
        z: Complex64,
        phi: Complex64,
        w: Complex64,
        tau: Complex64,
        growth: f64,
    ) -> Raw {
        let n = self.nf();
        let ln_cos = cos_sin_pi(tau).0.ln();
        let err = 1.0 / n + self.turning_err(z, phi) + (growth - n.ln() - ln_cos.re).exp();
        let mut warnings = vec![];
        if ln_cos.re < (10.0 * err).ln() {
            warnings.push("near a zero of the band cosine; relative error degraded".into());
        }
        Raw {
            value: LogComplex::exp(w + ln_cos),
            err,
            warnings,
        }
    }

    fn o3(&self, z: Complex64) -> Result<Raw> {
        let n = self.nf();
        let beta = self.params.beta;
        let u = self.band_u(z);
        let phi = self.eq.phi(z, Self::side(z))?.value;
        // cos(π/4 − βu/2 − inφ) = cos(πτ).
        let tau = 0.25 - beta * u / (2.0 * PI) - c(0.0, n / PI) * phi;
        let w = self.prefactor(z, false) + self.band_amplitude(z);
        Ok(self.band_raw(z, phi, w, tau, n * phi.re.abs()))
    }

    fn o2(&self, z: Complex64) -> Result<Raw> {
        let n = self.nf();
        let beta = self.params.beta;
        let ut = PI - self.band_u(z);
        let pt = self.eq.phi_tilde(z, Self::side(z))?.value;
        // cos(nπz − βπ/2 + π/4 + βũ/2 − inφ̃) = cos(πτ).
        let tau = n * z - 0.5 * beta + 0.25 + beta * ut / (2.0 * PI) - c(0.0, n / PI) * pt;
        let w = self.prefactor(z, true) + self.band_amplitude(z);
        let phi = pt - c(0.0, PI) * (1.0 - z);
        Ok(self.band_raw(z, phi, w, tau, n * pt.re.abs() + n * PI * z.im.abs()))
    }
}

fn mismatch(formula: &str, tag: RegionTag) -> Error {
    Error::RegionMismatch {
        formula: formula.to_string(),
        region: tag.name().to_string(),
    }
}
