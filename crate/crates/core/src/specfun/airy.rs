//! Airy functions Ai, Bi and their derivatives for complex argument.
//!
//! Maclaurin series in double-double arithmetic inside |z| ≤ `SERIES_CUTOFF`,
//! the asymptotic expansion in |arg z| ≤ 2π/3 outside, and the rotation
//! identities elsewhere. Values far out are carried as mantissa × e^exp.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numerics::dd::{CDd, Dd};

/// Radius below which the power series is used.
pub const SERIES_CUTOFF: f64 = 9.5;

const AI0: Dd = Dd::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const MAI1: Dd = Dd::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);
const SQRT3: Dd = Dd::new(1.732_050_807_568_877_2, 1.003_508_422_180_690_3e-16);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryQuad {
    pub ai: f64,
    pub ai_prime: f64,
    pub bi: f64,
    pub bi_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryQuadC {
    pub ai: Complex64,
    pub ai_prime: Complex64,
    pub bi: Complex64,
    pub bi_prime: Complex64,
}

/// The value `m · e^e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpScaled {
    pub m: Complex64,
    pub e: f64,
}

impl ExpScaled {
    pub fn plain(m: Complex64) -> Self {
        Self { m, e: 0.0 }
    }

    pub fn value(&self) -> Complex64 {
        self.m * self.e.exp()
    }

    pub fn scale(self, k: Complex64) -> Self {
        Self {
            m: self.m * k,
            e: self.e,
        }
    }

    pub fn add(self, o: Self) -> Self {
        if self.m == Complex64::new(0.0, 0.0) {
            return o;
        }
        if o.m == Complex64::new(0.0, 0.0) {
            return self;
        }
        let e = self.e.max(o.e);
        Self {
            m: self.m * (self.e - e).exp() + o.m * (o.e - e).exp(),
            e,
        }
    }

    /// log of the value.
    pub fn ln(&self) -> Complex64 {
        self.m.ln() + self.e
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryScaled {
    pub ai: ExpScaled,
    pub ai_prime: ExpScaled,
    pub bi: ExpScaled,
    pub bi_prime: ExpScaled,
}

impl AiryScaled {
    pub fn unscale(&self) -> AiryQuadC {
        AiryQuadC {
            ai: self.ai.value(),
            ai_prime: self.ai_prime.value(),
            bi: self.bi.value(),
            bi_prime: self.bi_prime.value(),
        }
    }
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

/// Series for f, f′, g, g′ with Ai = c₁f − c₂g and Bi = √3(c₁f + c₂g).
fn series(z: Complex64) -> AiryQuadC {
    let zd = CDd::from_c64(z);
    let z3 = zd * zd * zd;
    let tiny = 1e-34;
    let sum = |first: CDd, num: &dyn Fn(f64) -> f64| -> CDd {
        let mut t = first;
        let mut s = first;
        let mut k = 0.0;
        loop {
            t = (t * z3).div_f64(num(k));
            s = s + t;
            k += 1.0;
            if t.norm() <= tiny * s.norm().max(1e-300) || k > 400.0 {
                return s;
            }
        }
    };
    let one = CDd::from_c64(Complex64::new(1.0, 0.0));
    let f = sum(one, &|k| (3.0 * k + 2.0) * (3.0 * k + 3.0));
    let g = sum(zd, &|k| (3.0 * k + 3.0) * (3.0 * k + 4.0));
    let fp = if z == Complex64::new(0.0, 0.0) {
        CDd::ZERO
    } else {
        sum((zd * zd).div_f64(2.0), &|k| {
            3.0 * (k + 1.0) * (3.0 * k + 5.0)
        })
    };
    let gp = sum(one, &|k| (3.0 * k + 1.0) * (3.0 * k + 3.0));
    let ai = f.scale(AI0) - g.scale(MAI1);
    let bi = (f.scale(AI0) + g.scale(MAI1)).scale(SQRT3);
    let aip = fp.scale(AI0) - gp.scale(MAI1);
    let bip = (fp.scale(AI0) + gp.scale(MAI1)).scale(SQRT3);
    AiryQuadC {
        ai: ai.to_c64(),
        ai_prime: aip.to_c64(),
        bi: bi.to_c64(),
        bi_prime: bip.to_c64(),
    }
}

/// Asymptotic Ai and Ai′ for |arg z| ≤ 2π/3 and large |z|.
fn ai_asymptotic(z: Complex64) -> (ExpScaled, ExpScaled) {
    let zeta = z.powf(1.5) * (2.0 / 3.0);
    let r = -zeta.inv();
    let mut u = 1.0;
    let mut p = Complex64::new(1.0, 0.0);
    let mut su = p;
    let mut sv = p;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        p *= r;
        let tu = p * u;
        let size = tu.norm();
        if size > last {
            break;
        }
        su += tu;
        sv += p * v;
        last = size;
        if size < 1e-17 * su.norm() {
            break;
        }
    }
    let pre = 0.5 / PI.sqrt();
    let phase = Complex64::from_polar(1.0, -zeta.im);
    let ai = ExpScaled {
        m: z.powf(-0.25) * pre * phase * su,
        e: -zeta.re,
    };
    let aip = ExpScaled {
        m: -z.powf(0.25) * pre * phase * sv,
        e: -zeta.re,
    };
    (ai, aip)
}

/// Ai, Ai′ outside the series disk, any argument.
fn ai_far(z: Complex64) -> (ExpScaled, ExpScaled) {
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        return ai_asymptotic(z);
    }
    let w = if z.im >= 0.0 { omega() } else { omega().conj() };
    let w2 = w * w;
    let (a1, d1) = ai_asymptotic(w * z);
    let (a2, d2) = ai_asymptotic(w2 * z);
    let ai = a1.scale(-w).add(a2.scale(-w2));
    let aip = d1.scale(-w2).add(d2.scale(-w));
    (ai, aip)
}

/// All four functions, scaled, for any complex z.
pub fn airy_scaled(z: Complex64) -> AiryScaled {
    if z.norm() <= SERIES_CUTOFF {
        let s = series(z);
        return AiryScaled {
            ai: ExpScaled::plain(s.ai),
            ai_prime: ExpScaled::plain(s.ai_prime),
            bi: ExpScaled::plain(s.bi),
            bi_prime: ExpScaled::plain(s.bi_prime),
        };
    }
    let w = omega();
    let (ai, aip) = ai_far(z);
    let (a1, d1) = ai_far(w * z);
    let (a2, d2) = ai_far(w.conj() * z);
    let e6 = Complex64::from_polar(1.0, PI / 6.0);
    let bi = a1.scale(e6).add(a2.scale(e6.conj()));
    let bip = d1.scale(e6 * w).add(d2.scale((e6 * w).conj()));
    AiryScaled {
        ai,
        ai_prime: aip,
        bi,
        bi_prime: bip,
    }
}

/// Ai, Ai′, Bi, Bi′ at complex z; may overflow for large |z|.
pub fn airy_complex(z: Complex64) -> AiryQuadC {
    airy_scaled(z).unscale()
}

/// Ai, Ai′, Bi, Bi′ at real x. Bi overflows past x ≈ 104; use `airy_scaled`.
pub fn airy(x: f64) -> AiryQuad {
    let q = airy_complex(Complex64::new(x, 0.0));
    AiryQuad {
        ai: q.ai.re,
        ai_prime: q.ai_prime.re,
        bi: q.bi.re,
        bi_prime: q.bi_prime.re,
    }
}

/// |2ωAi(ωz) + Ai(z) − iBi(z)|.
pub fn connection_check(z: Complex64) -> f64 {
    let w = omega();
    let a = airy_complex(z);
    let b = airy_complex(w * z);
    let i = Complex64::new(0.0, 1.0);
    (2.0 * w * b.ai + a.ai - i * a.bi).norm()
}
