//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex-valued
//! integrands on real intervals and on polygonal paths in the plane.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadTol {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl QuadTol {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            max_intervals: 4000,
        }
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

impl Default for QuadTol {
    fn default() -> Self {
        Self::new(1e-12, 1e-14)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub err: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn qk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    let mut fv = [Complex64::new(0.0, 0.0); 14];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        rk += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            rg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = rk * 0.5;
    let mut asc = WGK[7] * (fc - mean).norm();
    let mut abs_sum = WGK[7] * fc.norm();
    for j in 0..7 {
        asc += WGK[j] * ((fv[2 * j] - mean).norm() + (fv[2 * j + 1] - mean).norm());
        abs_sum += WGK[j] * (fv[2 * j].norm() + fv[2 * j + 1].norm());
    }
    let hh = h.abs();
    let asc = asc * hh;
    let abs_sum = abs_sum * hh;
    let mut err = ((rk - rg) * h).norm();
    if asc != 0.0 && err != 0.0 {
        err = asc * (1.0f64).min((200.0 * err / asc).powf(1.5));
    }
    let floor = 50.0 * f64::EPSILON * abs_sum;
    if floor > err {
        err = floor;
    }
    (rk * h, err)
}

/// ∫ₐᵇ f(t) dt for complex-valued f.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: QuadTol,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
            intervals: 0,
        });
    }
    let (v, e) = qk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        value: v,
        err: e,
    });
    let mut total = v;
    let mut total_err = e;
    let mut frozen_err = 0.0;
    let mut frozen_val = Complex64::new(0.0, 0.0);
    let width_floor = 64.0 * f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let mut count = 1;
    while total_err > tol.target(total) {
        let Some(p) = heap.pop() else { break };
        if (p.b - p.a).abs() < width_floor {
            frozen_err += p.err;
            frozen_val += p.value;
            continue;
        }
        if count >= tol.max_intervals {
            heap.push(p);
            break;
        }
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = qk15(&f, p.a, m);
        let (v2, e2) = qk15(&f, m, p.b);
        total += v1 + v2 - p.value;
        total_err += e1 + e2 - p.err;
        heap.push(Piece {
            a: p.a,
            b: m,
            value: v1,
            err: e1,
        });
        heap.push(Piece {
            a: m,
            b: p.b,
            value: v2,
            err: e2,
        });
        count += 1;
    }
    // Re-sum to shed accumulated rounding in the running totals.
    let mut value = frozen_val;
    let mut err = frozen_err;
    for p in heap.iter() {
        value += p.value;
        err += p.err;
    }
    if err > tol.target(value) {
        return Err(Error::Quadrature {
            tol: tol.target(value),
            err,
            intervals: count,
        });
    }
    Ok(QuadResult {
        value,
        err,
        intervals: count,
    })
}

/// ∫ f(ζ) dζ along the polygon through `vertices`.
pub fn integrate_path<F: Fn(Complex64) -> Complex64>(
    f: F,
    vertices: &[Complex64],
    tol: QuadTol,
) -> Result<QuadResult> {
    let legs = vertices.len().saturating_sub(1).max(1);
    let leg_tol = QuadTol {
        abs: tol.abs / legs as f64,
        ..tol
    };
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut intervals = 0;
    for w in vertices.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        let dz = z1 - z0;
        if dz.norm() == 0.0 {
            continue;
        }
        let r = integrate(|t| f(z0 + dz * t) * dz, 0.0, 1.0, leg_tol)?;
        value += r.value;
        err += r.err;
        intervals += r.intervals;
    }
    Ok(QuadResult {
        value,
        err,
        intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|t| Complex64::new(t * t, 0.0), 0.0, 3.0, QuadTol::default()).unwrap();
        assert!((r.value.re - 9.0).abs() < 1e-13);
    }

    #[test]
    fn log_endpoint_singularity() {
        let r = integrate(
            |t| Complex64::new(t.ln(), 0.0),
            0.0,
            1.0,
            QuadTol::default(),
        )
        .unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_endpoint() {
        let r = integrate(
            |t| Complex64::new(t.sqrt(), 0.0),
            0.0,
            1.0,
            QuadTol::new(1e-14, 1e-14),
        )
        .unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn contour_around_pole() {
        let sq = [
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
        ];
        let r = integrate_path(|z| z.inv(), &sq, QuadTol::default()).unwrap();
        let want = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        assert!((r.value - want).norm() < 1e-12);
    }

    #[test]
    fn budget_error() {
        let tol = QuadTol {
            abs: 1e-30,
            rel: 0.0,
            max_intervals: 3,
        };
        assert!(matches!(
            integrate(
                |t| Complex64::new((1.0 / (t + 1e-9)).sin(), 0.0),
                0.0,
                1.0,
                tol
            ),
            Err(Error::Quadrature { .. })
        ));
    }
}
