//! Equilibrium measure, g- and φ-functions, and the turning-point maps.
//!
//! φ is integrated from b and φ̃ from a, so both keep full relative accuracy
//! close to their own turning point. All integrands are written in terms of
//! the offset from that point. On the real axis, boundary values come from
//! explicit side formulas rather than from points shifted off the axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate, integrate_path, QuadTol};

/// Which boundary value to take on a branch cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    None,
    Upper,
    Lower,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Lower => -1.0,
            _ => 1.0,
        }
    }

    /// The side implied by z: its half-plane, or `side` on the real axis.
    pub fn resolve(z: Complex64, side: Side) -> Side {
        if z.im > 0.0 {
            Side::Upper
        } else if z.im < 0.0 {
            Side::Lower
        } else {
            side
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// log w, with arg = ±π on the negative real axis taken from `sgn`.
pub(crate) fn ln_branch(w: Complex64, sgn: f64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        c((-w.re).ln(), PI * sgn)
    } else {
        w.ln()
    }
}

/// w^p on the same branch as `ln_branch`.
pub(crate) fn pow_branch(w: Complex64, p: f64, sgn: f64) -> Complex64 {
    if w.re == 0.0 && w.im == 0.0 {
        return c(0.0, 0.0);
    }
    (ln_branch(w, sgn) * p).exp()
}

/// log(1 + w), accurate for small w; `sgn` picks arg ±π when 1 + w < 0.
fn ln1p_branch(w: Complex64, sgn: f64) -> Complex64 {
    if w.im == 0.0 && 1.0 + w.re < 0.0 {
        return c((-1.0 - w.re).ln(), PI * sgn);
    }
    if w.norm() < 0.5 {
        let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
        c(re, w.im.atan2(1.0 + w.re))
    } else {
        (1.0 + w).ln()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningPoints {
    pub c: f64,
    pub a: f64,
    pub b: f64,
    /// b − a = 4√c/(1 − c), formed without subtraction.
    pub width: f64,
}

/// a = (1 − √c)/(1 + √c) and b = 1/a.
pub fn turning_points(c: f64) -> Result<TurningPoints> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c = {c} must lie in (0, 1)")));
    }
    let s = c.sqrt();
    Ok(TurningPoints {
        c,
        a: (1.0 - s) / (1.0 + s),
        b: (1.0 + s) / (1.0 - s),
        width: 4.0 * s / (1.0 - c),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandCoordinates {
    pub u: f64,
    pub u_tilde: f64,
}

impl TurningPoints {
    pub fn new(c: f64) -> Result<Self> {
        turning_points(c)
    }

    /// Largest radius used for the turning-point and origin disks.
    pub fn delta0(&self) -> f64 {
        self.a
            .min(0.5 * self.width)
            .min(1.0 - self.a)
            .min(self.b - 1.0)
    }

    fn band_arg(&self, x: f64) -> f64 {
        ((x * (self.b + self.a) - 2.0) / (x * self.width)).clamp(-1.0, 1.0)
    }

    /// Density of the equilibrium measure on [0, b].
    pub fn rho(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.b).contains(&x) {
            return Err(Error::Domain(format!("rho needs 0 <= x <= b, got {x}")));
        }
        if x <= self.a {
            return Ok(1.0);
        }
        if x == self.b {
            return Ok(0.0);
        }
        Ok(self.band_arg(x).acos() / PI)
    }

    /// v(z) = −z log c.
    pub fn v_linear(&self, z: Complex64) -> Complex64 {
        -z * self.c.ln()
    }

    /// l = 2 log((b − a)/4) − 2.
    pub fn lagrange_l(&self) -> f64 {
        2.0 * (0.25 * self.width).ln() - 2.0
    }

    /// z = ((b−a)/2) cos u + (b+a)/2 with u ∈ [0, π], and ũ = π − u.
    pub fn band_coordinates(&self, x: f64) -> Result<BandCoordinates> {
        if !(self.a..=self.b).contains(&x) {
            return Err(Error::Domain(format!(
                "band coordinates need a <= x <= b, got {x}"
            )));
        }
        let w = ((x - 0.5 * (self.b + self.a)) / (0.5 * self.width)).clamp(-1.0, 1.0);
        let u = w.acos();
        Ok(BandCoordinates { u, u_tilde: PI - u })
    }

    /// √(ζ−a)√(ζ−b) from the offsets ζ−a and ζ−b; explicit on the real axis.
    fn sqrt_prod(&self, da: Complex64, db: Complex64, side: Side) -> Complex64 {
        if da.im == 0.0 && db.im == 0.0 && side != Side::None {
            let (p, q) = (da.re, db.re);
            if q >= 0.0 {
                return c((p * q).sqrt(), 0.0);
            }
            if p <= 0.0 {
                return c(-(p * q).sqrt(), 0.0);
            }
            return c(0.0, side.sign() * (-p * q).sqrt());
        }
        da.sqrt() * db.sqrt()
    }

    /// The φ integrand at ζ = b + d.
    pub(crate) fn f_from_b(&self, d: Complex64, side: Side) -> Complex64 {
        let da = d + self.width;
        let s = self.sqrt_prod(da, d, side);
        let zeta = d + self.b;
        let w = 2.0 * (self.a * d + s) / (zeta * self.width);
        ln1p_branch(w, side.sign())
    }

    /// The φ̃ integrand at ζ = a + d.
    pub(crate) fn f_tilde_from_a(&self, d: Complex64, side: Side) -> Complex64 {
        let db = d - self.width;
        let s = self.sqrt_prod(d, db, side);
        let zeta = d + self.a;
        let w = -2.0 * (self.b * d + s) / (zeta * self.width);
        ln1p_branch(w, -side.sign())
    }
}

/// A phase-function value together with the boundary side it belongs to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseValue {
    pub value: Complex64,
    pub boundary_side: Side,
}

/// Height of the detour used when z lies close to a cut.
const DETOUR: f64 = 0.5;

/// The equilibrium problem for fixed c with a quadrature tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equilibrium {
    pub tp: TurningPoints,
    pub tol: f64,
}

impl Equilibrium {
    pub fn new(c: f64) -> Result<Self> {
        Ok(Self {
            tp: turning_points(c)?,
            tol: 1e-12,
        })
    }

    pub fn with_tol(c: f64, tol: f64) -> Result<Self> {
        Ok(Self {
            tp: turning_points(c)?,
            tol,
        })
    }

    fn quad_tol(&self, dist: f64) -> QuadTol {
        QuadTol::new(self.tol * dist.powf(1.5).min(1.0), 1e-14)
    }

    fn on_cut(func: &'static str, z: Complex64) -> Error {
        Error::OnCut {
            func,
            at: format!("{z}"),
        }
    }

    /// g′(z) = (−log c)/2 − log[(z(b+a) − 2 + 2√((z−a)(z−b)))/(z(b−a))].
    pub fn g_prime(&self, z: Complex64, side: Side) -> Result<Complex64> {
        let tp = &self.tp;
        if z.im == 0.0 {
            if z.re == 0.0 {
                return Err(Error::Pole {
                    func: "g_prime",
                    at: "0".into(),
                });
            }
            if z.re > 0.0 && z.re < tp.b && side == Side::None {
                return Err(Self::on_cut("g_prime", z));
            }
        }
        let side = Side::resolve(z, side);
        let f = if z.im == 0.0 {
            tp.f_from_b(c(z.re - tp.b, 0.0), side)
        } else {
            tp.f_from_b(z - tp.b, Side::None)
        };
        Ok(-0.5 * tp.c.ln() - f)
    }

    /// φ(z) = ∫_b^z of the φ integrand.
    pub fn phi(&self, z: Complex64, side: Side) -> Result<PhaseValue> {
        let tp = &self.tp;
        if z.im < 0.0 {
            let p = self.phi(z.conj(), Side::None)?;
            return Ok(PhaseValue {
                value: p.value.conj(),
                boundary_side: Side::None,
            });
        }
        if z.im == 0.0 {
            let x = z.re;
            if x >= tp.b {
                return Ok(PhaseValue {
                    value: self.phi_real_right(x)?,
                    boundary_side: Side::None,
                });
            }
            if side == Side::None {
                return Err(Self::on_cut("phi", z));
            }
            let up = if x > tp.a {
                let d = x - tp.b;
                let tol = self.quad_tol(d.abs());
                integrate(
                    |t| tp.f_from_b(c(d * t, 0.0), Side::Upper) * d,
                    0.0,
                    1.0,
                    tol,
                )?
                .value
            } else {
                self.phi_tilde(c(x, 0.0), Side::Upper)?.value - c(0.0, PI * (1.0 - x))
            };
            let value = if side == Side::Lower { up.conj() } else { up };
            return Ok(PhaseValue {
                value,
                boundary_side: side,
            });
        }
        let d = z - tp.b;
        let f = |w: Complex64| tp.f_from_b(w, Side::None);
        let (path, tol): (Vec<Complex64>, _) = if z.im >= DETOUR || z.re >= tp.b {
            (vec![c(0.0, 0.0), d], self.quad_tol(d.norm()))
        } else {
            let path = vec![c(0.0, 0.0), c(0.0, DETOUR), c(d.re, DETOUR), d];
            (path, QuadTol::new(self.tol * (1.0 + d.re.abs()), 1e-14))
        };
        Ok(PhaseValue {
            value: integrate_path(f, &path, tol)?.value,
            boundary_side: Side::None,
        })
    }

    fn phi_real_right(&self, x: f64) -> Result<Complex64> {
        let tp = &self.tp;
        let d = x - tp.b;
        if d == 0.0 {
            return Ok(c(0.0, 0.0));
        }
        let tol = self.quad_tol(d);
        Ok(integrate(
            |t| tp.f_from_b(c(d * t, 0.0), Side::Upper) * d,
            0.0,
            1.0,
            tol,
        )?
        .value)
    }

    /// φ̃(z) = ∫_a^z of the φ̃ integrand; equals φ ± iπ(1 − z) in ℂ±.
    pub fn phi_tilde(&self, z: Complex64, side: Side) -> Result<PhaseValue> {
        let tp = &self.tp;
        if z.im < 0.0 {
            let p = self.phi_tilde(z.conj(), Side::None)?;
            return Ok(PhaseValue {
                value: p.value.conj(),
                boundary_side: Side::None,
            });
        }
        if z.im == 0.0 {
            let x = z.re;
            if x >= 0.0 && x <= tp.a {
                let d = x - tp.a;
                if d == 0.0 {
                    return Ok(PhaseValue {
                        value: c(0.0, 0.0),
                        boundary_side: Side::None,
                    });
                }
                let tol = self.quad_tol(-d);
                let v = integrate(
                    |t| tp.f_tilde_from_a(c(d * t, 0.0), Side::Upper) * d,
                    0.0,
                    1.0,
                    tol,
                )?;
                return Ok(PhaseValue {
                    value: c(v.value.re, 0.0),
                    boundary_side: Side::None,
                });
            }
            if side == Side::None {
                return Err(Self::on_cut("phi_tilde", z));
            }
            let up = if x >= tp.b {
                self.phi_real_right(x)? + c(0.0, PI * (1.0 - x))
            } else if x > tp.a {
                let d = x - tp.a;
                let tol = self.quad_tol(d);
                integrate(
                    |t| tp.f_tilde_from_a(c(d * t, 0.0), Side::Upper) * d,
                    0.0,
                    1.0,
                    tol,
                )?
                .value
            } else {
                let head = self.phi_tilde(c(0.0, 0.0), Side::None)?.value;
                let tol = self.quad_tol(1.0);
                let tail = integrate(
                    |t| tp.f_tilde_from_a(c(t - tp.a, 0.0), Side::Upper),
                    0.0,
                    x,
                    tol,
                )?;
                head + tail.value
            };
            let value = if side == Side::Lower { up.conj() } else { up };
            return Ok(PhaseValue {
                value,
                boundary_side: side,
            });
        }
        let d = z - tp.a;
        let f = |w: Complex64| tp.f_tilde_from_a(w, Side::None);
        let straight = z.im >= DETOUR || (z.re > 0.0 && z.re <= tp.a);
        let (path, tol): (Vec<Complex64>, _) = if straight {
            (vec![c(0.0, 0.0), d], self.quad_tol(d.norm()))
        } else {
            let path = vec![c(0.0, 0.0), c(0.0, DETOUR), c(d.re, DETOUR), d];
            (path, QuadTol::new(self.tol * (1.0 + d.re.abs()), 1e-14))
        };
        Ok(PhaseValue {
            value: integrate_path(f, &path, tol)?.value,
            boundary_side: Side::None,
        })
    }

    /// g = (v + l)/2 − φ.
    pub fn g_function(&self, z: Complex64, side: Side) -> Result<Complex64> {
        let phi = self.phi(z, side)?.value;
        Ok(0.5 * (self.tp.v_linear(z) + self.tp.lagrange_l()) - phi)
    }

    /// g = ∫₀ᵇ log(z − x) ρ(x) dx by direct quadrature.
    pub fn g_direct(&self, z: Complex64, side: Side) -> Result<Complex64> {
        let tp = self.tp;
        if z.im == 0.0 && z.re < tp.b && side == Side::None {
            return Err(Self::on_cut("g_direct", z));
        }
        let sgn = Side::resolve(z, side).sign();
        let kernel = |x: f64| -> Complex64 {
            let rho = if x <= tp.a {
                1.0
            } else {
                tp.band_arg(x).acos() / PI
            };
            ln_branch(z - x, sgn) * rho
        };
        let mut cuts = vec![0.0, tp.a, tp.b];
        if z.im == 0.0 && z.re > 0.0 && z.re < tp.b && z.re != tp.a {
            cuts.push(z.re);
        }
        cuts.sort_by(f64::total_cmp);
        let tol = QuadTol::new(self.tol, 1e-14);
        let mut sum = c(0.0, 0.0);
        for w in cuts.windows(2) {
            sum += integrate(kernel, w[0], w[1], tol)?.value;
        }
        Ok(sum)
    }

    fn check_disk(&self, func: &'static str, z: Complex64, center: f64) -> Result<()> {
        let r = self.tp.delta0();
        if (z - center).norm() >= r {
            return Err(Error::OutOfDisk {
                func,
                center,
                radius: r,
                at: format!("{z}"),
            });
        }
        Ok(())
    }

    /// F(z)/(z − b) = ((3/2)n φ(z)/(z−b)^{3/2})^{2/3}.
    pub fn f_ratio(&self, z: Complex64, side: Side, n: f64) -> Result<Complex64> {
        self.check_disk("F_map", z, self.tp.b)?;
        let tp = &self.tp;
        let d = z - tp.b;
        let side = Side::resolve(z, side);
        let q = if d.norm() < 1e-12 {
            c(4.0 / (3.0 * tp.b * tp.width.sqrt()), 0.0)
        } else {
            let phi = self.phi(z, side)?.value;
            phi / pow_branch(d, 1.5, side.sign())
        };
        Ok((1.5 * n * q).powf(2.0 / 3.0))
    }

    /// F̃(z)/(a − z) = (−(3/2)n φ̃(z)/(a−z)^{3/2})^{2/3}.
    pub fn f_tilde_ratio(&self, z: Complex64, side: Side, n: f64) -> Result<Complex64> {
        self.check_disk("F_tilde_map", z, self.tp.a)?;
        let tp = &self.tp;
        let d = tp.a - z;
        let side = Side::resolve(z, side);
        let q = if d.norm() < 1e-12 {
            c(-4.0 / (3.0 * tp.a * tp.width.sqrt()), 0.0)
        } else {
            let phi = self.phi_tilde(z, side)?.value;
            phi / pow_branch(d, 1.5, -side.sign())
        };
        Ok((-1.5 * n * q).powf(2.0 / 3.0))
    }

    /// F(z) = ((3/2)n φ(z))^{2/3}, conformal near b.
    pub fn f_map(&self, z: Complex64, side: Side, n: f64) -> Result<Complex64> {
        Ok(self.f_ratio(z, side, n)? * (z - self.tp.b))
    }

    /// F̃(z) = (−(3/2)n φ̃(z))^{2/3}, conformal near a.
    pub fn f_tilde_map(&self, z: Complex64, side: Side, n: f64) -> Result<Complex64> {
        Ok(self.f_tilde_ratio(z, side, n)? * (self.tp.a - z))
    }
}
