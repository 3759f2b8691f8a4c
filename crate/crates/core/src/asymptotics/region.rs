//! Validity regions of the uniform expansions.
//!
//! Geometry: closed disks of radius ε about 0, a and b take precedence; then
//! the strip 0 < Re z < a and the band a ≤ Re z ≤ b, both for |Im z| ≤ δ;
//! everything else is the outer region. The origin disk is split at Re z = 0.

use std::fmt;

use num_complex::Complex64;

use crate::equilibrium::TurningPoints;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionTag {
    Outer,
    StripLeft,
    OriginLeft,
    OriginRight,
    AiryA,
    AiryB,
    BandLeft,
    BandRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfPlane {
    Upper,
    Lower,
    RealAxis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub tag: RegionTag,
    pub half_plane: HalfPlane,
}

impl RegionTag {
    pub const ALL: [RegionTag; 8] = [
        RegionTag::Outer,
        RegionTag::StripLeft,
        RegionTag::OriginLeft,
        RegionTag::OriginRight,
        RegionTag::AiryA,
        RegionTag::AiryB,
        RegionTag::BandLeft,
        RegionTag::BandRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionTag::Outer => "Outer",
            RegionTag::StripLeft => "StripLeft",
            RegionTag::OriginLeft => "OriginLeft",
            RegionTag::OriginRight => "OriginRight",
            RegionTag::AiryA => "AiryA",
            RegionTag::AiryB => "AiryB",
            RegionTag::BandLeft => "BandLeft",
            RegionTag::BandRight => "BandRight",
        }
    }

    pub fn is_band(self) -> bool {
        matches!(self, RegionTag::BandLeft | RegionTag::BandRight)
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hp = match self.half_plane {
            HalfPlane::Upper => "upper",
            HalfPlane::Lower => "lower",
            HalfPlane::RealAxis => "real",
        };
        write!(f, "{}({hp})", self.tag)
    }
}

pub fn half_plane(z: Complex64) -> HalfPlane {
    if z.im > 0.0 {
        HalfPlane::Upper
    } else if z.im < 0.0 {
        HalfPlane::Lower
    } else {
        HalfPlane::RealAxis
    }
}

/// The region containing z. Total; boundaries belong to the disks and the band.
pub fn classify_region(z: Complex64, eps: f64, delta: f64, tp: &TurningPoints) -> Region {
    let tag = if z.norm() <= eps {
        if z.re <= 0.0 {
            RegionTag::OriginLeft
        } else {
            RegionTag::OriginRight
        }
    } else if (z - tp.a).norm() <= eps {
        RegionTag::AiryA
    } else if (z - tp.b).norm() <= eps {
        RegionTag::AiryB
    } else if z.im.abs() <= delta && z.re >= tp.a && z.re <= tp.b {
        if z.re < 1.0 {
            RegionTag::BandLeft
        } else {
            RegionTag::BandRight
        }
    } else if z.im.abs() <= delta && z.re > 0.0 && z.re < tp.a {
        RegionTag::StripLeft
    } else {
        RegionTag::Outer
    };
    Region {
        tag,
        half_plane: half_plane(z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::turning_points;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tag(z: Complex64) -> RegionTag {
        let tp = turning_points(0.5).unwrap();
        let e = tp.delta0() / 4.0;
        classify_region(z, e, 2.0 * e, &tp).tag
    }

    #[test]
    fn table_points() {
        use RegionTag::*;
        let want = [
            (-1.0, Outer),
            (-0.001, OriginLeft),
            (0.001, OriginRight),
            (0.05, StripLeft),
            (0.171, AiryA),
            (0.172, AiryA),
            (2.0, BandRight),
            (5.828, AiryB),
            (5.829, AiryB),
            (100.0, Outer),
        ];
        for (x, t) in want {
            assert_eq!(tag(c(x, 0.0)), t, "z = {x}");
        }
    }

    #[test]
    fn boundaries_are_closed() {
        let tp = turning_points(0.5).unwrap();
        let e = tp.delta0() / 4.0;
        assert_eq!(tag(c(tp.b + e, 0.0)), RegionTag::AiryB);
        assert_eq!(tag(c(0.5, 2.0 * e)), RegionTag::BandLeft);
        assert_eq!(tag(c(0.5, 2.0 * e * 1.0001)), RegionTag::Outer);
        assert_eq!(tag(c(0.0, e)), RegionTag::OriginLeft);
        assert_eq!(tag(c(0.0, 1.5 * e)), RegionTag::Outer);
        assert_eq!(tag(c(0.1, -1.5 * e)), RegionTag::StripLeft);
        assert_eq!(tag(c(1.0, 0.0)), RegionTag::BandRight);
    }

    #[test]
    fn half_planes() {
        let tp = turning_points(0.5).unwrap();
        let r = classify_region(c(2.0, -0.01), 0.04, 0.08, &tp);
        assert_eq!(r.half_plane, HalfPlane::Lower);
        assert_eq!(
            classify_region(c(2.0, 0.0), 0.04, 0.08, &tp).half_plane,
            HalfPlane::RealAxis
        );
    }
}
