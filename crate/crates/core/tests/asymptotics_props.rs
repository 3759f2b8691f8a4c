use meixner_core::asymptotics::{classify_region, Engine, Formula, HalfPlane, RegionTag};
use meixner_core::equilibrium::TurningPoints;
use meixner_core::exact::{eval_scaled_exact, MeixnerParams};
use meixner_core::numerics::{BigGaussianRational, Complex64};
use meixner_core::Params;
use proptest::prelude::*;

fn engine() -> Engine {
    Engine::new(Params::new(0.5, 1.5, 100).unwrap()).unwrap()
}

/// Every predicate that could claim z, in priority order.
fn claims(z: Complex64, eps: f64, delta: f64, tp: &TurningPoints) -> Vec<RegionTag> {
    let mut v = Vec::new();
    if z.norm() <= eps {
        v.push(if z.re <= 0.0 {
            RegionTag::OriginLeft
        } else {
            RegionTag::OriginRight
        });
    }
    if (z - tp.a).norm() <= eps {
        v.push(RegionTag::AiryA);
    }
    if (z - tp.b).norm() <= eps {
        v.push(RegionTag::AiryB);
    }
    if z.im.abs() <= delta && z.re >= tp.a && z.re <= tp.b {
        v.push(if z.re < 1.0 {
            RegionTag::BandLeft
        } else {
            RegionTag::BandRight
        });
    }
    if z.im.abs() <= delta && z.re > 0.0 && z.re < tp.a {
        v.push(RegionTag::StripLeft);
    }
    v.push(RegionTag::Outer);
    v
}

/// Distance from z to the nearest region boundary.
fn boundary_distance(z: Complex64, eps: f64, delta: f64, tp: &TurningPoints) -> f64 {
    let mut d = f64::INFINITY;
    for c in [0.0, tp.a, tp.b] {
        d = d.min(((z - c).norm() - eps).abs());
    }
    d = d.min((z.im.abs() - delta).abs());
    for x in [0.0, tp.a, 1.0, tp.b] {
        d = d.min((z.re - x).abs());
    }
    d.min(z.im.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn region_totality(re in -2.0f64..8.0, im in -0.5f64..0.5) {
        let e = engine();
        let z = Complex64::new(re, im);
        let r = e.classify(z);
        prop_assert_eq!(r.tag, claims(z, e.eps, e.delta, &e.eq.tp)[0]);
        let hp = if im > 0.0 { HalfPlane::Upper } else if im < 0.0 { HalfPlane::Lower } else { HalfPlane::RealAxis };
        prop_assert_eq!(r.half_plane, hp);
    }

    #[test]
    fn region_stable_under_perturbation(re in -2.0f64..8.0, im in -0.5f64..0.5, dre in -1.0f64..1.0, dim in -1.0f64..1.0) {
        let e = engine();
        let z = Complex64::new(re, im);
        prop_assume!(boundary_distance(z, e.eps, e.delta, &e.eq.tp) >= 1e-9);
        let w = z + Complex64::new(dre, dim) * 0.5e-9;
        let tag = |z| classify_region(z, e.eps, e.delta, &e.eq.tp).tag;
        prop_assert_eq!(tag(z), tag(w));
    }
}

#[test]
fn every_formula_is_real_on_the_axis() {
    let e = engine();
    let cases = [
        (Formula::O4, -1.0),
        (Formula::O4, 10.0),
        (Formula::O1, 0.05),
        (Formula::O0l, -0.001),
        (Formula::O0r, 0.001),
        (Formula::Oa, 0.171),
        (Formula::Ob, 5.828),
        (Formula::O2, 2.0),
        (Formula::O3, 2.0),
        (Formula::O3, 0.6),
    ];
    for (f, x) in cases {
        let r = e.eval_formula(f, Complex64::new(x, 0.0)).unwrap();
        assert!(
            r.value.imag_residue() <= 1e-8,
            "{f} at {x}: {}",
            r.value.imag_residue()
        );
        assert!(r.real.is_some(), "{f} at {x}");
    }
}

#[test]
fn complex_grid_against_oracle() {
    let e = engine();
    let p = MeixnerParams::parse("0.5", "1.5", 100).unwrap();
    for re in ["-3", "-1", "-0.2", "0.5", "1", "2", "3.5", "5", "7", "12"] {
        for im in ["0.3", "1", "-0.5", "2.5"] {
            let zs = format!("{re},{im}");
            let zg = BigGaussianRational::parse(&zs).unwrap();
            let r = e.evaluate(zg.to_complex64()).unwrap();
            let exact = eval_scaled_exact(&p, &zg).to_log_complex();
            let rel = r.value.rel_diff(&exact);
            assert!(
                rel <= r.err_estimate,
                "{zs}: {rel:e} > {:e}",
                r.err_estimate
            );
        }
    }
}

#[test]
fn conjugate_points_give_conjugate_values() {
    let e = engine();
    for z in [
        Complex64::new(1.5, 0.05),
        Complex64::new(-0.5, 0.7),
        Complex64::new(0.1, 0.02),
    ] {
        let up = e.evaluate(z).unwrap().value;
        let down = e.evaluate(z.conj()).unwrap().value;
        assert!(up.conj().rel_diff(&down) < 1e-14);
    }
}
