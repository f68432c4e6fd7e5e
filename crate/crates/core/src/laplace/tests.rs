use super::*;
use crate::fit::Primitive;
use crate::generators::{generate, Params};
use crate::tol::Tolerances;

fn gen(name: &str, p: &str) -> SampledImmersion<f64> {
    generate(name, &Params::parse(p).unwrap(), &[], &Tolerances::default()).unwrap().immersion
}

fn gen_at(name: &str, p: &str, counts: &[usize]) -> SampledImmersion<f64> {
    generate(name, &Params::parse(p).unwrap(), counts, &Tolerances::default()).unwrap().immersion
}

#[test]
fn sphere_laplace_is_twice_position() {
    let s = Settings::default();
    let sp = gen("sphere", "r=2");
    let r = laplace_map(&sp, &s).unwrap();
    assert!(!r.degenerate);
    for p in r.fields.interior() {
        for k in 0..3 {
            assert!((r.l.point(p)[k] - 0.5 * sp.point(p)[k]).abs() < 1e-3 * 0.5 * 2.0);
        }
    }
    assert_eq!(rank_profile(&r).rank, 2);
    let rep = classify_result(&r, &s);
    assert_eq!(rep.verdict, Verdict::Homothetic);
    assert!((rep.constants["c"] - 0.5).abs() < 1e-4);
}

#[test]
fn minimal_surfaces_have_point_images() {
    let s = Settings::default();
    for name in ["helicoid", "catenoid", "plane"] {
        let r = laplace_map(&gen(name, ""), &s).unwrap();
        assert!(r.degenerate, "{name}: {}", r.sup_norm);
        assert_eq!(rank_profile(&r).rank, 0, "{name}");
        assert_eq!(classify_result(&r, &s).verdict, Verdict::Degenerate);
    }
}

#[test]
fn cylinder_image_is_a_circle_of_rank_one() {
    let s = Settings::default();
    let r = laplace_map(&gen("cylinder", "a=2"), &s).unwrap();
    for p in r.fields.interior() {
        assert!((norm(r.l.point(p)) - 0.5).abs() < 1e-6);
    }
    let rp = rank_profile(&r);
    assert!(rp.constant && rp.rank == 1, "{rp:?}");
    let fit = laplace_image_fit(&r, &s).unwrap();
    assert_eq!(fit.best, Some(Primitive::Circle));
}

#[test]
fn closed_forms_agree() {
    let s = Settings::default();
    for name in ["cone", "tangential_developable", "cylinder", "torus_revolution", "revolution", "ruled", "catenoid"] {
        let c = closed_form_laplace(name, &Params::default(), &[], &s).unwrap();
        assert!(c.deviation < 1e-3, "{name}: {}", c.deviation);
    }
    let c = closed_form_laplace("cone", &Params::parse("c=0.8,t_min=1,t_max=2").unwrap(), &[], &s).unwrap();
    let p = c.result.l.grid().flat([0, 0]);
    let l = c.result.l.point(p);
    assert!((l[0] - 0.45).abs() < 1e-12 && l[1].abs() < 1e-12 && (l[2] + 0.6).abs() < 1e-12, "{l:?}");
    assert!(matches!(closed_form_laplace("ellipsoid", &Params::default(), &[], &s), Err(GeoError::NoClosedForm(_))));
    assert!(closed_form_laplace("cone", &Params::parse("t_min=0").unwrap(), &[], &s).is_err());
}

#[test]
fn classifier_verdicts() {
    let s = Settings::default();
    let rep = classify_transformation(&gen("clifford_torus_s3", ""), &s).unwrap();
    assert_eq!(rep.verdict, Verdict::Homothetic);
    assert!((rep.constants["c"] - 2.0).abs() < 1e-4, "{:?}", rep.constants);
    let rep = classify_transformation(&gen("torus_revolution", ""), &s).unwrap();
    assert_eq!(rep.verdict, Verdict::None);
    assert!(rep.residuals["anisotropy"].sup > 10.0 * s.tol.const_tol);
    let rep = classify_transformation(&gen("conformal_lt", ""), &s).unwrap();
    assert_eq!(rep.verdict, Verdict::Conformal, "{:?}", rep.residuals);
    for name in ["surface_e5_prop34", "helix_product_e6", "surface_e6_prop23"] {
        let rep = classify_transformation(&gen(name, ""), &s).unwrap();
        assert!(rep.verdict.is_homothetic(), "{name}: {:?} {:?}", rep.verdict, rep.residuals);
    }
}

#[test]
fn scaling_law() {
    let s = Settings::default();
    for (name, p) in [("sphere", "r=1"), ("torus_revolution", ""), ("cone", "")] {
        let a = laplace_map(&gen_at(name, p, &[32, 64]), &s).unwrap();
        let b = laplace_map(&gen_at(name, p, &[32, 64]).scaled(2.0), &s).unwrap();
        for (x, y) in a.l.points().iter().zip(b.l.points()) {
            assert!((0.5 * x - y).abs() <= 1e-12 * (1.0 + x.abs()), "{name}");
        }
    }
}

#[test]
fn conformal_conditions() {
    let s = Settings::default();
    let r = conformal_surface_report_e3(&gen("conformal_lt", ""), &s).unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.gradient_region > 0.5);
    let r = conformal_surface_report_e3(&gen("sphere", ""), &s).unwrap();
    assert!(r.holds, "{r:?}");
    let r = conformal_surface_report_e3(&gen("cylinder", "a=2"), &s).unwrap();
    assert!(!r.gauss.holds);
    assert!((r.gauss_abs_sup - 1.0 / 16.0).abs() < 1e-6, "{r:?}");
    assert!(!conformal_surface_report_e3(&gen("torus_revolution", ""), &s).unwrap().holds);
}

#[test]
fn biharmonic_and_harmonic_mean_curvature() {
    let s = Settings::default();
    assert!(biharmonic_residual(&gen("plane", ""), &s).unwrap().residual.holds);
    assert!(biharmonic_residual(&gen("helicoid", ""), &s).unwrap().residual.holds);
    let b = biharmonic_residual(&gen("sphere", "r=2"), &s).unwrap();
    assert!(!b.residual.holds && (b.residual.mean - 0.5).abs() < 1e-3, "{:?}", b.residual);

    for name in ["cylinder", "cornu_cylinder", "harmonic_cone", "harmonic_mc"] {
        let h = harmonic_mean_curvature_residual(&gen(name, ""), &s).unwrap();
        assert!(h.residual.holds, "{name}: {:?}", h.residual);
    }
    let h = harmonic_mean_curvature_residual(&gen("torus_revolution", ""), &s).unwrap();
    assert!(h.residual.sup > 10.0 * h.residual.threshold, "{:?}", h.residual);
}

#[test]
fn spherical_laplace_maps() {
    let s = Settings::default();
    let r = spherical_laplace(&gen("sphere", ""), &s).unwrap();
    assert!(r.harmonic && r.containment.holds && r.energy_constant);
    assert!((r.radius - 2.0).abs() < 1e-4);
    let r = spherical_laplace(&gen("clifford_torus_s3", ""), &s).unwrap();
    assert!(r.harmonic && r.energy_constant, "{:?}", r.tension);
    assert!((r.energy_mean - 4.0).abs() < 1e-4, "{}", r.energy_mean);
    let r = spherical_laplace(&gen("cylinder", ""), &s).unwrap();
    assert!(r.containment.holds);
    assert!(matches!(spherical_laplace(&gen("torus_revolution", ""), &s), Err(GeoError::NonConstantMeanCurvature { .. })));
}

#[test]
fn lg_metrics() {
    let s = Settings::default();
    let r = lg_hypersurface(&gen("sphere", ""), &s).unwrap();
    assert!(r.verdict.is_homothetic() && (r.ratio - 4.0).abs() < 1e-4, "{r:?}");
    assert!(r.pullback_defect < 1e-3, "{}", r.pullback_defect);
    let r = lg_hypersurface(&gen("unduloid", ""), &s).unwrap();
    assert!(r.verdict.is_homothetic(), "{r:?}");
    assert!(r.pullback_defect < 1e-3, "{}", r.pullback_defect);
    let r = lg_hypersurface(&gen("lg_homothetic_cylinder", "c=2"), &s).unwrap();
    assert!(r.verdict.is_homothetic() && (r.ratio - 4.0).abs() < 1e-3, "{r:?}");
    let r = lg_hypersurface(&gen("clifford_torus_s3", ""), &s).unwrap();
    assert!(r.verdict.is_conformal() && (r.ratio - 2.0).abs() < 1e-4, "{r:?}");
    assert!(r.pullback_defect < 1e-3, "{}", r.pullback_defect);
    let r = lg_hypersurface(&gen("torus_revolution", ""), &s).unwrap();
    assert!(!r.verdict.is_conformal(), "{r:?}");
    assert!(matches!(lg_hypersurface(&gen("plane", ""), &s), Err(GeoError::GaussMapDegenerate { .. })));
}

#[test]
fn image_containment() {
    let s = Settings::default();
    let pts = |name: &str, p: &str| {
        let c = closed_form_laplace(name, &Params::parse(p).unwrap(), &[], &s).unwrap();
        let fit = laplace_image_fit(&c.result, &s).unwrap();
        (fit, c)
    };
    let (fit, _) = pts("revolution_laplace_in_plane", "");
    let plane = fit.get(Primitive::Plane).unwrap();
    assert!(plane.residual < 1e-6, "{plane:?}");
    assert!((plane.center[0] + 0.3).abs() < 1e-6);
    let (fit, _) = pts("revolution_laplace_in_cylinder", "");
    let cyl = fit.get(Primitive::Cylinder).unwrap();
    assert!(cyl.residual < 1e-3 && (cyl.radius.unwrap() - 0.5).abs() < 1e-3, "{cyl:?}");
    let (fit, _) = pts("cone", "");
    let cone = fit.get(Primitive::ConeAtOrigin).unwrap();
    assert!(cone.residual < 1e-3, "{cone:?}");
    let (fit, _) = pts("laplace_in_sphere", "");
    let sph = fit.get(Primitive::Sphere).unwrap();
    assert!(sph.residual < 1e-3, "{sph:?}");
    assert!((norm(&sph.center) - sph.radius.unwrap()).abs() < 1e-3, "{sph:?}");

    let fd = laplace_map(&gen("laplace_in_sphere", ""), &s).unwrap();
    let sph = laplace_image_fit(&fd, &s).unwrap();
    assert!(sph.get(Primitive::Sphere).unwrap().residual < 1e-3);
}

#[test]
fn totally_real() {
    let s = Settings::default();
    let t = totally_real_check(&gen("torus_e4", ""), &s).unwrap();
    assert!(t.totally_real_immersion && t.totally_real_laplace && !t.laplace_degenerate, "{t:?}");
    let t = totally_real_check(&gen("complex_curve_z2", ""), &s).unwrap();
    assert!(!t.totally_real_immersion && t.laplace_degenerate);
    let g = crate::grid::Grid::surface(
        crate::grid::Axis::new(32, -1.0, 1.0, false).unwrap(),
        crate::grid::Axis::new(32, -1.0, 1.0, false).unwrap(),
    )
    .unwrap();
    let real_plane = SampledImmersion::from_fn(g, 4, "real plane", |p| vec![p[0], 0.0, p[1], 0.0]).unwrap();
    let t = totally_real_check(&real_plane, &s).unwrap();
    assert!(t.totally_real_immersion && t.laplace_degenerate);
    let t = totally_real_check(&gen("plane", "m=4"), &s).unwrap();
    assert!(!t.totally_real_immersion);
    assert!(matches!(totally_real_check(&gen("sphere", ""), &s), Err(GeoError::OddAmbientDim { m: 3 })));
}

#[test]
fn constant_alpha_containment() {
    let s = Settings::default();
    for name in ["sphere", "cylinder", "unduloid", "clifford_torus_s3", "surface_e5_prop34"] {
        let r = laplace_map(&gen(name, ""), &s).unwrap();
        let int = r.fields.interior();
        let a: Vec<f64> = int.iter().map(|&p| r.fields.alpha[p]).collect();
        let (mean, sd) = mean_std(&a);
        assert!(sd / mean <= s.tol.const_tol, "{name}: {}", sd / mean);
        for &p in &int {
            assert!((norm(r.l.point(p)) - 2.0 * mean).abs() <= 3.0 * s.tol.const_tol * 2.0 * mean, "{name}");
        }
    }
}
