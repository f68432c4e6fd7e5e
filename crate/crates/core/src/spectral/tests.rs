use super::*;
use crate::generators::{generate, Params};
use crate::tol::Tolerances;

fn curve(name: &str, params: &str, counts: &[usize]) -> SampledImmersion<f64> {
    generate(name, &Params::parse(params).unwrap(), counts, &Tolerances::default()).unwrap().immersion
}

fn settings() -> Settings {
    Settings::default()
}

#[test]
fn circle_is_one_type() {
    let d = decompose_closed_curve(&curve("circle", "", &[]), &settings()).unwrap();
    assert_eq!(d.k_type, KType::Finite(1));
    assert_eq!(d.type_set, vec![1]);
    assert_eq!(d.order, Some([1, 1]));
    assert!((d.components[0].lambda - 1.0).abs() < 1e-12);
    assert!(d.closure < 1e-12);
}

#[test]
fn gamma_eps_is_two_type_of_order_one_three() {
    let c = curve("gamma_eps", "eps=6", &[]);
    let d = decompose_closed_curve(&c, &settings()).unwrap();
    assert_eq!(d.k_type, KType::Finite(2));
    assert_eq!(d.type_set, vec![1, 3]);
    assert_eq!(d.order, Some([1, 3]));
    let mean: f64 = d.mean.iter().map(|v| v.abs()).sum();
    assert!(mean < 1e-12);
    // components are L² orthogonal
    let comps = d.eigencomponents();
    let w = TAU / c.len() as f64;
    let ip: f64 = comps[0].values.iter().zip(&comps[1].values).map(|(a, b)| a * b * w).sum();
    assert!(ip.abs() < 1e-10);
}

#[test]
fn ellipse_is_of_infinite_type() {
    let c = curve("ellipse_unit_speed", "a=2,b=1", &[]);
    let d = decompose_closed_curve(&c, &settings()).unwrap();
    assert_eq!(d.k_type, KType::Infinite, "type set {:?}", d.type_set);
    let json = crate::report::to_canonical_json(&d).unwrap();
    assert!(json.contains("\"k_type\": \"infinite\""));
}

#[test]
fn open_or_slow_curves_are_rejected() {
    let line = curve("line", "", &[]);
    assert!(matches!(decompose_closed_curve(&line, &settings()), Err(GeoError::NotClosed)));
    let c = curve("circle", "r=2", &[]).scaled(0.5);
    assert!(matches!(decompose_closed_curve(&c, &settings()), Err(GeoError::NotUnitSpeed { .. })));
    let e = curve("ellipse", "a=2,b=1", &[128]);
    let (u, resampled) = unit_speed_closed_curve(&e, &settings()).unwrap();
    assert!(resampled);
    assert_eq!(decompose_closed_curve(&u, &settings()).unwrap().k_type, KType::Infinite);
}

#[test]
fn minimal_polynomials() {
    let s = settings();
    let p = minimal_polynomial_fit(&curve("circle", "r=2", &[]), 6, &s).unwrap();
    assert_eq!(p.degree, 1);
    assert!((p.coefficients[0] + 0.25).abs() < 1e-10);

    let p = minimal_polynomial_fit(&curve("gamma_eps", "eps=6", &[]), 6, &s).unwrap();
    assert_eq!(p.degree, 2);
    assert!(p.terminating);
    let r = p.real_roots();
    assert!((r[0] - 1.0).abs() < 1e-6 && (r[1] - 9.0).abs() < 1e-6, "{r:?}");

    let p = minimal_polynomial_fit(&curve("ellipse_unit_speed", "a=2,b=1", &[]), 8, &s).unwrap();
    assert!(!p.terminating);
    assert_eq!(p.degree, 8);
    assert!(p.residual > 1e3 * s.tol.poly_tol, "{}", p.residual);
}

#[test]
fn companion_roots_for_higher_degree() {
    // (t−1)(t−4)(t−9)
    let r = polynomial::roots_of(&[-14.0, 49.0, -36.0]);
    for (got, want) in r.iter().zip([1.0, 4.0, 9.0]) {
        assert!((got[0] - want).abs() < 1e-9 && got[1].abs() < 1e-9);
    }
}

#[test]
fn linear_fits() {
    let s = settings();
    let f = linear_fit_ax_b(&curve("circle", "", &[]), &s).unwrap();
    assert!(f.linearly_independent);
    assert!((f.a[0][0] - 1.0).abs() < 1e-6 && (f.a[1][1] - 1.0).abs() < 1e-6 && f.a[0][1].abs() < 1e-6);
    assert!(f.b.iter().all(|v| v.abs() < 1e-6));

    let f = linear_fit_ax_b(&curve("cylinder", "a=1", &[]), &s).unwrap();
    assert!(f.linearly_independent, "{}", f.residual);
    let want = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]];
    for i in 0..3 {
        for j in 0..3 {
            assert!((f.a[i][j] - want[i][j]).abs() < 1e-4, "A = {:?}", f.a);
        }
        assert!(f.b[i].abs() < 1e-4);
    }

    let f = linear_fit_ax_b(&curve("ellipsoid", "", &[]), &s).unwrap();
    assert!(!f.linearly_independent);
    assert!(f.residual > 10.0 * s.tol.fit_tol * f.laplacian_norm);
}

#[test]
fn conjugates() {
    let s = settings();
    let d = decompose_closed_curve(&curve("two_circle_diagonal", "", &[]), &s).unwrap();
    let c = conjugate_2type(&d, &s).unwrap();
    assert!(c.unit_speed, "{}", c.speed_deviation);

    let d = decompose_closed_curve(&curve("gamma_eps", "eps=6", &[]), &s).unwrap();
    let c = conjugate_2type(&d, &s).unwrap();
    let (lo, hi) = c.speed.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(!c.unit_speed && hi - lo > 1e-3);

    let d = decompose_closed_curve(&curve("circle", "", &[]), &s).unwrap();
    assert!(matches!(conjugate_2type(&d, &s), Err(GeoError::Not2Type { .. })));
}

#[test]
fn orthogonality() {
    let s = settings();
    let d = decompose_closed_curve(&curve("two_circle_diagonal", "", &[]), &s).unwrap();
    let r = orthogonality_report(&d, &s).unwrap();
    assert!(r.orthogonal && r.linearly_independent && r.pointwise_orthogonal && r.strongly_pointwise_orthogonal);

    let d = decompose_closed_curve(&curve("gamma_eps", "eps=6", &[]), &s).unwrap();
    let r = orthogonality_report(&d, &s).unwrap();
    assert_eq!(r.dim_sum, 4);
    assert_eq!(r.span_dim, 3);
    assert!(!r.linearly_independent);

    let t = decompose_flat_torus(&curve("flat_torus_e6", "a=0.8", &[]), &s).unwrap();
    assert_eq!(t.k_type, KType::Finite(2));
    let b2 = 1.0 - 0.64;
    assert!((t.components[0].lambda - 1.0).abs() < 1e-9);
    assert!((t.components[1].lambda - (1.0 + 1.0 / b2)).abs() < 1e-9);
    let r = orthogonality_report(&t, &s).unwrap();
    assert!(r.pointwise_orthogonal && r.linearly_independent, "{r:?}");
}

#[test]
fn non_flat_torus_is_rejected() {
    let s = settings();
    let t = curve("torus_revolution", "", &[]);
    assert!(matches!(decompose_flat_torus(&t, &s), Err(GeoError::NotFlat)));
}

#[test]
fn dual_and_null() {
    assert!(dual_2type_check(-2.0, 2.0).dual);
    let c = dual_2type_check(1.0, 9.0);
    assert!(!c.dual && !c.null_2type);
    let c = dual_2type_check(0.0, 4.0);
    assert!(!c.dual && c.null_2type);
}

#[test]
fn two_type_invariants_match_the_sampled_torus() {
    let (a, b) = (0.8f64, 0.6f64);
    let inv = spherical_2type_invariants(1.0 / (a * a), 1.0 / (b * b), 2).unwrap();
    assert!((inv.alpha2 - 1.0 / (4.0 * a * a * b * b)).abs() < 1e-12);
    assert!(inv.tau.abs() < 1e-12);
    assert!((inv.h2 - (1.0 / (a * a) + 1.0 / (b * b))).abs() < 1e-12);
    let torus = curve("torus_e4", "a=0.8,b=0.6", &[]);
    let f = crate::geometry::mean_curvature_vector(&torus, &settings()).unwrap();
    let h2 = f.alpha.iter().map(|v| v * v).sum::<f64>() / f.alpha.len() as f64;
    assert!((h2 - inv.alpha2).abs() < 1e-6, "{h2} vs {}", inv.alpha2);
    assert!(matches!(spherical_2type_invariants(2.0, 1.0, 2), Err(GeoError::BadOrder)));
}
