use lapgeo::frenet::{frenet, homothety_functional};
use lapgeo::generators::{generate, Params};
use lapgeo::laplace::laplace_map;
use lapgeo::spectral::decompose_closed_curve;
use lapgeo::{Immersion, Settings, Tolerances};
use proptest::prelude::*;

fn gen(name: &str, p: &str, counts: &[usize]) -> Immersion {
    generate(name, &Params::parse(p).unwrap(), counts, &Tolerances::default()).unwrap().immersion
}

/// Rotation about a unit axis (Rodrigues), row-major.
fn rotation(axis: [f64; 3], angle: f64) -> Vec<f64> {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [x, y, z] = axis.map(|v| v / n);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    vec![
        t * x * x + c,
        t * x * y - s * z,
        t * x * z + s * y,
        t * x * y + s * z,
        t * y * y + c,
        t * y * z - s * x,
        t * x * z - s * y,
        t * y * z + s * x,
        t * z * z + c,
    ]
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, 0.2..1.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn laplace_map_scales_inversely(c in 0.25..4.0f64, pick in 0usize..3) {
        let s = Settings::default();
        let x = match pick {
            0 => gen("sphere", "", &[32, 64]),
            1 => gen("torus_revolution", "", &[48, 48]),
            _ => gen("helix", "", &[256]),
        };
        let a = laplace_map(&x, &s).unwrap();
        let b = laplace_map(&x.scaled(c), &s).unwrap();
        let size = a.sup_norm.max(1.0);
        for (u, v) in a.l.points().iter().zip(b.l.points()) {
            prop_assert!((u / c - v).abs() <= 1e-11 * size);
        }
    }

    #[test]
    fn homothety_constant_is_congruence_invariant(ax in axis(), angle in -3.0..3.0f64, b in prop::array::uniform3(-5.0..5.0f64)) {
        let s = Settings::default();
        let x = gen("helix", "", &[512]);
        let y = x.transformed(&rotation(ax, angle), &b);
        let hx = homothety_functional(&frenet(&x, 2, &s).unwrap(), &s);
        let hy = homothety_functional(&frenet(&y, 2, &s).unwrap(), &s);
        prop_assert_eq!(hx.verdict.holds, hy.verdict.holds);
        prop_assert!((hx.c - hy.c).abs() <= 1e-8 * hx.c.abs().max(1.0));
    }

    #[test]
    fn type_set_is_congruence_invariant(ax in axis(), angle in -3.0..3.0f64, b in prop::array::uniform3(-5.0..5.0f64)) {
        let s = Settings::default();
        let x = gen("gamma_eps", "eps=6", &[]);
        let y = x.transformed(&rotation(ax, angle), &b);
        let dx = decompose_closed_curve(&x, &s).unwrap();
        let dy = decompose_closed_curve(&y, &s).unwrap();
        prop_assert_eq!(dx.type_set, dy.type_set);
        prop_assert_eq!(dx.k_type, dy.k_type);
    }
}
