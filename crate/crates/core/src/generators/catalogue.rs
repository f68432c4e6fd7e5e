//! Catalogue entries. Every builder returns the sampled immersion and, where one is known,
//! the Laplace map evaluated analytically on the same grid.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use serde::Serialize;

use super::ode::{self, CurvatureLaw, ProfileLaw};
use super::params::{choice, int, num, ParamSpec, Resolved};
use crate::error::{GeoError, Result};
use crate::fourier::RealSeries;
use crate::grid::{Axis, Grid};
use crate::immersion::SampledImmersion;
use crate::scalar::cross3;
use crate::tol::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Analytic,
    Quadrature,
    CurvatureOde,
    FrenetOde,
    SphericalOde,
    ProfileOde,
}

/// Integration diagnostics of ODE-driven entries.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OdeDiagnostics {
    /// Relative endpoint change under step halving.
    pub richardson: f64,
    /// Observed convergence order, when measured.
    pub order: Option<f64>,
    /// End of the surviving range if integration stopped early.
    pub truncated_at: Option<f64>,
}

pub struct Generated {
    pub immersion: SampledImmersion<f64>,
    /// Analytic Laplace map, flat m-vector field on the same grid.
    pub laplace: Option<Vec<f64>>,
    pub ode: Option<OdeDiagnostics>,
}

pub type Builder = fn(&Resolved, &[usize], &Tolerances, &str) -> Result<Generated>;

pub struct GeneratorEntry {
    pub name: &'static str,
    pub intrinsic_dim: usize,
    pub ambient_dim: usize,
    pub params: &'static [ParamSpec],
    pub default_grid: &'static [usize],
    pub domain: &'static str,
    pub construction: Construction,
    pub provenance: &'static str,
    pub build: Builder,
}

const STEP: f64 = 1e-3;

fn check_dims(counts: &[usize], n: usize) -> Result<()> {
    if counts.len() != n {
        return Err(GeoError::Input(format!("grid needs {n} sample count(s), got {}", counts.len())));
    }
    Ok(())
}

fn curve_grid(counts: &[usize], a: f64, b: f64, periodic: bool) -> Result<Grid<f64>> {
    check_dims(counts, 1)?;
    Grid::curve(counts[0], a, b, periodic)
}

fn surface_grid(counts: &[usize], a0: (f64, f64, bool), a1: (f64, f64, bool)) -> Result<Grid<f64>> {
    check_dims(counts, 2)?;
    Grid::surface(Axis::new(counts[0], a0.0, a0.1, a0.2)?, Axis::new(counts[1], a1.0, a1.1, a1.2)?)
}

/// Samples `f(params) -> (x, L)` over the grid.
fn analytic<F>(grid: Grid<f64>, m: usize, label: &str, f: F) -> Result<Generated>
where
    F: Fn(&[f64]) -> (Vec<f64>, Vec<f64>),
{
    let mut points = Vec::with_capacity(grid.len() * m);
    let mut lap = Vec::with_capacity(grid.len() * m);
    for i in 0..grid.len() {
        let (x, l) = f(&grid.params(i));
        debug_assert_eq!(x.len(), m);
        points.extend(x);
        lap.extend(l);
    }
    Ok(Generated { immersion: SampledImmersion::new(grid, m, points, label)?, laplace: Some(lap), ode: None })
}

fn singular_offset(r: &Resolved) -> Result<(f64, f64)> {
    let (a, b) = (r.f("t_min"), r.f("t_max"));
    if a <= 0.0 {
        return Err(GeoError::SingularDomain(format!("t_min = {a} reaches the singular locus t = 0")));
    }
    if b <= a {
        return Err(GeoError::ParamOutOfRange { name: "t_max".into(), reason: "must exceed t_min".into() });
    }
    Ok((a, b))
}

/// `L = −γ''` for a unit-speed plane curve with turning angle θ and curvature κ.
fn plane_curve_laplace(kappa: f64, theta: f64) -> [f64; 2] {
    [kappa * theta.sin(), -kappa * theta.cos()]
}

fn with_axis_start(c: SampledImmersion<f64>, start: f64) -> Result<SampledImmersion<f64>> {
    let ax = c.grid().axis(0);
    let len = ax.end - ax.start;
    let grid = Grid::curve(ax.count, start, start + len, ax.periodic)?;
    let label = c.label.clone();
    SampledImmersion::new(grid, c.ambient_dim(), c.points().to_vec(), label)
}

/// Newton inversion of a monotone arclength function.
fn invert_arclength<S, V>(s_of: S, speed: V, target: f64, guess: f64) -> f64
where
    S: Fn(f64) -> f64,
    V: Fn(f64) -> f64,
{
    let mut u = guess;
    for _ in 0..60 {
        let du = (s_of(u) - target) / speed(u);
        u -= du;
        if du.abs() < 1e-15 * (1.0 + u.abs()) {
            break;
        }
    }
    u
}

/// `Δx` of a regular (not necessarily unit-speed) plane curve from `x'`, `x''` in its parameter.
fn curve_laplace_from_parameter(d1: &[f64], d2: &[f64]) -> Vec<f64> {
    let v2: f64 = d1.iter().map(|a| a * a).sum();
    let vv: f64 = d1.iter().zip(d2).map(|(a, b)| a * b).sum();
    d1.iter().zip(d2).map(|(a, b)| -b / v2 + a * vv / (v2 * v2)).collect()
}

// ---------------------------------------------------------------- curves

fn line(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let grid = curve_grid(c, 0.0, r.f("length"), false)?;
    let d = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
    analytic(grid, 3, label, |p| (d.iter().map(|v| v * p[0]).collect(), vec![0.0; 3]))
}

fn circle(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let rad = r.f("r");
    let grid = curve_grid(c, 0.0, TAU * rad, true)?;
    analytic(grid, 2, label, |p| {
        let (s, co) = (p[0] / rad).sin_cos();
        (vec![rad * co, rad * s], vec![co / rad, s / rad])
    })
}

fn helix_point(a: f64, b: f64, s: f64) -> ([f64; 3], [f64; 3]) {
    let c2 = a * a + b * b;
    let w = s / c2.sqrt();
    let (sn, cs) = w.sin_cos();
    ([a * cs, a * sn, b * w], [a * cs / c2, a * sn / c2, 0.0])
}

fn helix(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b) = (r.f("a"), r.f("b"));
    let grid = curve_grid(c, 0.0, r.f("length"), false)?;
    analytic(grid, 3, label, |p| {
        let (x, l) = helix_point(a, b, p[0]);
        (x.to_vec(), l.to_vec())
    })
}

fn w_curve(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, p, q) = (r.f("a"), r.f("p"), r.f("q"));
    let rest = 1.0 - a * a * p * p;
    if rest <= 0.0 {
        return Err(GeoError::ParamOutOfRange { name: "a".into(), reason: "needs a·p < 1 for unit speed".into() });
    }
    let b = rest.sqrt() / q;
    let grid = curve_grid(c, 0.0, r.f("length"), false)?;
    analytic(grid, 4, label, |s| {
        let (s1, c1) = (p * s[0]).sin_cos();
        let (s2, c2) = (q * s[0]).sin_cos();
        (
            vec![a * c1, a * s1, b * c2, b * s2],
            vec![a * p * p * c1, a * p * p * s1, b * q * q * c2, b * q * q * s2],
        )
    })
}

fn two_circle_diagonal(_r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let grid = curve_grid(c, 0.0, TAU, true)?;
    let k = FRAC_1_SQRT_2;
    analytic(grid, 4, label, |p| {
        let s = p[0];
        let (s1, c1) = s.sin_cos();
        let (s2, c2) = (2.0 * s).sin_cos();
        (vec![k * c1, k * s1, 0.5 * k * c2, 0.5 * k * s2], vec![k * c1, k * s1, 2.0 * k * c2, 2.0 * k * s2])
    })
}

fn gamma_eps(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let e = r.f("eps");
    let k = 12.0 / (e * e + 36.0);
    let e12 = e * e / 12.0;
    let grid = curve_grid(c, 0.0, TAU, true)?;
    analytic(grid, 3, label, |p| {
        let s = p[0];
        let (s1, c1) = s.sin_cos();
        let (s3, c3) = (3.0 * s).sin_cos();
        (
            vec![k * e * s1, k * (-e12 * c1 + c3), k * (-e12 * s1 + s3)],
            vec![k * e * s1, k * (-e12 * c1 + 9.0 * c3), k * (-e12 * s1 + 9.0 * s3)],
        )
    })
}

fn ellipse(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b) = (r.f("a"), r.f("b"));
    let grid = curve_grid(c, 0.0, TAU, true)?;
    analytic(grid, 2, label, |p| {
        let (s, co) = p[0].sin_cos();
        let l = curve_laplace_from_parameter(&[-a * s, b * co], &[-a * co, -b * s]);
        (vec![a * co, b * s], l)
    })
}

fn ellipse_unit_speed(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b) = (r.f("a"), r.f("b"));
    let speed = |u: f64| (a * a * u.sin().powi(2) + b * b * u.cos().powi(2)).sqrt();
    let dense: Vec<f64> = (0..2048).map(|i| speed(TAU * i as f64 / 2048.0)).collect();
    let series = RealSeries::fit(&dense, 0.0, TAU);
    let s_of = |u: f64| series.a0 * u + series.primitive(u) - series.primitive(0.0);
    let total = series.a0 * TAU;
    let grid = curve_grid(c, 0.0, total, true)?;
    analytic(grid, 2, label, |p| {
        let u = invert_arclength(s_of, speed, p[0], p[0] / series.a0);
        let (s, co) = u.sin_cos();
        let l = curve_laplace_from_parameter(&[-a * s, b * co], &[-a * co, -b * s]);
        (vec![a * co, b * s], l)
    })
}

fn parabola(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let w = r.f("half_width");
    let s_of = |u: f64| 0.5 * u * (1.0 + 4.0 * u * u).sqrt() + 0.25 * (2.0 * u).asinh();
    let speed = |u: f64| (1.0 + 4.0 * u * u).sqrt();
    let grid = curve_grid(c, s_of(-w), s_of(w), false)?;
    analytic(grid, 2, label, |p| {
        let u = invert_arclength(s_of, speed, p[0], p[0]);
        let l = curve_laplace_from_parameter(&[1.0, 2.0 * u], &[0.0, 2.0]);
        (vec![u, u * u], l)
    })
}

fn cornu_parts(r: &Resolved, c: &[usize], label: &str) -> Result<(SampledImmersion<f64>, Vec<[f64; 2]>)> {
    check_dims(c, 1)?;
    let (a, b, s0, len) = (r.f("a"), r.f("b"), r.f("s0"), r.f("length"));
    let kappa = move |sig: f64| a * (s0 + sig) + b;
    let curve = ode::curve_from_curvature(kappa, 0.0, [0.0, 0.0], len, c[0], STEP, false, label)?;
    let curve = with_axis_start(curve, s0)?;
    let lap = curve
        .grid()
        .axis(0)
        .coords()
        .iter()
        .map(|&s| {
            let sig = s - s0;
            let theta = a * (s0 * sig + 0.5 * sig * sig) + b * sig;
            plane_curve_laplace(a * s + b, theta)
        })
        .collect();
    Ok((curve, lap))
}

fn cornu_spiral(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (curve, lap) = cornu_parts(r, c, label)?;
    Ok(Generated { immersion: curve, laplace: Some(lap.into_iter().flatten().collect()), ode: None })
}

fn from_law(
    law: CurvatureLaw,
    k0: f64,
    dk0: f64,
    r: &Resolved,
    c: &[usize],
    t: &Tolerances,
    label: &str,
) -> Result<Generated> {
    check_dims(c, 1)?;
    let pc = ode::solve_curvature_law(law, k0, dk0, r.f("length"), c[0], STEP, t.ode_tol, label)?;
    let lap = pc.kappa.iter().flat_map(|k| plane_curve_laplace(k[0], k[2])).collect();
    Ok(Generated {
        immersion: pc.curve,
        laplace: Some(lap),
        ode: Some(OdeDiagnostics { richardson: pc.richardson, order: None, truncated_at: pc.truncated_at }),
    })
}

fn homothetic_plane_curve(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, cc) = (r.f("a"), r.f("c"));
    let k4 = cc * cc / (1.0 + cc * cc * a);
    let dk = (cc * cc - k4).max(0.0).sqrt();
    from_law(CurvatureLaw::HarmonicLt, k4.powf(0.25), dk, r, c, t, label)
}

fn harmonic_lt_curve(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    from_law(CurvatureLaw::HarmonicLt, r.f("k0"), r.f("dk0"), r, c, t, label)
}

fn laplace_line_curve(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    from_law(CurvatureLaw::LaplaceLine, r.f("k0"), r.f("dk0"), r, c, t, label)
}

fn lg_homothetic_parts(r: &Resolved) -> Result<(CurvatureLaw, f64, f64)> {
    let (cc, k0) = (r.f("c"), r.f("k0"));
    if k0 > cc {
        return Err(GeoError::ParamOutOfRange { name: "k0".into(), reason: "must not exceed c".into() });
    }
    Ok((CurvatureLaw::LgHomothetic { c: cc }, k0, (cc * cc * k0 * k0 - k0.powi(4)).max(0.0).sqrt()))
}

fn lg_homothetic_curve(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    let (law, k0, dk0) = lg_homothetic_parts(r)?;
    from_law(law, k0, dk0, r, c, t, label)
}

fn laplace_in_circle_curve(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let cc = r.f("c");
    let half = 0.5 * r.f("length");
    let grid = curve_grid(c, -half, half, false)?;
    analytic(grid, 2, label, |p| {
        let w = 2.0 * p[0] + cc.ln();
        let sech = 1.0 / w.cosh();
        (
            vec![-0.5 * w.cosh().ln(), 0.5 * w.sinh().atan()],
            vec![2.0 * sech * sech, 2.0 * sech * w.tanh()],
        )
    })
}

fn laplace_line_helix(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    check_dims(c, 1)?;
    let (cc, len) = (r.f("c"), r.f("length"));
    let limit = 1.0 / (1.0 + cc * cc).sqrt();
    if len >= 0.95 * limit {
        return Err(GeoError::ParamOutOfRange {
            name: "length".into(),
            reason: format!("curvature blows up at s = {limit:.6}; use length < {:.6}", 0.95 * limit),
        });
    }
    let k1 = move |s: f64| 1.0 / (1.0 - (1.0 + cc * cc) * s * s).sqrt();
    let states = ode::frenet_curve(k1, move |s| cc * k1(s), len, c[0], STEP);
    let grid = curve_grid(c, 0.0, len, false)?;
    let coords = grid.axis(0).coords();
    let points = states.iter().flat_map(|y| [y[0], y[1], y[2]]).collect();
    let lap = states.iter().zip(&coords).flat_map(|(y, &s)| [-k1(s) * y[6], -k1(s) * y[7], -k1(s) * y[8]]).collect();
    Ok(Generated {
        immersion: SampledImmersion::new(grid, 3, points, label)?,
        laplace: Some(lap),
        ode: Some(OdeDiagnostics::default()),
    })
}

// ---------------------------------------------------------------- surfaces

fn plane(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let m = r.u("m");
    let grid = surface_grid(c, (-1.0, 1.0, false), (-1.0, 1.0, false))?;
    analytic(grid, m, label, |p| {
        let mut x = vec![0.0; m];
        x[0] = p[0];
        x[1] = p[1];
        (x, vec![0.0; m])
    })
}

fn sphere(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let rad = r.f("r");
    let grid = if r.s("chart") == "polar" {
        let th = r.f("theta_min");
        surface_grid(c, (th, PI - th, false), (0.0, TAU, true))?
    } else {
        check_dims(c, 2)?;
        let h = TAU / c[0] as f64;
        surface_grid(c, (0.5 * h, TAU + 0.5 * h, true), (0.0, TAU, true))?
    };
    analytic(grid, 3, label, |p| {
        let (st, ct) = p[0].sin_cos();
        let (sp, cp) = p[1].sin_cos();
        let x = vec![rad * st * cp, rad * st * sp, rad * ct];
        let l = x.iter().map(|v| 2.0 * v / (rad * rad)).collect();
        (x, l)
    })
}

fn cylinder(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, h) = (r.f("a"), r.f("height"));
    let grid = surface_grid(c, (0.0, TAU, true), (-0.5 * h, 0.5 * h, false))?;
    analytic(grid, 3, label, |p| {
        let (s, co) = p[0].sin_cos();
        (vec![a * co, a * s, p[1]], vec![co / a, s / a, 0.0])
    })
}

fn torus_revolution(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (big, small) = (r.f("R"), r.f("r"));
    if small >= big {
        return Err(GeoError::ParamOutOfRange { name: "r".into(), reason: "must be smaller than R".into() });
    }
    let grid = surface_grid(c, (0.0, TAU, true), (0.0, TAU, true))?;
    analytic(grid, 3, label, |p| {
        let (st, ct) = p[0].sin_cos();
        let (sp, cp) = p[1].sin_cos();
        let rho = big + small * cp;
        let nu = [cp * ct, cp * st, sp];
        let k = 1.0 / small + cp / rho;
        (vec![rho * ct, rho * st, small * sp], nu.iter().map(|v| k * v).collect())
    })
}

/// Surface `(t, f cos θ, f sin θ)` from profile samples `(f, f', f'')` at the t-nodes.
fn revolution_from_profile(profile: &[[f64; 3]], t0: f64, t1: f64, counts: &[usize], label: &str) -> Result<Generated> {
    let grid = surface_grid(counts, (t0, t1, false), (0.0, TAU, true))?;
    let n1 = counts[1];
    let mut points = Vec::with_capacity(grid.len() * 3);
    let mut lap = Vec::with_capacity(grid.len() * 3);
    for i in 0..grid.len() {
        let p = grid.params(i);
        let [f, df, ddf] = profile[i / n1];
        let (s, co) = p[1].sin_cos();
        points.extend([p[0], f * co, f * s]);
        let q = 1.0 + df * df;
        let phi = (q - f * ddf) / (f * q * q);
        lap.extend([-phi * df, phi * co, phi * s]);
    }
    Ok(Generated { immersion: SampledImmersion::new(grid, 3, points, label)?, laplace: Some(lap), ode: None })
}

fn analytic_profile<F>(t0: f64, t1: f64, counts: &[usize], f: F) -> Result<Vec<[f64; 3]>>
where
    F: Fn(f64) -> [f64; 3],
{
    check_dims(counts, 2)?;
    let ax = Axis::new(counts[0], t0, t1, false)?;
    Ok(ax.coords().into_iter().map(f).collect())
}

fn revolution(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b, len) = (r.f("a"), r.f("b"), r.f("length"));
    if b <= a {
        return Err(GeoError::ParamOutOfRange { name: "b".into(), reason: "profile b + a sin t must stay positive".into() });
    }
    let prof = analytic_profile(0.0, len, c, |t| [b + a * t.sin(), a * t.cos(), -a * t.sin()])?;
    revolution_from_profile(&prof, 0.0, len, c, label)
}

fn catenoid(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, h) = (r.f("a"), r.f("half_height"));
    let prof = analytic_profile(-h, h, c, |t| {
        let (ch, sh) = ((a * t).cosh(), (a * t).sinh());
        [ch / a, sh, a * ch]
    })?;
    let mut g = revolution_from_profile(&prof, -h, h, c, label)?;
    g.laplace = Some(vec![0.0; g.immersion.points().len()]);
    Ok(g)
}

fn helicoid(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (lambda, c3, len) = (r.f("lambda"), r.f("c3"), r.f("length"));
    let grid = surface_grid(c, (0.0, len, false), (-0.5, 0.5, false))?;
    analytic(grid, 3, label, |p| {
        let (s, co) = p[0].sin_cos();
        let u = lambda + p[1];
        (vec![u * co, u * s, c3 * p[0]], vec![0.0; 3])
    })
}

/// Cone `tβ(s)` from samples of `β` and `β + β''` on the s-axis.
fn cone_from(beta: &[[f64; 6]], s_axis: (f64, f64, bool), r: &Resolved, c: &[usize], label: &str) -> Result<Generated> {
    let (t0, t1) = singular_offset(r)?;
    let grid = surface_grid(c, (t0, t1, false), s_axis)?;
    let n1 = c[1];
    let mut points = Vec::with_capacity(grid.len() * 3);
    let mut lap = Vec::with_capacity(grid.len() * 3);
    for i in 0..grid.len() {
        let t = grid.params(i)[0];
        let b = &beta[i % n1];
        points.extend([t * b[0], t * b[1], t * b[2]]);
        lap.extend([-b[3] / t, -b[4] / t, -b[5] / t]);
    }
    Ok(Generated { immersion: SampledImmersion::new(grid, 3, points, label)?, laplace: Some(lap), ode: None })
}

fn harmonic_beta(r: &Resolved, c: &[usize]) -> Result<(Vec<[f64; 6]>, (f64, f64, bool))> {
    check_dims(c, 2)?;
    let (c1, c2, s0, s1) = (r.f("c1"), r.f("c2"), r.f("s_min"), r.f("s_max"));
    if s1 <= s0 {
        return Err(GeoError::ParamOutOfRange { name: "s_max".into(), reason: "must exceed s_min".into() });
    }
    let kg = move |s: f64| c1 * s.cos() + c2 * s.sin();
    let states = ode::spherical_curve(kg, s0, s1 - s0, c[1], STEP);
    let ax = Axis::new(c[1], s0, s1, false)?;
    let beta = states
        .iter()
        .zip(ax.coords())
        .map(|(y, s)| {
            let k = kg(s);
            [y[0], y[1], y[2], k * y[6], k * y[7], k * y[8]]
        })
        .collect();
    Ok((beta, (s0, s1, false)))
}

fn cone(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    check_dims(c, 2)?;
    if r.s("beta") == "harmonic" {
        let (beta, ax) = harmonic_beta(r, c)?;
        let mut g = cone_from(&beta, ax, r, c, label)?;
        g.ode = Some(OdeDiagnostics::default());
        return Ok(g);
    }
    let cc = r.f("c");
    let z = (1.0 - cc * cc).sqrt();
    let ax = Axis::new(c[1], 0.0, TAU * cc, true)?;
    let beta: Vec<[f64; 6]> = ax
        .coords()
        .into_iter()
        .map(|s| {
            let (sn, cs) = (s / cc).sin_cos();
            let k = cc - 1.0 / cc;
            [cc * cs, cc * sn, z, k * cs, k * sn, z]
        })
        .collect();
    cone_from(&beta, (0.0, TAU * cc, true), r, c, label)
}

fn harmonic_cone(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (beta, ax) = harmonic_beta(r, c)?;
    let mut g = cone_from(&beta, ax, r, c, label)?;
    g.ode = Some(OdeDiagnostics::default());
    Ok(g)
}

fn tangential_developable(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b, len) = (r.f("a"), r.f("b"), r.f("length"));
    let (t0, t1) = singular_offset(r)?;
    let c2 = a * a + b * b;
    let cr = c2.sqrt();
    let (k1, k2) = (a / c2, b / c2);
    let grid = surface_grid(c, (0.0, len, false), (t0, t1, false))?;
    analytic(grid, 3, label, |p| {
        let (s, t) = (p[0], p[1]);
        let (x, _) = helix_point(a, b, s);
        let w = s / cr;
        let (sn, cs) = w.sin_cos();
        let tan = [-a * sn / cr, a * cs / cr, b / cr];
        let nor = [-cs, -sn, 0.0];
        let bin = cross3(&tan, &nor);
        let k = -k2 / (t * k1);
        ((0..3).map(|i| x[i] + t * tan[i]).collect(), bin.iter().map(|v| k * v).collect())
    })
}

fn ruled(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (p, h, rr, len, w) = (r.f("p"), r.f("h"), r.f("r"), r.f("length"), r.f("half_width"));
    if h.abs() <= 2.0 * rr.abs() {
        return Err(GeoError::ParamOutOfRange { name: "h".into(), reason: "needs |h| > 2|r| for a regular surface".into() });
    }
    let grid = surface_grid(c, (0.0, len, false), (-w, w, false))?;
    analytic(grid, 3, label, |q| {
        let (s, t) = (q[0], q[1]);
        let (sn, cs) = s.sin_cos();
        let (s2, c2) = (2.0 * s).sin_cos();
        let al = [p * cs, p * sn, h * s + rr * s2];
        let d_al = [-p * sn, p * cs, h + 2.0 * rr * c2];
        let dd_al = [-p * cs, -p * sn, -4.0 * rr * s2];
        let be = [cs, sn, 0.0];
        let d_be = [-sn, cs, 0.0];
        let dd_be = [-cs, -sn, 0.0];
        let xs: Vec<f64> = (0..3).map(|i| d_al[i] + t * d_be[i]).collect();
        let xss: Vec<f64> = (0..3).map(|i| dd_al[i] + t * dd_be[i]).collect();
        let qq: f64 = xs.iter().map(|v| v * v).sum();
        let qs = 2.0 * xs.iter().zip(&xss).map(|(a, b)| a * b).sum::<f64>();
        let qt = 2.0 * xs.iter().zip(&d_be).map(|(a, b)| a * b).sum::<f64>();
        let lap = (0..3).map(|i| (-2.0 * qq * xss[i] + qs * xs[i] - qq * qt * be[i]) / (2.0 * qq * qq)).collect();
        ((0..3).map(|i| al[i] + t * be[i]).collect(), lap)
    })
}

fn profile_ode(law: ProfileLaw, seed: [f64; 3], r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    check_dims(c, 2)?;
    let (t0, t1) = (r.f("t_start"), r.f("t_end"));
    if t1 <= t0 {
        return Err(GeoError::ParamOutOfRange { name: "t_end".into(), reason: "must exceed t_start".into() });
    }
    let prof = ode::solve_profile(law, seed, (t0, t1), c[0], STEP, t.ode_tol)?;
    let mut g = revolution_from_profile(&prof.values, t0, t1, c, label)?;
    g.ode = Some(OdeDiagnostics { richardson: prof.richardson, order: Some(prof.order), truncated_at: None });
    Ok(g)
}

fn revolution_laplace_in_plane(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    let cc = r.f("c");
    if cc == 0.0 {
        let a = r.f("a");
        let (t0, t1) = (r.f("t_start"), r.f("t_end"));
        let prof = analytic_profile(t0, t1, c, |x| {
            let (ch, sh) = ((a * x).cosh(), (a * x).sinh());
            [ch / a, sh, a * ch]
        })?;
        let mut g = revolution_from_profile(&prof, t0, t1, c, label)?;
        g.laplace = Some(vec![0.0; g.immersion.points().len()]);
        return Ok(g);
    }
    if r.f("df0") == 0.0 {
        return Err(GeoError::ParamOutOfRange { name: "df0".into(), reason: "must be nonzero when c ≠ 0".into() });
    }
    profile_ode(ProfileLaw::LaplaceInPlane { c: cc }, [r.f("f0"), r.f("df0"), 0.0], r, c, t, label)
}

fn revolution_laplace_in_cylinder(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    profile_ode(ProfileLaw::LaplaceInCylinder { c: r.f("c") }, [r.f("f0"), r.f("df0"), 0.0], r, c, t, label)
}

fn laplace_in_sphere(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    profile_ode(ProfileLaw::LaplaceInSphere { r: r.f("r") }, [r.f("f0"), r.f("df0"), 0.0], r, c, t, label)
}

fn harmonic_mc(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    profile_ode(ProfileLaw::HarmonicMc { c: r.f("c") }, [r.f("f0"), r.f("df0"), r.f("ddf0")], r, c, t, label)
}

fn conformal_lt(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    profile_ode(ProfileLaw::ConformalLt, [r.f("f0"), r.f("df0"), r.f("ddf0")], r, c, t, label)
}

fn unduloid(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    profile_ode(ProfileLaw::ConstantMc { h: r.f("h") }, [r.f("f0"), 0.0, 0.0], r, c, t, label)
}

fn product_circles(a: f64, b: f64, c: &[usize], label: &str) -> Result<Generated> {
    let grid = surface_grid(c, (0.0, TAU * a, true), (0.0, TAU * b, true))?;
    analytic(grid, 4, label, |p| {
        let (s1, c1) = (p[0] / a).sin_cos();
        let (s2, c2) = (p[1] / b).sin_cos();
        (vec![a * c1, a * s1, b * c2, b * s2], vec![c1 / a, s1 / a, c2 / b, s2 / b])
    })
}

fn torus_e4(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    product_circles(r.f("a"), r.f("b"), c, label)
}

fn clifford_torus_s3(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let k = r.f("r") * FRAC_1_SQRT_2;
    product_circles(k, k, c, label)
}

fn flat_torus_e6(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let a = r.f("a");
    let b = (1.0 - a * a).sqrt();
    let grid = surface_grid(c, (0.0, TAU, true), (0.0, TAU * b, true))?;
    let lb = 1.0 + 1.0 / (b * b);
    analytic(grid, 6, label, |p| {
        let (ss, cs) = p[0].sin_cos();
        let (st, ct) = (p[1] / b).sin_cos();
        let x = vec![a * ss, b * ss * st, b * ss * ct, a * cs, b * cs * st, b * cs * ct];
        let l = vec![x[0], lb * x[1], lb * x[2], x[3], lb * x[4], lb * x[5]];
        (x, l)
    })
}

fn surface_e5_prop34(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b, len) = (r.f("a"), r.f("b"), r.f("length"));
    let guu = a * a + b.powi(4);
    let rad = guu.powf(0.75) / b;
    let grid = surface_grid(c, (0.0, len, false), (0.0, TAU, true))?;
    analytic(grid, 5, label, |p| {
        let (su, cu) = p[0].sin_cos();
        let (sv, cv) = p[1].sin_cos();
        let b2 = b * b;
        (
            vec![a * p[0], b2 * cu, b2 * su, rad * cv, rad * sv],
            vec![0.0, b2 * cu / guu, b2 * su / guu, cv / rad, sv / rad],
        )
    })
}

fn line_circle_product(a: f64, k: f64, len: f64, c: &[usize], label: &str) -> Result<Generated> {
    let grid = surface_grid(c, (0.0, len, false), (0.0, len, false))?;
    let d = a * a + k * k;
    analytic(grid, 6, label, |p| {
        let (su, cu) = p[0].sin_cos();
        let (sv, cv) = p[1].sin_cos();
        (
            vec![a * p[0], a * p[1], k * cu, k * su, k * cv, k * sv],
            vec![0.0, 0.0, k * cu / d, k * su / d, k * cv / d, k * sv / d],
        )
    })
}

fn helix_product_e6(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    line_circle_product(r.f("a"), r.f("c"), r.f("length"), c, label)
}

fn surface_e6_prop23(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    line_circle_product(r.f("a"), r.f("b"), r.f("length"), c, label)
}

fn complex_curve_z2(_r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let grid = surface_grid(c, (-1.0, 1.0, false), (-1.0, 1.0, false))?;
    analytic(grid, 4, label, |p| {
        let (u, v) = (p[0], p[1]);
        (vec![u, v, u * u - v * v, 2.0 * u * v], vec![0.0; 4])
    })
}

fn cornu_cylinder(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    check_dims(c, 2)?;
    let (curve, lap) = cornu_parts(r, &c[..1], label)?;
    let h = r.f("height");
    let ax0 = curve.grid().axis(0).clone();
    let grid = Grid::surface(ax0, Axis::new(c[1], -0.5 * h, 0.5 * h, false)?)?;
    extrude(curve, lap, grid, label)
}

fn extrude(curve: SampledImmersion<f64>, lap: Vec<[f64; 2]>, grid: Grid<f64>, label: &str) -> Result<Generated> {
    let n1 = grid.axis(1).count;
    let mut points = Vec::with_capacity(grid.len() * 3);
    let mut out = Vec::with_capacity(grid.len() * 3);
    for i in 0..grid.len() {
        let j = i / n1;
        let p = curve.point(j);
        points.extend([p[0], p[1], grid.params(i)[1]]);
        out.extend([lap[j][0], lap[j][1], 0.0]);
    }
    Ok(Generated { immersion: SampledImmersion::new(grid, 3, points, label)?, laplace: Some(out), ode: None })
}

fn lg_homothetic_cylinder(r: &Resolved, c: &[usize], t: &Tolerances, label: &str) -> Result<Generated> {
    check_dims(c, 2)?;
    let (law, k0, dk0) = lg_homothetic_parts(r)?;
    let pc = ode::solve_curvature_law(law, k0, dk0, r.f("length"), c[0], STEP, t.ode_tol, label)?;
    let lap = pc.kappa.iter().map(|k| plane_curve_laplace(k[0], k[2])).collect();
    let h = r.f("height");
    let ax0 = pc.curve.grid().axis(0).clone();
    let grid = Grid::surface(ax0, Axis::new(c[1], -0.5 * h, 0.5 * h, false)?)?;
    let mut g = extrude(pc.curve, lap, grid, label)?;
    g.ode = Some(OdeDiagnostics { richardson: pc.richardson, order: None, truncated_at: pc.truncated_at });
    Ok(g)
}

fn ellipsoid(r: &Resolved, c: &[usize], _t: &Tolerances, label: &str) -> Result<Generated> {
    let (a, b, cc, th) = (r.f("a"), r.f("b"), r.f("c"), r.f("theta_min"));
    let grid = surface_grid(c, (th, PI - th, false), (0.0, TAU, true))?;
    let mut g = analytic(grid, 3, label, |p| {
        let (st, ct) = p[0].sin_cos();
        let (sp, cp) = p[1].sin_cos();
        (vec![a * st * cp, b * st * sp, cc * ct], vec![])
    })?;
    g.laplace = None;
    Ok(g)
}

// ---------------------------------------------------------------- table

const T_MIN: ParamSpec = num("t_min", 0.25, -1e3, 1e3, "lower ruling parameter (must stay positive)");
const T_MAX: ParamSpec = num("t_max", 1.25, -1e3, 1e3, "upper ruling parameter");

const fn t_start(d: f64) -> ParamSpec {
    num("t_start", d, -1e3, 1e3, "profile range start")
}

const fn t_end(d: f64) -> ParamSpec {
    num("t_end", d, -1e3, 1e3, "profile range end")
}

macro_rules! params {
    ($($p:expr),* $(,)?) => {{
        const P: &[ParamSpec] = &[$($p),*];
        P
    }};
}

pub fn entries() -> Vec<GeneratorEntry> {
    use Construction::*;
    let e = |name, n, m, params: &'static [ParamSpec], grid, domain, construction, provenance, build: Builder| {
        GeneratorEntry { name, intrinsic_dim: n, ambient_dim: m, params, default_grid: grid, domain, construction, provenance, build }
    };
    vec![
        e("line", 1, 3, params![num("length", 2.0, 1e-3, 1e3, "length")], &[256], "s in [0, length]", Analytic,
          "straight line; minimal, Laplace map constant", line),
        e("circle", 1, 2, params![num("r", 1.0, 1e-6, 1e6, "radius")], &[256], "s in [0, 2πr) periodic", Analytic,
          "unit-speed round circle; a W-curve of rank one", circle),
        e("helix", 1, 3, params![num("a", 1.0, 1e-6, 1e6, "radius"), num("b", 0.5, -1e6, 1e6, "pitch"), num("length", 10.0, 1e-3, 1e4, "length")],
          &[512], "s in [0, length]", Analytic, "unit-speed circular helix; a W-curve with κ₁ = a/(a²+b²), κ₂ = b/(a²+b²)", helix),
        e("w_curve", 1, 4, params![num("a", 0.6, 1e-6, 1e6, "first radius"), num("p", 1.0, 1e-6, 1e3, "first frequency"),
          num("q", 2.0, 1e-6, 1e3, "second frequency"), num("length", TAU, 1e-3, 1e4, "length")],
          &[512], "s in [0, length]", Analytic, "product of two circles traced at constant speeds; all Frenet curvatures constant", w_curve),
        e("two_circle_diagonal", 1, 4, params![], &[256], "s in [0, 2π) periodic", Analytic,
          "diagonal immersion of two circles of radii 1/√2 and 1/(2√2) with frequencies 1 and 2; a 2-type curve", two_circle_diagonal),
        e("gamma_eps", 1, 3, params![num("eps", 6.0, 1e-6, 1e6, "shape parameter")], &[256], "s in [0, 2π) periodic", Analytic,
          "the 2-type space curves γ_ε with frequencies 1 and 3, the non-helical 2-type curves of E³", gamma_eps),
        e("ellipse", 1, 2, params![num("a", 2.0, 1e-6, 1e6, "semi-axis"), num("b", 1.0, 1e-6, 1e6, "semi-axis")],
          &[256], "u in [0, 2π) periodic, angle parameter", Analytic, "ellipse in its angle parametrization", ellipse),
        e("ellipse_unit_speed", 1, 2, params![num("a", 2.0, 1e-6, 1e6, "semi-axis"), num("b", 1.0, 1e-6, 1e6, "semi-axis")],
          &[128], "s in [0, perimeter) periodic", Quadrature, "ellipse resampled by arclength; of infinite type", ellipse_unit_speed),
        e("parabola", 1, 2, params![num("half_width", 1.0, 1e-3, 1e2, "u range is [-w, w]")], &[512], "arclength of (u, u²)",
          Analytic, "parabola arc by arclength; not homothetic", parabola),
        e("cornu_spiral", 1, 2, params![num("a", 1.0, -1e3, 1e3, "curvature slope"), num("b", 0.0, -1e3, 1e3, "curvature offset"),
          num("s0", 0.0, -1e3, 1e3, "start arclength"), num("length", 3.0, 1e-3, 1e3, "length")],
          &[512], "s in [s0, s0+length]", Quadrature, "plane curve with κ(s) = as + b", cornu_spiral),
        e("homothetic_plane_curve", 1, 2, params![num("a", 1.0, -1e3, 1e3, "integration constant"), num("c", 2.0, 1e-6, 1e3, "homothety constant"),
          num("length", 2.0, 1e-3, 1e3, "length")],
          &[512], "s in [0, length]", CurvatureOde,
          "plane curve with homothetic Laplace transformation: κ'² + κ⁴ = c², seeded at κ(0)⁴ = c²/(1 + c²a)", homothetic_plane_curve),
        e("laplace_in_circle_curve", 1, 2, params![num("c", 1.0, 1e-6, 1e6, "integration constant"), num("length", 2.0, 1e-3, 1e2, "length, centered on 0")],
          &[512], "s in [-length/2, length/2]", Analytic,
          "plane curve with turning angle 2 arctan(c e^{2s}); its Laplace image lies on the unit circle about (1, 0)", laplace_in_circle_curve),
        e("harmonic_lt_curve", 1, 2, params![num("k0", 1.0, -1e3, 1e3, "initial curvature"), num("dk0", 0.0, -1e3, 1e3, "initial curvature slope"),
          num("length", 4.0, 1e-3, 1e3, "length")],
          &[512], "s in [0, length]", CurvatureOde, "plane curve with κ'' = −2κ³, whose Laplace transformation is harmonic", harmonic_lt_curve),
        e("laplace_line_curve", 1, 2, params![num("k0", 1.0, 1e-9, 1e3, "initial curvature"), num("dk0", 0.0, -1e3, 1e3, "initial curvature slope"),
          num("length", 0.8, 1e-3, 1e3, "length")],
          &[512], "s in [0, length], truncated before blow-up", CurvatureOde,
          "plane curve with κκ'' = κ⁴ + 3κ'²; its Laplace image is contained in a line", laplace_line_curve),
        e("lg_homothetic_curve", 1, 2, params![num("c", 2.0, 1e-6, 1e3, "ratio of the image metrics is c²"), num("k0", 1.0, 1e-9, 1e3, "initial curvature"),
          num("length", 2.0, 1e-3, 1e3, "length")],
          &[512], "s in [0, length]", CurvatureOde, "plane curve with κ'² = c²κ² − κ⁴, whose LG-transformation is homothetic", lg_homothetic_curve),
        e("laplace_line_helix", 1, 3, params![num("c", 0.5, -1e3, 1e3, "ratio κ₂/κ₁"), num("length", 0.7, 1e-3, 1e3, "length")],
          &[512], "s in [0, length]", FrenetOde,
          "space curve with κ₁ = (1 − (1+c²)s²)^{-1/2}, κ₂ = cκ₁; a helix whose Laplace image is contained in a line", laplace_line_helix),
        e("plane", 2, 3, params![int("m", 3, 2, 16, "ambient dimension")], &[64, 64], "(u, v) in [-1, 1]²", Analytic,
          "coordinate plane; totally geodesic", plane),
        e("sphere", 2, 3, params![num("r", 1.0, 1e-6, 1e6, "radius"),
          choice("chart", "polar", &["polar", "double_cover"], "polar patch, or a closed doubly periodic chart that avoids the poles"),
          num("theta_min", 0.1, 1e-6, 1.5, "polar chart keeps θ in [θmin, π − θmin]")],
          &[128, 256], "(θ, φ)", Analytic, "round sphere; Δx = (2/r²)x", sphere),
        e("cylinder", 2, 3, params![num("a", 1.0, 1e-6, 1e6, "radius"), num("height", 2.0, 1e-3, 1e6, "height")],
          &[128, 64], "(u, v) in [0, 2π) × [-h/2, h/2]", Analytic, "circular cylinder (a cos u, a sin u, v); L = −γ'' of the base circle", cylinder),
        e("torus_revolution", 2, 3, params![num("R", 2.0, 1e-6, 1e6, "center radius"), num("r", 0.5, 1e-6, 1e6, "tube radius")],
          &[128, 128], "(θ, φ) both periodic", Analytic, "torus of revolution", torus_revolution),
        e("revolution", 2, 3, params![num("a", 0.3, -1e3, 1e3, "profile amplitude"), num("b", 1.0, 1e-6, 1e3, "profile mean"),
          num("length", 3.0, 1e-3, 1e3, "t range")],
          &[128, 128], "(t, θ), profile f(t) = b + a sin t", Analytic, "surface of revolution (t, f cos θ, f sin θ)", revolution),
        e("catenoid", 2, 3, params![num("a", 1.0, 1e-6, 1e3, "neck curvature"), num("half_height", 1.0, 1e-3, 1e2, "t range is symmetric")],
          &[128, 128], "(t, θ), f(t) = cosh(at)/a", Analytic, "catenoid; minimal", catenoid),
        e("helicoid", 2, 3, params![num("lambda", 1.0, 0.5 + 1e-6, 1e3, "ruling offset"), num("c3", 1.0, -1e3, 1e3, "pitch"),
          num("length", TAU, 1e-3, 1e3, "s range")],
          &[128, 64], "(s, t) in [0, length] × [-1/2, 1/2]", Analytic,
          "ruled surface α + tβ with α = (λ cos s, λ sin s, c₃ s), β = (cos s, sin s, 0): a helicoid", helicoid),
        e("cone", 2, 3, params![choice("beta", "small_circle", &["small_circle", "harmonic"], "base curve on the unit sphere"),
          num("c", 0.8, 1e-6, 1.0 - 1e-9, "small-circle radius"), T_MIN, T_MAX,
          num("c1", 1.0, -1e3, 1e3, "harmonic base: κ_g = c1 cos s + c2 sin s"), num("c2", 0.5, -1e3, 1e3, "harmonic base coefficient"),
          num("s_min", -0.8, -1e3, 1e3, "harmonic base range start"), num("s_max", 1.7, -1e3, 1e3, "harmonic base range end")],
          &[64, 128], "(t, s) with t in [t_min, t_max]", Analytic, "cone tβ(s) over a unit-speed spherical curve; L = −(β + β'')/t", cone),
        e("harmonic_cone", 2, 3, params![num("c1", 1.0, -1e3, 1e3, "κ_g = c1 cos s + c2 sin s"), num("c2", 0.5, -1e3, 1e3, "coefficient"),
          num("s_min", -0.8, -1e3, 1e3, "base range start"), num("s_max", 1.7, -1e3, 1e3, "base range end"), T_MIN, T_MAX],
          &[64, 128], "(t, s) with t in [t_min, t_max]", SphericalOde,
          "cone over a spherical curve of geodesic curvature c₁ cos s + c₂ sin s; harmonic mean curvature", harmonic_cone),
        e("tangential_developable", 2, 3, params![num("a", 1.0, 1e-6, 1e6, "helix radius"), num("b", 0.5, 1e-6, 1e6, "helix pitch"),
          num("length", 3.0, 1e-3, 1e3, "s range"), T_MIN, T_MAX],
          &[128, 64], "(s, t) with t in [t_min, t_max]", Analytic,
          "tangent surface β + tβ' of a circular helix; flat, L = −(κ₂/(tκ₁))β₃", tangential_developable),
        e("ruled", 2, 3, params![num("p", 1.0, -1e3, 1e3, "directrix radius"), num("h", 0.5, -1e3, 1e3, "directrix pitch"),
          num("r", 0.2, -1e3, 1e3, "directrix wobble"), num("length", 2.0, 1e-3, 1e3, "s range"), num("half_width", 0.5, 1e-3, 1e3, "t range is symmetric")],
          &[128, 64], "(s, t)", Analytic,
          "ruled surface α + tβ with ⟨α', β⟩ = 0, α = (p cos s, p sin s, hs + r sin 2s), β = (cos s, sin s, 0)", ruled),
        e("revolution_laplace_in_plane", 2, 3, params![num("c", -0.3, -1e3, 1e3, "image plane is x₁ = c; c = 0 gives the catenoid"),
          num("a", 1.0, 1e-6, 1e3, "catenoid parameter when c = 0"), num("f0", 1.0, 1e-9, 1e3, "f(t_start)"), num("df0", 1.0, -1e3, 1e3, "f'(t_start)"),
          t_start(0.0), t_end(1.0)],
          &[128, 128], "(t, θ)", ProfileOde,
          "surface of revolution with f'(1 + f'² − ff'') = −cf(1 + f'²)²; its Laplace image lies in the plane x₁ = c", revolution_laplace_in_plane),
        e("revolution_laplace_in_cylinder", 2, 3, params![num("c", 0.5, 1e-9, 1e3, "image cylinder radius"), num("f0", 1.0, 1e-9, 1e3, "f(t_start)"),
          num("df0", 0.0, -1e3, 1e3, "f'(t_start)"), t_start(0.0), t_end(1.0)],
          &[128, 128], "(t, θ)", ProfileOde,
          "surface of revolution with 1 + f'² − ff'' = cf(1 + f'²)²; its Laplace image lies on a cylinder of radius c about the axis", revolution_laplace_in_cylinder),
        e("laplace_in_sphere", 2, 3, params![num("r", 0.5, 1e-9, 1e3, "sphere parameter"), num("f0", 1.0, 1e-9, 1e3, "f(t_start)"),
          num("df0", 0.3, -1e3, 1e3, "f'(t_start)"), t_start(0.0), t_end(1.0)],
          &[128, 128], "(t, θ)", ProfileOde,
          "surface of revolution with 1 + f'² − ff'' = 4rff'(1 + f'²); its Laplace image lies on a sphere through the origin", laplace_in_sphere),
        e("harmonic_mc", 2, 3, params![num("c", 0.3, -1e3, 1e3, "first integral fα'/√(1+f'²)"), num("f0", 1.0, 1e-9, 1e3, "f(t_start)"),
          num("df0", 0.0, -1e3, 1e3, "f'(t_start)"), num("ddf0", 0.2, -1e3, 1e3, "f''(t_start)"), t_start(0.0), t_end(1.0)],
          &[128, 128], "(t, θ)", ProfileOde, "surface of revolution with harmonic mean curvature, third-order profile equation", harmonic_mc),
        e("conformal_lt", 2, 3, params![num("f0", 1.0, 1e-9, 1e3, "f(t_start)"), num("df0", 0.2, -1e3, 1e3, "f'(t_start)"),
          num("ddf0", -0.2, -1e3, 1e3, "f''(t_start)"), t_start(0.0), t_end(0.6)],
          &[96, 256], "(t, θ)", ProfileOde,
          "surface of revolution whose Laplace transformation is conformal but not homothetic; f''' is the larger root of a quadratic", conformal_lt),
        e("unduloid", 2, 3, params![num("h", 0.5, 1e-9, 1e3, "mean curvature"), num("f0", 0.6, 1e-9, 1e3, "neck radius"), t_start(0.0), t_end(3.0)],
          &[128, 128], "(t, θ)", ProfileOde, "Delaunay unduloid: surface of revolution with constant mean curvature h", unduloid),
        e("torus_e4", 2, 4, params![num("a", 0.8, 1e-6, 1e6, "first radius"), num("b", 0.6, 1e-6, 1e6, "second radius")],
          &[128, 128], "(s, t) arclength on both circles, periodic", Analytic, "product of two plane circles S¹(a) × S¹(b)", torus_e4),
        e("clifford_torus_s3", 2, 4, params![num("r", 1.0, 1e-6, 1e6, "radius of the 3-sphere")], &[128, 128],
          "(s, t) periodic", Analytic, "Clifford torus, minimal in S³(r)", clifford_torus_s3),
        e("flat_torus_e6", 2, 6, params![num("a", 0.8, 1e-6, 1.0 - 1e-9, "b = √(1 − a²)")], &[64, 64],
          "(s, t) in [0, 2π) × [0, 2πb)", Analytic, "flat torus in E⁶ lying on the unit sphere; mass-symmetric 2-type", flat_torus_e6),
        e("surface_e5_prop34", 2, 5, params![num("a", 1.0, 1e-6, 1e3, "axial speed"), num("b", 1.0, 1e-6, 1e3, "circle parameter"),
          num("length", 4.0, 1e-3, 1e3, "u range")],
          &[128, 128], "(u, v) in [0, length] × [0, 2π)", Analytic,
          "(au, b² cos u, b² sin u, R cos v, R sin v) with R = (a² + b⁴)^{3/4}/b; homothetic Laplace transformation, constant mean curvature, not spherical", surface_e5_prop34),
        e("helix_product_e6", 2, 6, params![num("a", 1.0, 1e-6, 1e3, "axial speed"), num("c", 1.0, 1e-6, 1e3, "circle radius"),
          num("length", 4.0, 1e-3, 1e3, "u and v range")],
          &[96, 96], "(u, v) in [0, length]²", Analytic,
          "product of two congruent helices (au, av, c cos u, c sin u, c cos v, c sin v); homothetic Laplace transformation", helix_product_e6),
        e("surface_e6_prop23", 2, 6, params![num("a", 1.0, 1e-6, 1e3, "axial speed"), num("b", 1.0, 1e-6, 1e3, "circle radius"),
          num("length", 4.0, 1e-3, 1e3, "u and v range")],
          &[96, 96], "(u, v) in [0, length]²", Analytic,
          "(au, av, b cos u, b sin u, b cos v, b sin v); homothetic, Laplace image minimal in a hypersphere about 0, source not spherical", surface_e6_prop23),
        e("complex_curve_z2", 2, 4, params![], &[64, 64], "(u, v) in [-1, 1]²", Analytic, "graph of z ↦ z² in C²; a complex curve, hence minimal", complex_curve_z2),
        e("cornu_cylinder", 2, 3, params![num("a", 1.0, -1e3, 1e3, "curvature slope"), num("b", 0.5, -1e3, 1e3, "curvature offset"),
          num("s0", 0.0, -1e3, 1e3, "start arclength"), num("length", 2.0, 1e-3, 1e3, "s range"), num("height", 1.0, 1e-3, 1e3, "ruling length")],
          &[256, 32], "(s, v)", Quadrature, "cylinder over a Cornu spiral; harmonic mean curvature", cornu_cylinder),
        e("lg_homothetic_cylinder", 2, 3, params![num("c", 2.0, 1e-6, 1e3, "LG ratio c²"), num("k0", 1.0, 1e-9, 1e3, "initial curvature"),
          num("length", 2.0, 1e-3, 1e3, "s range"), num("height", 1.0, 1e-3, 1e3, "ruling length")],
          &[256, 32], "(s, v)", CurvatureOde,
          "cylinder over a plane curve with κ'² = c²κ² − κ⁴; homothetic LG-transformation", lg_homothetic_cylinder),
        e("ellipsoid", 2, 3, params![num("a", 1.0, 1e-6, 1e6, "semi-axis"), num("b", 1.5, 1e-6, 1e6, "semi-axis"), num("c", 2.0, 1e-6, 1e6, "semi-axis"),
          num("theta_min", 0.3, 1e-6, 1.5, "polar chart keeps θ in [θmin, π − θmin]")],
          &[96, 128], "(θ, φ)", Analytic, "triaxial ellipsoid; no closed-form Laplace map", ellipsoid),
    ]
}
