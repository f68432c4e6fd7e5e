//! Fixed-step integrators behind the ODE-driven catalogue entries.

use crate::error::{GeoError, Result};
use crate::grid::Grid;
use crate::immersion::SampledImmersion;
use crate::scalar::{cross3, norm, Real};

/// One classical Runge–Kutta step.
pub fn rk4_step<T: Real, F>(f: &F, t: T, y: &[T], h: T) -> Vec<T>
where
    F: Fn(T, &[T]) -> Vec<T>,
{
    let half = h / T::lit(2.0);
    let k1 = f(t, y);
    let y2: Vec<T> = y.iter().zip(&k1).map(|(&a, &k)| a + half * k).collect();
    let k2 = f(t + half, &y2);
    let y3: Vec<T> = y.iter().zip(&k2).map(|(&a, &k)| a + half * k).collect();
    let k3 = f(t + half, &y3);
    let y4: Vec<T> = y.iter().zip(&k3).map(|(&a, &k)| a + h * k).collect();
    let k4 = f(t + h, &y4);
    let six = T::lit(6.0);
    (0..y.len())
        .map(|i| y[i] + h / six * (k1[i] + T::lit(2.0) * (k2[i] + k3[i]) + k4[i]))
        .collect()
}

/// States at `t0 + i·sub·h` for `i = 0..=samples-1`, integrating with step `h`.
/// Stops early when `stop` fires and reports the last accepted time.
pub struct Trajectory<T> {
    pub states: Vec<Vec<T>>,
    pub stopped_at: Option<T>,
}

pub fn integrate<T: Real, F, S>(f: &F, t0: T, y0: &[T], h: T, sub: usize, samples: usize, stop: S) -> Trajectory<T>
where
    F: Fn(T, &[T]) -> Vec<T>,
    S: Fn(&[T]) -> bool,
{
    let mut states = Vec::with_capacity(samples);
    let mut y = y0.to_vec();
    states.push(y.clone());
    let mut step = 0usize;
    while states.len() < samples {
        for _ in 0..sub {
            let t = t0 + T::of(step) * h;
            let next = rk4_step(f, t, &y, h);
            if next.iter().any(|v| !v.is_finite()) || stop(&next) {
                return Trajectory { states, stopped_at: Some(t) };
            }
            y = next;
            step += 1;
        }
        states.push(y.clone());
    }
    Trajectory { states, stopped_at: None }
}

/// Endpoint after `steps` steps of size `h`.
pub fn endpoint<T: Real, F>(f: &F, t0: T, y0: &[T], h: T, steps: usize) -> Vec<T>
where
    F: Fn(T, &[T]) -> Vec<T>,
{
    let mut y = y0.to_vec();
    for i in 0..steps {
        y = rk4_step(f, t0 + T::of(i) * h, &y, h);
    }
    y
}

/// Relative endpoint change when the step is halved.
pub fn richardson_change<T: Real, F>(f: &F, t0: T, y0: &[T], h: T, steps: usize) -> T
where
    F: Fn(T, &[T]) -> Vec<T>,
{
    let a = endpoint(f, t0, y0, h, steps);
    let b = endpoint(f, t0, y0, h / T::lit(2.0), 2 * steps);
    let d: Vec<T> = a.iter().zip(&b).map(|(&x, &y)| x - y).collect();
    norm(&d) / norm(&b).max(T::one())
}

/// Observed convergence order from runs at `h`, `h/2`, `h/4`.
pub fn observed_order<T: Real, F>(f: &F, t0: T, y0: &[T], h: T, steps: usize) -> T
where
    F: Fn(T, &[T]) -> Vec<T>,
{
    let a = endpoint(f, t0, y0, h, steps);
    let b = endpoint(f, t0, y0, h / T::lit(2.0), 2 * steps);
    let c = endpoint(f, t0, y0, h / T::lit(4.0), 4 * steps);
    let e1 = norm(&a.iter().zip(&b).map(|(&x, &y)| x - y).collect::<Vec<_>>());
    let e2 = norm(&b.iter().zip(&c).map(|(&x, &y)| x - y).collect::<Vec<_>>());
    (e1 / e2).log2()
}

/// Second-order curvature laws `κ'' = F(κ, κ')` for plane curves.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurvatureLaw {
    /// `κ'' = −2κ³`
    HarmonicLt,
    /// `κκ'' = κ⁴ + 3κ'²`
    LaplaceLine,
    /// `κ'' = c²κ − 2κ³`, first integral `κ'² = c²κ² − κ⁴`
    LgHomothetic { c: f64 },
    /// `κ'' = 0`
    Affine,
}

impl CurvatureLaw {
    pub fn accel(&self, k: f64, dk: f64) -> f64 {
        match *self {
            CurvatureLaw::HarmonicLt => -2.0 * k * k * k,
            CurvatureLaw::LaplaceLine => (k.powi(4) + 3.0 * dk * dk) / k,
            CurvatureLaw::LgHomothetic { c } => c * c * k - 2.0 * k * k * k,
            CurvatureLaw::Affine => 0.0,
        }
    }
}

/// Plane curve together with its curvature samples.
pub struct PlaneCurve {
    pub curve: SampledImmersion<f64>,
    /// `(κ, κ', θ)` per sample.
    pub kappa: Vec<[f64; 3]>,
    pub richardson: f64,
    pub truncated_at: Option<f64>,
}

/// Substeps per output interval so the integration step does not exceed `max_step`.
pub fn substeps(output_step: f64, max_step: f64) -> usize {
    (output_step / max_step).ceil().max(1.0) as usize
}

/// Integrates a curvature law together with `θ' = κ`, `γ' = (cos θ, sin θ)`.
#[allow(clippy::too_many_arguments)]
pub fn solve_curvature_law(
    law: CurvatureLaw,
    k0: f64,
    dk0: f64,
    length: f64,
    samples: usize,
    max_step: f64,
    ode_tol: f64,
    label: &str,
) -> Result<PlaneCurve> {
    if matches!(law, CurvatureLaw::LaplaceLine) && !(k0 > 0.0) {
        return Err(GeoError::ParamOutOfRange { name: "k0".into(), reason: "must be positive".into() });
    }
    let rhs = move |_t: f64, y: &[f64]| vec![y[1], law.accel(y[0], y[1]), y[0], y[2].cos(), y[2].sin()];
    let y0 = [k0, dk0, 0.0, 0.0, 0.0];
    let run = |length: f64| {
        let out_h = length / (samples - 1) as f64;
        let sub = substeps(out_h, max_step);
        let h = out_h / sub as f64;
        (integrate(&rhs, 0.0, &y0, h, sub, samples, |y| y[0].abs() > 1.0 / h), h, sub)
    };
    let (mut traj, mut h, mut sub) = run(length);
    let mut used = length;
    let mut truncated = None;
    if let Some(t) = traj.stopped_at {
        used = 0.9 * t;
        truncated = Some(used);
        log::warn!("{label}: curvature exceeds 1/step near s = {t:.6}; domain truncated to [0, {used:.6}]");
        (traj, h, sub) = run(used);
        if traj.stopped_at.is_some() {
            return Err(GeoError::BlowUp { at: t });
        }
    }
    let change = richardson_change(&rhs, 0.0, &y0, h, sub * (samples - 1));
    if change > 16.0 * ode_tol {
        return Err(GeoError::OdeNotConverged { change, budget: 16.0 * ode_tol });
    }
    let grid = Grid::curve(samples, 0.0, used, false)?;
    let points: Vec<f64> = traj.states.iter().flat_map(|y| [y[3], y[4]]).collect();
    let kappa = traj.states.iter().map(|y| [y[0], y[1], y[2]]).collect();
    Ok(PlaneCurve {
        curve: SampledImmersion::new(grid, 2, points, label)?,
        kappa,
        richardson: change,
        truncated_at: truncated,
    })
}

/// Plane curve with prescribed curvature, by composite Simpson quadrature for θ and for γ.
/// Samples are placed on `[0, length]`, or on `[0, length)` when `periodic`.
pub fn curve_from_curvature<T: Real, F>(
    kappa: F,
    theta0: T,
    p0: [T; 2],
    length: T,
    samples: usize,
    max_step: T,
    periodic: bool,
    label: &str,
) -> Result<SampledImmersion<T>>
where
    F: Fn(T) -> T,
{
    let grid = Grid::curve(samples, T::zero(), length, periodic)?;
    let out_h = grid.axis(0).step();
    let sub = (out_h / max_step).ceil().max(T::one()).to_usize().unwrap_or(1);
    let d = out_h / T::of(sub);
    let six = T::lit(6.0);
    let simpson = |a: T, w: T| w / six * (kappa(a) + T::lit(4.0) * kappa(a + w / T::lit(2.0)) + kappa(a + w));
    let mut theta = theta0;
    let mut p = p0;
    let mut points = Vec::with_capacity(samples * 2);
    points.extend_from_slice(&p);
    for i in 0..samples - 1 {
        for j in 0..sub {
            let s = T::of(i) * out_h + T::of(j) * d;
            let t_mid = theta + simpson(s, d / T::lit(2.0));
            let t_end = theta + simpson(s, d);
            let four = T::lit(4.0);
            p[0] = p[0] + d / six * (theta.cos() + four * t_mid.cos() + t_end.cos());
            p[1] = p[1] + d / six * (theta.sin() + four * t_mid.sin() + t_end.sin());
            theta = t_end;
        }
        points.extend_from_slice(&p);
    }
    SampledImmersion::new(grid, 2, points, label)
}

/// Space curve in E³ from Frenet curvatures; returns per sample `[x, β₁, β₂, β₃]` (12 numbers).
pub fn frenet_curve<F1, F2>(k1: F1, k2: F2, length: f64, samples: usize, max_step: f64) -> Vec<[f64; 12]>
where
    F1: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    let rhs = |t: f64, y: &[f64]| {
        let (a, b) = (k1(t), k2(t));
        let mut d = vec![0.0; 12];
        for i in 0..3 {
            d[i] = y[3 + i];
            d[3 + i] = a * y[6 + i];
            d[6 + i] = -a * y[3 + i] + b * y[9 + i];
            d[9 + i] = -b * y[6 + i];
        }
        d
    };
    let y0 = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
    let out_h = length / (samples - 1) as f64;
    let sub = substeps(out_h, max_step);
    let traj = integrate(&rhs, 0.0, &y0, out_h / sub as f64, sub, samples, |_| false);
    traj.states.iter().map(|y| y.as_slice().try_into().expect("12 entries")).collect()
}

/// Unit-speed curve on the unit sphere with geodesic curvature `kg(s)`;
/// returns per sample `[β, β', β × β']` (9 numbers).
pub fn spherical_curve<F>(kg: F, s0: f64, length: f64, samples: usize, max_step: f64) -> Vec<[f64; 9]>
where
    F: Fn(f64) -> f64,
{
    let rhs = |t: f64, y: &[f64]| {
        let b = [y[0], y[1], y[2]];
        let tt = [y[3], y[4], y[5]];
        let nrm = cross3(&b, &tt);
        let k = kg(t);
        vec![tt[0], tt[1], tt[2], -b[0] + k * nrm[0], -b[1] + k * nrm[1], -b[2] + k * nrm[2]]
    };
    let y0 = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0];
    let out_h = length / (samples - 1) as f64;
    let sub = substeps(out_h, max_step);
    let traj = integrate(&rhs, s0, &y0, out_h / sub as f64, sub, samples, |_| false);
    traj.states
        .iter()
        .map(|y| {
            let n = cross3(&y[0..3], &y[3..6]);
            [y[0], y[1], y[2], y[3], y[4], y[5], n[0], n[1], n[2]]
        })
        .collect()
}

/// Third- or second-order profile laws for surfaces of revolution `(t, f cos θ, f sin θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProfileLaw {
    /// `Δα = 0`, integrated once: `fα'/√Q = c`.
    HarmonicMc { c: f64 },
    /// Conformal Laplace transformation that is not homothetic.
    ConformalLt,
    /// Laplace image on a sphere through the origin: `N = 4r f f' Q`.
    LaplaceInSphere { r: f64 },
    /// Laplace image on a cylinder of radius `c` about the axis: `N = c f Q²`.
    LaplaceInCylinder { c: f64 },
    /// Laplace image in the plane `x₁ = c`: `f' N = −c f Q²`.
    LaplaceInPlane { c: f64 },
    /// Constant mean curvature `α = h`.
    ConstantMc { h: f64 },
}

impl ProfileLaw {
    pub fn order(&self) -> usize {
        match self {
            ProfileLaw::HarmonicMc { .. } | ProfileLaw::ConformalLt => 3,
            _ => 2,
        }
    }

    /// `f''` for second-order laws.
    pub fn second(&self, f: f64, df: f64) -> f64 {
        let q = 1.0 + df * df;
        match *self {
            ProfileLaw::LaplaceInSphere { r } => (q - 4.0 * r * f * df * q) / f,
            ProfileLaw::LaplaceInCylinder { c } => (q - c * f * q * q) / f,
            ProfileLaw::LaplaceInPlane { c } => (q + c * f * q * q / df) / f,
            ProfileLaw::ConstantMc { h } => (q - 2.0 * h * f * q.powf(1.5)) / f,
            _ => f64::NAN,
        }
    }

    /// `f'''` for third-order laws.
    pub fn third(&self, f: f64, df: f64, ddf: f64) -> Result<f64> {
        let q = 1.0 + df * df;
        match *self {
            ProfileLaw::HarmonicMc { c } => {
                Ok((-c * f * q.powi(3) - df * q * q - f * df * ddf * q + 3.0 * f * f * df * ddf * ddf) / (q * f * f))
            }
            ProfileLaw::ConformalLt => {
                let (a, b, c) = conformal_quadratic(f, df, ddf);
                let disc = b * b - 4.0 * a * c;
                if disc < 0.0 {
                    return Err(GeoError::DiscriminantNegative { value: disc });
                }
                Ok((-b + disc.sqrt()) / (2.0 * a))
            }
            _ => Ok(f64::NAN),
        }
    }
}

/// Coefficients of the quadratic in `f'''` whose roots make the Laplace transformation of a
/// surface of revolution conformal.
pub fn conformal_quadratic(f: f64, df: f64, ddf: f64) -> (f64, f64, f64) {
    let q = 1.0 + df * df;
    let n = q - f * ddf;
    let dn = f * q * q;
    let phi = n / dn;
    let d_dn = df * q * q + 4.0 * f * q * df * ddf;
    let p = -f / dn;
    let r = (df * ddf * dn - n * d_dn) / (dn * dn);
    let f2 = f * f;
    let a = f2 * q * p * p;
    let b = 2.0 * f2 * q * p * r + 2.0 * f2 * phi * df * ddf * p;
    let c = f2 * q * r * r + 2.0 * f2 * phi * df * ddf * r + f2 * phi * phi * ddf * ddf - phi * phi * q;
    (a, b, c)
}

/// Profile samples `(f, f', f'')` on a uniform `t` grid.
pub struct Profile {
    pub t0: f64,
    pub t1: f64,
    pub values: Vec<[f64; 3]>,
    pub richardson: f64,
    pub order: f64,
}

pub fn solve_profile(
    law: ProfileLaw,
    seed: [f64; 3],
    t_range: (f64, f64),
    samples: usize,
    max_step: f64,
    ode_tol: f64,
) -> Result<Profile> {
    if !(seed[0] > 0.0) {
        return Err(GeoError::ParamOutOfRange { name: "f0".into(), reason: "profile must start positive".into() });
    }
    if let ProfileLaw::ConformalLt = law {
        let (a, b, c) = conformal_quadratic(seed[0], seed[1], seed[2]);
        let disc = b * b - 4.0 * a * c;
        if !(disc > 0.0) {
            return Err(GeoError::DiscriminantNegative { value: disc });
        }
    }
    let third = law.order() == 3;
    let rhs = move |_t: f64, y: &[f64]| {
        if third {
            vec![y[1], y[2], law.third(y[0], y[1], y[2]).unwrap_or(f64::NAN)]
        } else {
            vec![y[1], law.second(y[0], y[1])]
        }
    };
    let y0: Vec<f64> = if third { seed.to_vec() } else { seed[..2].to_vec() };
    let (t0, t1) = t_range;
    let out_h = (t1 - t0) / (samples - 1) as f64;
    let sub = substeps(out_h, max_step);
    let h = out_h / sub as f64;
    let traj = integrate(&rhs, t0, &y0, h, sub, samples, |y| !(y[0] > 0.0) || y[1].abs() > 1.0 / h);
    if let Some(t) = traj.stopped_at {
        return Err(GeoError::BlowUp { at: t });
    }
    let change = richardson_change(&rhs, t0, &y0, h, sub * (samples - 1));
    if change > 16.0 * ode_tol {
        return Err(GeoError::OdeNotConverged { change, budget: 16.0 * ode_tol });
    }
    let order = observed_order(&rhs, t0, &y0, 0.05, ((t1 - t0) / 0.05).round().max(1.0) as usize);
    let values = traj
        .states
        .iter()
        .map(|y| if third { [y[0], y[1], y[2]] } else { [y[0], y[1], law.second(y[0], y[1])] })
        .collect();
    Ok(Profile { t0, t1, values, richardson: change, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_is_fourth_order_on_oscillator() {
        let f = |_t: f64, y: &[f64]| vec![y[1], -y[0]];
        let p = observed_order(&f, 0.0, &[1.0, 0.0], 0.1, 20);
        assert!((3.5..4.5).contains(&p), "order {p}");
    }

    #[test]
    fn harmonic_lt_conserves_first_integral() {
        let pc = solve_curvature_law(CurvatureLaw::HarmonicLt, 1.0, 0.0, 6.0, 601, 1e-3, 1e-5, "h").unwrap();
        for k in &pc.kappa {
            assert!((k[1] * k[1] + k[0].powi(4) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn laplace_line_matches_closed_form_and_truncates() {
        let pc = solve_curvature_law(CurvatureLaw::LaplaceLine, 1.0, 0.0, 0.8, 161, 1e-3, 1e-5, "l").unwrap();
        let s = pc.curve.grid().axis(0).coords();
        for (k, s) in pc.kappa.iter().zip(s) {
            assert!((k[0] - 1.0 / (1.0 - s * s).sqrt()).abs() < 1e-9);
        }
        let long = solve_curvature_law(CurvatureLaw::LaplaceLine, 1.0, 0.0, 1.5, 301, 1e-3, 1e-5, "l").unwrap();
        assert!(long.truncated_at.unwrap() < 1.0);
    }

    #[test]
    fn circle_from_constant_curvature_closes() {
        let r = 1.5;
        let c = curve_from_curvature(|_| 1.0 / r, 0.0, [0.0, 0.0], std::f64::consts::TAU * r, 513, 1e-3, false, "c").unwrap();
        let first = c.point(0).to_vec();
        let last = c.point(c.len() - 1);
        assert!(((first[0] - last[0]).powi(2) + (first[1] - last[1]).powi(2)).sqrt() < 1e-8);
    }

    #[test]
    fn frenet_curve_reproduces_helix() {
        let (a, b) = (1.0f64, 0.5f64);
        let c2 = a * a + b * b;
        let st = frenet_curve(|_| a / c2, |_| b / c2, 5.0, 101, 1e-3);
        let end = st.last().unwrap();
        let s = 5.0 / c2.sqrt();
        let expected = [a * s.sin(), a * (1.0 - s.cos()), b * s];
        let dist = ((end[0] * end[0] + end[1] * end[1] + end[2] * end[2]).sqrt()
            - (expected[0].powi(2) + expected[1].powi(2) + expected[2].powi(2)).sqrt())
        .abs();
        assert!(dist < 1e-9);
    }

    #[test]
    fn profile_discriminant_is_checked() {
        let law = ProfileLaw::ConformalLt;
        let bad = (0..50)
            .map(|i| [1.0, -2.0 + 0.08 * i as f64, -1.0])
            .find(|s| {
                let (a, b, c) = conformal_quadratic(s[0], s[1], s[2]);
                b * b - 4.0 * a * c < 0.0
            });
        if let Some(seed) = bad {
            assert!(matches!(solve_profile(law, seed, (0.0, 0.5), 51, 1e-3, 1e-5), Err(GeoError::DiscriminantNegative { .. })));
        }
    }
}
