//! Least-squares fits of point sets against simple primitives.
//!
//! Residuals are root-mean-square geometric distances divided by the size of the set,
//! `max(max ‖p‖, max ‖p − centroid‖)`.

use serde::Serialize;

use crate::linalg::{column, levenberg_marquardt, lstsq, scatter, sym_eigen};
use crate::scalar::{cross3, dot, norm, sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitive {
    Point,
    Line,
    Circle,
    Plane,
    Sphere,
    Cylinder,
    ConeAtOrigin,
    Cone,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitiveFit {
    pub primitive: Primitive,
    pub residual: f64,
    /// Center, point on the axis, or vertex.
    pub center: Vec<f64>,
    /// Direction of a line or axis, normal of a plane.
    pub axis: Option<Vec<f64>>,
    /// Radius, or half-angle in radians for cones.
    pub radius: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageFit {
    pub fits: Vec<PrimitiveFit>,
    /// Simplest primitive whose residual is within the tolerance.
    pub best: Option<Primitive>,
    pub tolerance: f64,
}

impl ImageFit {
    pub fn get(&self, p: Primitive) -> Option<&PrimitiveFit> {
        self.fits.iter().find(|f| f.primitive == p)
    }
}

/// Fixed list of 13 axis directions: the 26 neighbours of a cube cell up to sign.
pub fn axis_directions() -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for i in -1i32..=1 {
        for j in -1i32..=1 {
            for k in -1i32..=1 {
                let v = [i as f64, j as f64, k as f64];
                let first = v.iter().copied().find(|x| *x != 0.0);
                if first == Some(1.0) {
                    let n = norm(&v);
                    out.push([v[0] / n, v[1] / n, v[2] / n]);
                }
            }
        }
    }
    out
}

pub fn size_of(points: &[f64], m: usize) -> f64 {
    let (_, c) = scatter(points, m);
    let mut s = 0.0f64;
    for p in points.chunks(m) {
        s = s.max(norm(p)).max(norm(&sub(p, &c)));
    }
    s
}

fn rms(d: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut n) = (0.0, 0usize);
    for v in d {
        s += v * v;
        n += 1;
    }
    if n == 0 {
        0.0
    } else {
        (s / n as f64).sqrt()
    }
}

/// Every `k`-th point so that at most `cap` remain.
fn thin(points: &[f64], m: usize, cap: usize) -> Vec<f64> {
    let count = points.len() / m;
    let step = count.div_ceil(cap).max(1);
    points.chunks(m).step_by(step).flatten().copied().collect()
}

/// Principal frame: centroid and eigenvectors of the scatter matrix, descending.
fn pca(points: &[f64], m: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let (s, c) = scatter(points, m);
    let (_, vecs) = sym_eigen(&s, m);
    (c, (0..m).map(|k| column(&vecs, m, k)).collect())
}

fn dist_to_flat(p: &[f64], c: &[f64], basis: &[Vec<f64>]) -> f64 {
    let mut d = sub(p, c);
    for b in basis {
        let t = dot(&d, b);
        for (x, y) in d.iter_mut().zip(b) {
            *x -= t * y;
        }
    }
    norm(&d)
}

/// Algebraic circle fit in the plane refined by geometric least squares: `(cx, cy, r)`.
pub fn circle_2d(xy: &[[f64; 2]]) -> [f64; 3] {
    let rows = xy.len();
    let mut design = Vec::with_capacity(rows * 3);
    let mut y = Vec::with_capacity(rows);
    for p in xy {
        design.extend([2.0 * p[0], 2.0 * p[1], 1.0]);
        y.push(p[0] * p[0] + p[1] * p[1]);
    }
    let (sol, _) = lstsq(&design, rows, 3, &y, 1e-14);
    let r0 = (sol[2] + sol[0] * sol[0] + sol[1] * sol[1]).max(0.0).sqrt();
    let (p, _) = levenberg_marquardt(
        &[sol[0], sol[1], r0],
        |q| xy.iter().map(|p| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() - q[2]).collect(),
        100,
    );
    [p[0], p[1], p[2].abs()]
}

fn fit_point(points: &[f64], m: usize, size: f64) -> PrimitiveFit {
    let (_, c) = scatter(points, m);
    let res = rms(points.chunks(m).map(|p| norm(&sub(p, &c))));
    PrimitiveFit { primitive: Primitive::Point, residual: res / size, center: c, axis: None, radius: None }
}

fn fit_flat(points: &[f64], m: usize, size: f64, dim: usize) -> PrimitiveFit {
    let (c, vecs) = pca(points, m);
    let basis = &vecs[..dim];
    let res = rms(points.chunks(m).map(|p| dist_to_flat(p, &c, basis)));
    let (primitive, axis) = if dim == 1 {
        (Primitive::Line, vecs[0].clone())
    } else {
        (Primitive::Plane, vecs[m - 1].clone())
    };
    PrimitiveFit { primitive, residual: res / size, center: c, axis: Some(axis), radius: None }
}

fn fit_circle(points: &[f64], m: usize, size: f64) -> PrimitiveFit {
    let (c, vecs) = pca(points, m);
    let (e0, e1) = (&vecs[0], &vecs[1]);
    let xy: Vec<[f64; 2]> = points
        .chunks(m)
        .map(|p| {
            let d = sub(p, &c);
            [dot(&d, e0), dot(&d, e1)]
        })
        .collect();
    let [cx, cy, r] = circle_2d(&xy);
    let center: Vec<f64> = (0..m).map(|k| c[k] + cx * e0[k] + cy * e1[k]).collect();
    let res = rms(points.chunks(m).zip(&xy).map(|(p, q)| {
        let off = dist_to_flat(p, &c, &vecs[..2]);
        let inplane = ((q[0] - cx).powi(2) + (q[1] - cy).powi(2)).sqrt() - r;
        (off * off + inplane * inplane).sqrt()
    }));
    let axis = if m >= 3 { Some(vecs[2].clone()) } else { None };
    PrimitiveFit { primitive: Primitive::Circle, residual: res / size, center, axis, radius: Some(r) }
}

fn fit_sphere(points: &[f64], m: usize, size: f64) -> PrimitiveFit {
    let sample = thin(points, m, 4096);
    let rows = sample.len() / m;
    let mut design = Vec::with_capacity(rows * (m + 1));
    let mut y = Vec::with_capacity(rows);
    for p in sample.chunks(m) {
        design.extend(p.iter().map(|v| 2.0 * v));
        design.push(1.0);
        y.push(dot(p, p));
    }
    let (sol, _) = lstsq(&design, rows, m + 1, &y, 1e-14);
    let c0 = &sol[..m];
    let r0 = (sol[m] + dot(c0, c0)).max(0.0).sqrt();
    let mut p0 = c0.to_vec();
    p0.push(r0);
    let (p, _) = levenberg_marquardt(&p0, |q| sample.chunks(m).map(|x| norm(&sub(x, &q[..m])) - q[m]).collect(), 100);
    let res = rms(points.chunks(m).map(|x| norm(&sub(x, &p[..m])) - p[m]));
    PrimitiveFit { primitive: Primitive::Sphere, residual: res / size, center: p[..m].to_vec(), axis: None, radius: Some(p[m].abs()) }
}

fn unit_from_angles(a: f64, b: f64) -> [f64; 3] {
    [a.sin() * b.cos(), a.sin() * b.sin(), a.cos()]
}

fn angles_of(d: &[f64; 3]) -> (f64, f64) {
    (d[2].clamp(-1.0, 1.0).acos(), d[1].atan2(d[0]))
}

/// Orthonormal pair spanning the plane orthogonal to `d`.
fn complement(d: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let seed = if d[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = cross3(d, &seed);
    let nu = norm(&u);
    let u = [u[0] / nu, u[1] / nu, u[2] / nu];
    (u, cross3(d, &u))
}

/// Cylinder parameters: axis angles (2), axis point in the orthogonal plane (2), radius.
fn cylinder_residuals(q: &[f64], pts: &[f64]) -> Vec<f64> {
    let d = unit_from_angles(q[0], q[1]);
    let (u, v) = complement(&d);
    pts.chunks(3)
        .map(|p| {
            let (x, y) = (dot(p, &u) - q[2], dot(p, &v) - q[3]);
            (x * x + y * y).sqrt() - q[4]
        })
        .collect()
}

fn fit_cylinder(points: &[f64], size: f64) -> PrimitiveFit {
    let sample = thin(points, 3, 2048);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for d in axis_directions() {
        let (u, v) = complement(&d);
        let xy: Vec<[f64; 2]> = sample.chunks(3).map(|p| [dot(p, &u), dot(p, &v)]).collect();
        let [cx, cy, r] = circle_2d(&xy);
        let (a, b) = angles_of(&d);
        let (q, cost) = levenberg_marquardt(&[a, b, cx, cy, r], |q| cylinder_residuals(q, &sample), 60);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, q));
        }
    }
    let q = best.expect("direction list is not empty").1;
    let res = rms(cylinder_residuals(&q, points).into_iter());
    let d = unit_from_angles(q[0], q[1]);
    let (u, v) = complement(&d);
    let center = (0..3).map(|k| q[2] * u[k] + q[3] * v[k]).collect();
    PrimitiveFit { primitive: Primitive::Cylinder, residual: res / size, center, axis: Some(d.to_vec()), radius: Some(q[4].abs()) }
}

/// Cone residuals `ρ cos ψ − h sin ψ`; parameters are axis angles (2), half-angle, then an
/// optional vertex (3).
fn cone_residuals(q: &[f64], pts: &[f64]) -> Vec<f64> {
    let d = unit_from_angles(q[0], q[1]);
    let v = if q.len() > 3 { [q[3], q[4], q[5]] } else { [0.0; 3] };
    let (s, c) = q[2].sin_cos();
    pts.chunks(3)
        .map(|p| {
            let w = sub(p, &v);
            let h = dot(&w, &d);
            let rho = (dot(&w, &w) - h * h).max(0.0).sqrt();
            rho * c - h * s
        })
        .collect()
}

fn fit_cone(points: &[f64], size: f64, free_vertex: bool) -> PrimitiveFit {
    let sample = thin(points, 3, 2048);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for d in axis_directions() {
        let (u, w) = complement(&d);
        let (a, b) = angles_of(&d);
        // axis offset from a projected circle fit, then ρ = k h + m along the axis
        let offset = if free_vertex {
            let xy: Vec<[f64; 2]> = sample.chunks(3).map(|p| [dot(p, &u), dot(p, &w)]).collect();
            let [cx, cy, _] = circle_2d(&xy);
            [cx * u[0] + cy * w[0], cx * u[1] + cy * w[1], cx * u[2] + cy * w[2]]
        } else {
            [0.0; 3]
        };
        let rows = sample.len() / 3;
        let mut design = Vec::with_capacity(rows * 2);
        let mut y = Vec::with_capacity(rows);
        for p in sample.chunks(3) {
            let r = sub(p, &offset);
            let h = dot(&r, &d);
            design.extend([h, if free_vertex { 1.0 } else { 0.0 }]);
            y.push((dot(&r, &r) - h * h).max(0.0).sqrt());
        }
        let (km, _) = lstsq(&design, rows, 2, &y, 1e-14);
        let psi = km[0].atan2(1.0).rem_euclid(std::f64::consts::PI);
        let mut q0 = vec![a, b, if psi == 0.0 { 0.5 } else { psi }];
        if free_vertex {
            let h0 = if km[0].abs() > 1e-12 { -km[1] / km[0] } else { 0.0 };
            q0.extend((0..3).map(|k| offset[k] + h0 * d[k]));
        }
        let (q, cost) = levenberg_marquardt(&q0, |q| cone_residuals(q, &sample), 60);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, q));
        }
    }
    let q = best.expect("direction list is not empty").1;
    let res = rms(cone_residuals(&q, points).into_iter());
    let d = unit_from_angles(q[0], q[1]);
    let center = if free_vertex { q[3..6].to_vec() } else { vec![0.0; 3] };
    let primitive = if free_vertex { Primitive::Cone } else { Primitive::ConeAtOrigin };
    PrimitiveFit { primitive, residual: res / size, center, axis: Some(d.to_vec()), radius: Some(q[2].rem_euclid(std::f64::consts::PI)) }
}

/// Fits every primitive that makes sense in dimension `m` and picks the simplest acceptable one.
pub fn fit_all(points: &[f64], m: usize, tolerance: f64) -> ImageFit {
    let size = size_of(points, m);
    if size == 0.0 {
        let c = points[..m].to_vec();
        let fit = PrimitiveFit { primitive: Primitive::Point, residual: 0.0, center: c, axis: None, radius: None };
        return ImageFit { fits: vec![fit], best: Some(Primitive::Point), tolerance };
    }
    let mut fits = vec![fit_point(points, m, size), fit_flat(points, m, size, 1)];
    if m >= 2 {
        fits.push(fit_circle(points, m, size));
    }
    if m >= 3 {
        fits.push(fit_flat(points, m, size, 2));
    }
    fits.push(fit_sphere(points, m, size));
    if m == 3 {
        fits.push(fit_cylinder(points, size));
        fits.push(fit_cone(points, size, false));
        fits.push(fit_cone(points, size, true));
    }
    let best = fits.iter().filter(|f| f.residual <= tolerance).map(|f| f.primitive).min();
    ImageFit { fits, best, tolerance }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn grid_points(f: impl Fn(f64, f64) -> [f64; 3]) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..20 {
            for j in 0..30 {
                out.extend(f(i as f64 / 19.0, TAU * j as f64 / 30.0));
            }
        }
        out
    }

    #[test]
    fn thirteen_directions() {
        assert_eq!(axis_directions().len(), 13);
    }

    #[test]
    fn recovers_sphere_cylinder_and_cone() {
        let sph = grid_points(|u, v| {
            let th = 0.3 + 2.0 * u;
            [1.0 + 2.0 * th.sin() * v.cos(), -0.5 + 2.0 * th.sin() * v.sin(), 0.2 + 2.0 * th.cos()]
        });
        let f = fit_all(&sph, 3, 1e-6);
        let s = f.get(Primitive::Sphere).unwrap();
        assert!(s.residual < 1e-9 && (s.radius.unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(f.best, Some(Primitive::Sphere));

        let d = [0.0, 0.6, 0.8];
        let (a, b) = complement(&d);
        let cyl = grid_points(|u, v| {
            let h = 3.0 * u - 1.5;
            std::array::from_fn(|k| 0.4 * a[k] + 1.5 * (v.cos() * a[k] + v.sin() * b[k]) + h * d[k])
        });
        let f = fit_all(&cyl, 3, 1e-6);
        assert_eq!(f.best, Some(Primitive::Cylinder));
        assert!((f.get(Primitive::Cylinder).unwrap().radius.unwrap() - 1.5).abs() < 1e-8);

        let cone = grid_points(|u, v| {
            let t = 0.5 + u;
            [t * 0.8 * v.cos(), t * 0.8 * v.sin(), t * 0.6]
        });
        let f = fit_all(&cone, 3, 1e-6);
        assert_eq!(f.best, Some(Primitive::ConeAtOrigin));
        let shifted: Vec<f64> = cone.chunks(3).flat_map(|p| [p[0] + 1.0, p[1] - 2.0, p[2] + 0.5]).collect();
        let f = fit_all(&shifted, 3, 1e-6);
        assert_eq!(f.best, Some(Primitive::Cone));
        let c = &f.get(Primitive::Cone).unwrap().center;
        assert!((c[0] - 1.0).abs() < 1e-6 && (c[1] + 2.0).abs() < 1e-6 && (c[2] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn circle_in_higher_dimension() {
        let pts: Vec<f64> = (0..50)
            .flat_map(|i| {
                let t = TAU * i as f64 / 50.0;
                [1.0 + 0.5 * t.cos(), 0.5 * t.sin() * 0.6, 0.5 * t.sin() * 0.8, 2.0]
            })
            .collect();
        let f = fit_all(&pts, 4, 1e-6);
        assert_eq!(f.best, Some(Primitive::Circle));
    }
}
