//! Metric, Laplace–Beltrami operator, mean curvature and shape data of a sampled immersion.

use rayon::prelude::*;

use crate::error::{GeoError, Result};
use crate::grid::Grid;
use crate::immersion::SampledImmersion;
use crate::scalar::{cross3, dot, norm, pairwise_sum, Real};
use crate::stencil::{d01, d1, d2};
use crate::tol::{FdOrder, Settings};

/// Index of the unordered pair `(i, j)` in `(00, 01, 11)` storage.
#[inline]
pub fn pair(i: usize, j: usize) -> usize {
    i + j
}

/// Per-sample differential data. Symmetric 2-tensors are stored as `[t00, t01, t11]`;
/// curves use only the first entry.
#[derive(Clone, Debug)]
pub struct GeometryFields<T> {
    pub n: usize,
    pub m: usize,
    pub order: FdOrder,
    /// Boundary samples excluded on each non-periodic axis.
    pub trim_band: usize,
    pub grid: Grid<T>,
    /// `dx[i]` is `∂_i x` as a flat m-vector field.
    pub dx: Vec<Vec<T>>,
    /// `ddx[pair(i,j)]` is `∂_i ∂_j x`.
    pub ddx: Vec<Vec<T>>,
    pub g: Vec<[T; 3]>,
    pub g_inv: Vec<[T; 3]>,
    pub sqrt_det_g: Vec<T>,
    /// `christoffel[s][3k + pair(i,j)] = Γ^k_ij`.
    pub christoffel: Vec<[T; 6]>,
    /// Mean curvature vector, flat m-vector field.
    pub h: Vec<T>,
    pub alpha: Vec<T>,
    pub k: Option<Vec<T>>,
    pub normal: Option<Vec<T>>,
    /// Principal curvatures, descending; second entry unused for curves.
    pub principal: Option<Vec<[T; 2]>>,
}

fn pairs(n: usize) -> &'static [(usize, usize)] {
    if n == 1 {
        &[(0, 0)]
    } else {
        &[(0, 0), (0, 1), (1, 1)]
    }
}

/// First fundamental form and connection coefficients.
pub fn induced_metric<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<GeometryFields<T>> {
    let grid = s.grid().clone();
    let n = s.intrinsic_dim();
    let m = s.ambient_dim();
    let order = settings.order;
    let x = s.points();
    let dx: Vec<Vec<T>> = (0..n).map(|i| d1(&grid, i, order, x, m)).collect();
    let mut ddx = vec![Vec::new(); 3];
    ddx[0] = d2(&grid, 0, order, x, m);
    if n == 2 {
        ddx[1] = d01(&grid, order, x, m);
        ddx[2] = d2(&grid, 1, order, x, m);
    }
    let len = grid.len();
    let band = settings.band();
    let mut g = vec![[T::zero(); 3]; len];
    let mut g_inv = vec![[T::zero(); 3]; len];
    let mut sqrt_det_g = vec![T::zero(); len];
    let mut christoffel = vec![[T::zero(); 6]; len];
    let scale = s.scale().max(s.extent(&(0..len).collect::<Vec<_>>()));
    let floor = T::lit(settings.tol.reg_eps) * scale.powi(2 * n as i32);
    let first_bad = std::sync::atomic::AtomicUsize::new(usize::MAX);
    g.par_iter_mut()
        .zip(g_inv.par_iter_mut())
        .zip(sqrt_det_g.par_iter_mut())
        .zip(christoffel.par_iter_mut())
        .enumerate()
        .for_each(|(p, (((gp, gi), sd), ch))| {
            let xi = |i: usize| &dx[i][p * m..(p + 1) * m];
            let xij = |k: usize| &ddx[k][p * m..(p + 1) * m];
            let det;
            if n == 1 {
                gp[0] = dot(xi(0), xi(0));
                det = gp[0];
                gi[0] = T::one() / gp[0];
            } else {
                gp[0] = dot(xi(0), xi(0));
                gp[1] = dot(xi(0), xi(1));
                gp[2] = dot(xi(1), xi(1));
                det = gp[0] * gp[2] - gp[1] * gp[1];
                gi[0] = gp[2] / det;
                gi[1] = -gp[1] / det;
                gi[2] = gp[0] / det;
            }
            *sd = det.max(T::zero()).sqrt();
            if !(det > floor) && grid.is_interior(p, band) {
                first_bad.fetch_min(p, std::sync::atomic::Ordering::Relaxed);
            }
            for &(i, j) in pairs(n) {
                let q = pair(i, j);
                let lower: Vec<T> = (0..n).map(|l| dot(xij(q), xi(l))).collect();
                for k in 0..n {
                    let mut acc = T::zero();
                    for (l, &v) in lower.iter().enumerate() {
                        acc = acc + inv_at(gi, n, k, l) * v;
                    }
                    ch[3 * k + q] = acc;
                }
            }
        });
    let bad = first_bad.into_inner();
    if bad != usize::MAX {
        return Err(GeoError::DegenerateMetric { index: bad });
    }
    Ok(GeometryFields {
        n,
        m,
        order,
        trim_band: band,
        grid,
        dx,
        ddx,
        g,
        g_inv,
        sqrt_det_g,
        christoffel,
        h: Vec::new(),
        alpha: Vec::new(),
        k: None,
        normal: None,
        principal: None,
    })
}

#[inline]
fn inv_at<T: Real>(gi: &[T; 3], n: usize, k: usize, l: usize) -> T {
    if n == 1 {
        gi[0]
    } else {
        gi[pair(k, l)]
    }
}

/// Samples whose metric determinant falls below the regularity floor (boundary band included).
pub fn regularity_violations<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Vec<usize> {
    let relaxed = Settings { trim: Some(usize::MAX / 4), ..settings.clone() };
    let Ok(f) = induced_metric(s, &relaxed) else { return Vec::new() };
    let n = s.intrinsic_dim();
    let scale = s.scale().max(s.extent(&(0..s.len()).collect::<Vec<_>>()));
    let floor = T::lit(settings.tol.reg_eps) * scale.powi(2 * n as i32);
    (0..s.len()).filter(|&p| !(f.sqrt_det_g[p] * f.sqrt_det_g[p] > floor)).collect()
}

/// Metric plus mean curvature vector `H = −Δx/n`.
pub fn mean_curvature_vector<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<GeometryFields<T>> {
    let mut f = induced_metric(s, settings)?;
    let lap = f.laplace_of_position();
    let nn = T::of(f.n);
    f.h = lap.iter().map(|&v| -v / nn).collect();
    f.alpha = f.h.chunks(f.m).map(norm).collect();
    Ok(f)
}

impl<T: Real> GeometryFields<T> {
    /// `Δx` from the stored derivatives of x.
    pub fn laplace_of_position(&self) -> Vec<T> {
        self.laplace_from_derivatives(&self.dx, &self.ddx, self.m)
    }

    /// Laplace–Beltrami `Δφ = −g^{ij}(φ_ij − Γ^k_ij φ_k)` of a field with `comps` components per sample.
    pub fn laplace_beltrami(&self, phi: &[T], comps: usize) -> Vec<T> {
        let (d, dd) = self.derivatives(phi, comps);
        self.laplace_from_derivatives(&d, &dd, comps)
    }

    /// First and second coordinate derivatives of a field.
    pub fn derivatives(&self, phi: &[T], comps: usize) -> (Vec<Vec<T>>, Vec<Vec<T>>) {
        let d: Vec<Vec<T>> = (0..self.n).map(|i| d1(&self.grid, i, self.order, phi, comps)).collect();
        let mut dd = vec![Vec::new(); 3];
        dd[0] = d2(&self.grid, 0, self.order, phi, comps);
        if self.n == 2 {
            dd[1] = d01(&self.grid, self.order, phi, comps);
            dd[2] = d2(&self.grid, 1, self.order, phi, comps);
        }
        (d, dd)
    }

    fn laplace_from_derivatives(&self, d: &[Vec<T>], dd: &[Vec<T>], comps: usize) -> Vec<T> {
        let n = self.n;
        let mut out = vec![T::zero(); self.grid.len() * comps];
        out.par_chunks_mut(comps).enumerate().for_each(|(p, o)| {
            let gi = &self.g_inv[p];
            let ch = &self.christoffel[p];
            for (c, slot) in o.iter_mut().enumerate() {
                let mut acc = T::zero();
                for i in 0..n {
                    for j in 0..n {
                        let q = pair(i, j);
                        let mut v = dd[q][p * comps + c];
                        for k in 0..n {
                            v = v - ch[3 * k + q] * d[k][p * comps + c];
                        }
                        acc = acc + inv_at(gi, n, i, j) * v;
                    }
                }
                *slot = -acc;
            }
        });
        out
    }

    /// Squared gradient norm `g^{ij} φ_i φ_j` of a scalar field, with its coordinate derivatives.
    pub fn grad_norm2(&self, phi: &[T]) -> (Vec<T>, Vec<Vec<T>>) {
        let d: Vec<Vec<T>> = (0..self.n).map(|i| d1(&self.grid, i, self.order, phi, 1)).collect();
        let v = (0..self.grid.len())
            .map(|p| {
                let mut acc = T::zero();
                for i in 0..self.n {
                    for j in 0..self.n {
                        acc = acc + inv_at(&self.g_inv[p], self.n, i, j) * d[i][p] * d[j][p];
                    }
                }
                acc
            })
            .collect();
        (v, d)
    }

    /// Metric as a dense `n×n` row-major matrix.
    pub fn metric_at(&self, p: usize) -> Vec<T> {
        if self.n == 1 {
            vec![self.g[p][0]]
        } else {
            let g = self.g[p];
            vec![g[0], g[1], g[1], g[2]]
        }
    }

    /// Untrimmed sample indices.
    pub fn interior(&self) -> Vec<usize> {
        self.grid.interior(self.trim_band)
    }

    /// Samples away from the doubled band required by nested differences.
    pub fn nested_interior(&self) -> Vec<usize> {
        self.grid.interior(2 * self.trim_band)
    }

    /// Surface measure weights `w √det g`.
    pub fn area_weights(&self) -> Vec<T> {
        self.grid.quadrature_weights().iter().zip(&self.sqrt_det_g).map(|(&w, &s)| w * s).collect()
    }

    /// Integral of a scalar field against the induced measure.
    pub fn integrate(&self, field: &[T]) -> T {
        let terms: Vec<T> = self.area_weights().iter().zip(field).map(|(&w, &f)| w * f).collect();
        pairwise_sum(&terms)
    }

    /// Unit normal and principal curvatures of a hypersurface.
    pub fn hypersurface_shape(&mut self) -> Result<()> {
        let (n, m) = (self.n, self.m);
        if m != n + 1 {
            return Err(GeoError::Input(format!("shape operator needs a hypersurface, got n={n}, m={m}")));
        }
        let len = self.grid.len();
        let mut normal = vec![T::zero(); len * m];
        let mut principal = vec![[T::zero(); 2]; len];
        let interior_band = self.trim_band;
        for p in 0..len {
            let nu: Vec<T> = if n == 1 {
                let t = &self.dx[0][p * m..(p + 1) * m];
                vec![t[1], -t[0]]
            } else {
                let a = &self.dx[0][p * m..(p + 1) * m];
                let b = &self.dx[1][p * m..(p + 1) * m];
                cross3(a, b).to_vec()
            };
            let len_nu = norm(&nu);
            let ref_len = if n == 1 { self.g[p][0].sqrt() } else { (self.g[p][0] * self.g[p][2]).sqrt() };
            if !(len_nu > T::lit(1e-8) * ref_len) {
                if self.grid.is_interior(p, interior_band) {
                    return Err(GeoError::NormalUndefined { index: p });
                }
                continue;
            }
            let nu: Vec<T> = nu.iter().map(|&v| v / len_nu).collect();
            let b: Vec<T> = (0..3)
                .map(|q| if n == 1 && q > 0 { T::zero() } else { -dot(&self.ddx[q][p * m..(p + 1) * m], &nu) })
                .collect();
            if n == 1 {
                principal[p] = [b[0] / self.g[p][0], T::zero()];
            } else {
                principal[p] = principal_pair(&self.g[p], &[b[0], b[1], b[2]]);
            }
            normal[p * m..(p + 1) * m].copy_from_slice(&nu);
        }
        self.normal = Some(normal);
        self.principal = Some(principal);
        Ok(())
    }

    /// Intrinsic Gauss curvature via the Brioschi formula on differentiated metric fields.
    pub fn gauss_curvature(&mut self) -> Result<()> {
        if self.n != 2 {
            return Err(GeoError::Input("Gauss curvature needs a surface".into()));
        }
        let comp = |k: usize| self.g.iter().map(|g| g[k]).collect::<Vec<T>>();
        let (e, f, gg) = (comp(0), comp(1), comp(2));
        let o = self.order;
        let gr = &self.grid;
        let (e_u, e_v) = (d1(gr, 0, o, &e, 1), d1(gr, 1, o, &e, 1));
        let (f_u, f_v) = (d1(gr, 0, o, &f, 1), d1(gr, 1, o, &f, 1));
        let (g_u, g_v) = (d1(gr, 0, o, &gg, 1), d1(gr, 1, o, &gg, 1));
        let e_vv = d2(gr, 1, o, &e, 1);
        let f_uv = d01(gr, o, &f, 1);
        let g_uu = d2(gr, 0, o, &gg, 1);
        let half = T::lit(0.5);
        let k = (0..gr.len())
            .map(|p| {
                let (ee, ff, g2) = (e[p], f[p], gg[p]);
                let a = [
                    -half * e_vv[p] + f_uv[p] - half * g_uu[p],
                    half * e_u[p],
                    f_u[p] - half * e_v[p],
                    f_v[p] - half * g_u[p],
                    ee,
                    ff,
                    half * g_v[p],
                    ff,
                    g2,
                ];
                let b = [T::zero(), half * e_v[p], half * g_u[p], half * e_v[p], ee, ff, half * g_u[p], ff, g2];
                let det = ee * g2 - ff * ff;
                (det3(&a) - det3(&b)) / (det * det)
            })
            .collect();
        self.k = Some(k);
        Ok(())
    }
}

fn det3<T: Real>(a: &[T; 9]) -> T {
    a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6])
}

/// Eigenvalues of `g^{-1} b` for 2×2 symmetric `g` (positive definite) and `b`, descending.
pub fn principal_pair<T: Real>(g: &[T; 3], b: &[T; 3]) -> [T; 2] {
    let det = g[0] * g[2] - g[1] * g[1];
    let tr = (g[2] * b[0] - T::lit(2.0) * g[1] * b[1] + g[0] * b[2]) / det;
    let dt = (b[0] * b[2] - b[1] * b[1]) / det;
    let mean = tr / T::lit(2.0);
    let disc = (mean * mean - dt).max(T::zero()).sqrt();
    [mean + disc, mean - disc]
}

/// Total area (or length) using the grid quadrature.
pub fn total_area<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<T> {
    let relaxed = Settings { trim: Some(usize::MAX / 4), ..settings.clone() };
    let f = induced_metric(s, &relaxed)?;
    Ok(f.integrate(&vec![T::one(); s.len()]))
}

/// Outcome of the first-variation test.
#[derive(Clone, Debug)]
pub struct FirstVariation<T> {
    /// Central difference of total area along `x + t f c`.
    pub a_numeric: T,
    /// `∫⟨Δx, c⟩ f dA = −n ∫⟨H, c⟩ f dA`.
    pub a_formula: T,
    /// `∫⟨H, c⟩ f dA` without the `−n` factor.
    pub h_c_integral: T,
    pub area: T,
    pub delta: T,
}

pub fn first_variation_area<T: Real>(
    s: &SampledImmersion<T>,
    c: &[T],
    f: &[T],
    settings: &Settings,
) -> Result<FirstVariation<T>> {
    let m = s.ambient_dim();
    if c.len() != m || f.len() != s.len() {
        return Err(GeoError::Input("variation field dimensions do not match the immersion".into()));
    }
    let grid = s.grid();
    let fmax = f.iter().fold(T::zero(), |a, v| a.max(v.abs()));
    if !grid.all_periodic() {
        let band = settings.nested_band();
        let cut = fmax * T::lit(1e-12);
        if (0..s.len()).any(|p| !grid.is_interior(p, band) && f[p].abs() > cut) {
            return Err(GeoError::NotCompact);
        }
    }
    let fields = mean_curvature_vector(s, settings)?;
    let n = T::of(s.intrinsic_dim());
    let h_c: Vec<T> = (0..s.len()).map(|p| dot(&fields.h[p * m..(p + 1) * m], c) * f[p]).collect();
    let h_c_integral = fields.integrate(&h_c);
    let area = fields.integrate(&vec![T::one(); s.len()]);
    let cn = norm(c);
    if fmax == T::zero() || cn == T::zero() {
        return Ok(FirstVariation { a_numeric: T::zero(), a_formula: T::zero(), h_c_integral, area, delta: T::zero() });
    }
    let extent = s.extent(&(0..s.len()).collect::<Vec<_>>());
    let delta = T::lit(1e-4) * extent / (fmax * cn);
    let moved = |t: T| -> Result<T> {
        let mut pts = s.points().to_vec();
        for p in 0..s.len() {
            for k in 0..m {
                pts[p * m + k] = pts[p * m + k] + t * f[p] * c[k];
            }
        }
        total_area(&s.with_points(m, pts, s.label.clone())?, settings)
    };
    let a_numeric = (moved(delta)? - moved(-delta)?) / (T::lit(2.0) * delta);
    Ok(FirstVariation { a_numeric, a_formula: -n * h_c_integral, h_c_integral, area, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;
    use std::f64::consts::{PI, TAU};

    fn sphere(r: f64, n0: usize, n1: usize) -> SampledImmersion<f64> {
        let g = Grid::surface(Axis::new(n0, 0.3, PI - 0.3, false).unwrap(), Axis::new(n1, 0.0, TAU, true).unwrap()).unwrap();
        SampledImmersion::from_fn(g, 3, "sphere", |p| {
            vec![r * p[0].sin() * p[1].cos(), r * p[0].sin() * p[1].sin(), r * p[0].cos()]
        })
        .unwrap()
    }

    fn circle(r: f64, n: usize) -> SampledImmersion<f64> {
        let g = Grid::curve(n, 0.0, TAU * r, true).unwrap();
        SampledImmersion::from_fn(g, 2, "circle", |p| vec![r * (p[0] / r).cos(), r * (p[0] / r).sin()]).unwrap()
    }

    #[test]
    fn unit_speed_circle_has_unit_metric() {
        let f = induced_metric(&circle(1.0, 1024), &Settings::default()).unwrap();
        assert!(f.g.iter().all(|g| (g[0] - 1.0).abs() <= 1e-10));
    }

    #[test]
    fn sphere_metric_matches_chart_formula() {
        let s = sphere(2.0, 64, 128);
        let f = induced_metric(&s, &Settings::default()).unwrap();
        for p in f.interior() {
            let th = s.grid().params(p)[0];
            assert!((f.g[p][0] - 4.0).abs() < 1e-5);
            assert!(f.g[p][1].abs() < 1e-8);
            assert!((f.g[p][2] - 4.0 * th.sin().powi(2)).abs() < 1e-5);
        }
    }

    #[test]
    fn laplacian_of_constant_is_exactly_zero() {
        let s = sphere(1.0, 32, 64);
        let f = induced_metric(&s, &Settings::default()).unwrap();
        let out = f.laplace_beltrami(&vec![0.7; s.len()], 1);
        assert!(out.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn circle_eigenfunction() {
        let c = circle(1.0, 1024);
        let f = induced_metric(&c, &Settings::default()).unwrap();
        let phi: Vec<f64> = c.grid().axis(0).coords().iter().map(|s| s.cos()).collect();
        let out = f.laplace_beltrami(&phi, 1);
        for (o, p) in out.iter().zip(&phi) {
            assert!((o - p).abs() < 1e-8);
        }
    }

    #[test]
    fn sphere_mean_curvature_and_shape() {
        let s = sphere(2.0, 96, 192);
        let mut f = mean_curvature_vector(&s, &Settings::default()).unwrap();
        f.hypersurface_shape().unwrap();
        f.gauss_curvature().unwrap();
        let pr = f.principal.as_ref().unwrap();
        let k = f.k.as_ref().unwrap();
        for p in f.nested_interior() {
            assert!((f.alpha[p] - 0.5).abs() < 1e-5);
            assert!((pr[p][0] - 0.5).abs() < 1e-5 && (pr[p][1] - 0.5).abs() < 1e-5);
            assert!((k[p] - pr[p][0] * pr[p][1]).abs() < 1e-3 * 0.25);
            assert!((2.0 * f.alpha[p] - (pr[p][0] + pr[p][1]).abs()).abs() < 1e-5);
        }
    }

    #[test]
    fn beltrami_identity_is_exact() {
        let s = sphere(1.5, 32, 64);
        let f = mean_curvature_vector(&s, &Settings::default()).unwrap();
        let lap = f.laplace_of_position();
        for (l, h) in lap.iter().zip(&f.h) {
            assert_eq!(l + 2.0 * h, 0.0);
        }
    }

    #[test]
    fn planar_curve_principal_curvature_sign() {
        let c = circle(2.0, 128);
        let mut f = mean_curvature_vector(&c, &Settings::default()).unwrap();
        f.hypersurface_shape().unwrap();
        assert!(f.principal.unwrap().iter().all(|k| (k[0] - 0.5).abs() < 1e-6));
    }

    #[test]
    fn collapsed_surface_is_degenerate() {
        let g = Grid::surface(Axis::new(16, 0.0, 1.0, false).unwrap(), Axis::new(16, 0.0, 1.0, false).unwrap()).unwrap();
        let s = SampledImmersion::from_fn(g, 3, "line", |p| vec![p[0], 0.0, 0.0]).unwrap();
        assert!(matches!(induced_metric(&s, &Settings::default()), Err(GeoError::DegenerateMetric { .. })));
        assert!(!regularity_violations(&s, &Settings::default()).is_empty());
    }

    #[test]
    fn zero_variation_is_zero() {
        let s = sphere(1.0, 32, 64);
        let v = first_variation_area(&s, &[0.0, 0.0, 1.0], &vec![0.0; s.len()], &Settings::default()).unwrap();
        assert_eq!((v.a_numeric, v.a_formula), (0.0, 0.0));
    }

    #[test]
    fn variation_touching_boundary_is_rejected() {
        let s = sphere(1.0, 32, 64);
        let f = vec![1.0; s.len()];
        assert!(matches!(first_variation_area(&s, &[0.0, 0.0, 1.0], &f, &Settings::default()), Err(GeoError::NotCompact)));
    }
}
