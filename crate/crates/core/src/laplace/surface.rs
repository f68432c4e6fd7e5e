use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::geometry::{mean_curvature_vector, GeometryFields};
use crate::immersion::SampledImmersion;
use crate::report::Residual;
use crate::scalar::{dot, norm, Real};
use crate::tol::Settings;

use super::inverse_extent;

/// A per-sample residual field with its summary.
#[derive(Clone, Debug)]
pub struct FieldVerdict<T> {
    pub field: Vec<T>,
    pub residual: Residual,
}

/// Orthonormal principal frame at one sample: principal curvatures (descending) and the
/// coordinate components of their unit eigenvectors.
pub(crate) fn principal_frame<T: Real>(g: &[T; 3], b: &[T; 3]) -> ([T; 2], [[T; 2]; 2]) {
    // g = LLᵀ, B = L⁻¹ b L⁻ᵀ, eigenvectors mapped back by L⁻ᵀ
    let l00 = g[0].sqrt();
    let l10 = g[1] / l00;
    let l11 = (g[2] - l10 * l10).max(T::min_positive_value()).sqrt();
    let i00 = T::one() / l00;
    let i11 = T::one() / l11;
    let i10 = -l10 * i00 * i11;
    // B = Li b Liᵀ with Li = [[i00, 0], [i10, i11]]
    let b00 = i00 * i00 * b[0];
    let b01 = i00 * (i10 * b[0] + i11 * b[1]);
    let b11 = i10 * i10 * b[0] + T::lit(2.0) * i10 * i11 * b[1] + i11 * i11 * b[2];
    let half = T::lit(0.5);
    let mean = half * (b00 + b11);
    let r = (half * (b00 - b11)).hypot(b01);
    let phi = half * (T::lit(2.0) * b01).atan2(b00 - b11);
    let (s, c) = phi.sin_cos();
    let w = [[c, s], [-s, c]];
    // v = Liᵀ w
    let v = w.map(|w| [i00 * w[0] + i10 * w[1], i11 * w[1]]);
    ([mean + r, mean - r], v)
}

/// Second fundamental form `[b00, b01, b11]` along the stored unit normal.
pub(crate) fn second_form<T: Real>(f: &GeometryFields<T>, p: usize) -> [T; 3] {
    let m = f.m;
    let nu = &f.normal.as_ref().expect("normal computed")[p * m..(p + 1) * m];
    [0, 1, 2].map(|q| -dot(&f.ddx[q][p * m..(p + 1) * m], nu))
}

pub(crate) fn apply_g<T: Real>(g: &[T; 3], a: &[T; 2], b: &[T; 2]) -> T {
    g[0] * a[0] * b[0] + g[1] * (a[0] * b[1] + a[1] * b[0]) + g[2] * a[1] * b[1]
}

/// Coordinate components of `grad φ` from its coordinate derivatives.
pub(crate) fn raise<T: Real>(gi: &[T; 3], d0: T, d1: T) -> [T; 2] {
    [gi[0] * d0 + gi[1] * d1, gi[1] * d0 + gi[2] * d1]
}

#[derive(Clone, Debug, Serialize)]
pub struct ConformalSurfaceReport {
    /// `|sin|` of the angle between `∇α²` and the nearest principal direction, where `∇α²` is not negligible.
    pub principal_direction: Residual,
    /// `|K − α² + |∇α|⁴/(16α⁶)|` relative to the mean of `α²`.
    pub gauss: Residual,
    /// Largest absolute value of the same defect.
    pub gauss_abs_sup: f64,
    /// `|Δα² − 4α⁴ + 5|∇α|²|` relative to the mean of `α⁴`, where `∇α²` is not negligible.
    pub laplacian: Residual,
    /// Fraction of trusted samples where `∇α²` exceeds the gradient floor.
    pub gradient_region: f64,
    pub holds: bool,
}

/// The three conditions characterizing surfaces of E³ with conformal Laplace transformation.
pub fn conformal_surface_report_e3<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<ConformalSurfaceReport> {
    if s.intrinsic_dim() != 2 || s.ambient_dim() != 3 {
        return Err(GeoError::Input("conformal surface conditions need a surface in E³".into()));
    }
    let tol = &settings.tol;
    let mut f = mean_curvature_vector(s, settings)?;
    f.hypersurface_shape()?;
    let trusted = f.nested_interior();
    let scale = inverse_extent(s, &f.interior());
    let floor = T::lit(tol.rank_floor) * scale;
    if let Some(&p) = trusted.iter().find(|&&p| f.alpha[p] <= floor) {
        return Err(GeoError::MeanCurvatureVanishes { index: p });
    }
    let a2: Vec<T> = f.alpha.iter().map(|&a| a * a).collect();
    let (grad2, d) = f.grad_norm2(&a2);
    let lap_a2 = f.laplace_beltrami(&a2, 1);
    let mean_a = trusted.iter().map(|&p| f.alpha[p].f64()).sum::<f64>() / trusted.len() as f64;
    let grad_cut = tol.grad_floor * mean_a.powi(3);

    let mut angle = Vec::new();
    let mut gauss = Vec::new();
    let mut gauss_abs = 0.0f64;
    let mut lap = Vec::new();
    let mut region = 0usize;
    for &p in &trusted {
        let b = second_form(&f, p);
        let (k, e) = principal_frame(&f.g[p], &b);
        let alpha = f.alpha[p].f64();
        let g_a2 = grad2[p].max(T::zero()).f64();
        // |∇α|² = |∇α²|² / (4α²)
        let g_a = g_a2 / (4.0 * alpha * alpha);
        let defect = (k[0] * k[1]).f64() - alpha * alpha + g_a * g_a / (16.0 * alpha.powi(6));
        gauss_abs = gauss_abs.max(defect.abs());
        gauss.push(defect.abs() / (mean_a * mean_a));
        if g_a2.sqrt() > grad_cut {
            region += 1;
            let v = raise(&f.g_inv[p], d[0][p], d[1][p]);
            let len = apply_g(&f.g[p], &v, &v).sqrt();
            let c0 = apply_g(&f.g[p], &v, &e[0]) / len;
            let c1 = apply_g(&f.g[p], &v, &e[1]) / len;
            let umbilic = (k[0] - k[1]).abs().f64() <= tol.angle_tol * mean_a;
            angle.push(if umbilic { 0.0 } else { c0.abs().min(c1.abs()).f64() });
            let l = lap_a2[p].f64() - 4.0 * alpha.powi(4) + 5.0 * g_a;
            lap.push(l.abs() / mean_a.powi(4));
        }
    }
    let principal_direction = Residual::from_values(&angle, tol.angle_tol);
    let gauss = Residual::from_values(&gauss, tol.const_tol);
    let laplacian = Residual::from_values(&lap, tol.const_tol);
    let holds = principal_direction.holds && gauss.holds && laplacian.holds;
    Ok(ConformalSurfaceReport {
        principal_direction,
        gauss,
        gauss_abs_sup: gauss_abs,
        laplacian,
        gradient_region: region as f64 / trusted.len() as f64,
        holds,
    })
}

/// `‖Δ²x‖` per sample; the Laplace map is harmonic when it vanishes.
pub fn biharmonic_residual<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<FieldVerdict<T>> {
    let f = mean_curvature_vector(s, settings)?;
    let m = f.m;
    let l = f.laplace_of_position();
    let ll = f.laplace_beltrami(&l, m);
    let field: Vec<T> = ll.chunks(m).map(norm).collect();
    let scale = inverse_extent(s, &f.interior()).f64();
    let residual = Residual::of(&field, &f.nested_interior(), settings.tol.fd_tol * scale.powi(3));
    Ok(FieldVerdict { field, residual })
}

/// `|Δα|` per sample, judged against the cube of the largest mean curvature.
pub fn harmonic_mean_curvature_residual<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<FieldVerdict<T>> {
    let f = mean_curvature_vector(s, settings)?;
    let lap = f.laplace_beltrami(&f.alpha, 1);
    let field: Vec<T> = lap.iter().map(|v| v.abs()).collect();
    let trusted = f.nested_interior();
    let alpha_scale = trusted.iter().map(|&p| f.alpha[p].f64()).fold(0.0, f64::max);
    let residual = Residual::of(&field, &trusted, settings.tol.fd_tol * alpha_scale.powi(3));
    Ok(FieldVerdict { field, residual })
}
