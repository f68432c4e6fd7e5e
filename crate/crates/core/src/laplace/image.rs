use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fit::{fit_all, ImageFit};
use crate::immersion::SampledImmersion;
use crate::report::Residual;
use crate::scalar::{dot, norm, Real};
use crate::tol::Settings;

use super::{laplace_map, LaplaceResult};

/// Containment fits of a point set against the primitive family.
pub fn image_fit(points: &[f64], m: usize, settings: &Settings) -> Result<ImageFit> {
    if m == 0 || points.len() % m != 0 || points.len() / m < 16 {
        return Err(GeoError::Input("image fitting needs at least 16 points".into()));
    }
    Ok(fit_all(points, m, settings.tol.fit_tol))
}

/// Fits the untrimmed samples of a Laplace image.
pub fn laplace_image_fit<T: Real>(r: &LaplaceResult<T>, settings: &Settings) -> Result<ImageFit> {
    let pts: Vec<f64> = r.fields.interior().iter().flat_map(|&p| r.l.point(p).iter().map(|v| v.f64())).collect();
    image_fit(&pts, r.l.ambient_dim(), settings)
}

#[derive(Clone, Debug, Serialize)]
pub struct TotallyRealReport {
    /// `|⟨J∂_i x, ∂_j x⟩|` normalized by `‖∂_i x‖‖∂_j x‖`.
    pub immersion: Residual,
    /// Same for the Laplace map; vacuous when it is degenerate.
    pub laplace: Residual,
    pub laplace_degenerate: bool,
    pub totally_real_immersion: bool,
    pub totally_real_laplace: bool,
}

/// Standard complex structure on coordinate pairs: `(a, b) ↦ (−b, a)`.
fn j<T: Real>(v: &[T]) -> Vec<T> {
    v.chunks(2).flat_map(|c| [-c[1], c[0]]).collect()
}

fn kahler_defect<T: Real>(d: &[Vec<T>], m: usize, samples: &[usize]) -> Vec<f64> {
    samples
        .iter()
        .map(|&p| {
            if d.len() < 2 {
                return 0.0;
            }
            let a = &d[0][p * m..(p + 1) * m];
            let b = &d[1][p * m..(p + 1) * m];
            let den = norm(a) * norm(b);
            if den > T::zero() {
                (dot(&j(a), b) / den).abs().f64()
            } else {
                0.0
            }
        })
        .collect()
}

pub fn totally_real_check<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<TotallyRealReport> {
    let m = s.ambient_dim();
    if m % 2 == 1 {
        return Err(GeoError::OddAmbientDim { m });
    }
    if m != 2 * s.intrinsic_dim() {
        return Err(GeoError::Input(format!("totally real check needs m = 2n, got n={}, m={m}", s.intrinsic_dim())));
    }
    let tol = settings.tol.fd_tol;
    let r = laplace_map(s, settings)?;
    let immersion = Residual::from_values(&kahler_defect(&r.fields.dx, m, &r.fields.interior()), tol);
    let laplace = if r.degenerate {
        Residual::vacuous(tol)
    } else {
        Residual::from_values(&kahler_defect(&r.dl, m, &r.trusted()), tol)
    };
    Ok(TotallyRealReport {
        totally_real_immersion: immersion.holds,
        totally_real_laplace: laplace.holds,
        immersion,
        laplace,
        laplace_degenerate: r.degenerate,
    })
}
