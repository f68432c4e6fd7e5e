use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::immersion::SampledImmersion;
use crate::report::Residual;
use crate::scalar::{dot, mean_std, norm, Real};
use crate::tol::Settings;

use super::{conformal_factor, laplace_map, LaplaceResult};

#[derive(Clone, Debug, Serialize)]
pub struct SphericalLaplace {
    /// Radius `nᾱ` of the sphere containing the Laplace image.
    pub radius: f64,
    /// `|‖L‖ − nᾱ|` relative to `nᾱ`.
    pub containment: Residual,
    /// Energy density `½ tr(g_L g⁻¹)` per sample.
    pub energy_density: Vec<f64>,
    pub energy_mean: f64,
    pub energy_rel_std: f64,
    pub energy_constant: bool,
    /// Tangential part of `ΔL` along the sphere, in units of the inverse extent cubed.
    pub tension: Residual,
    pub harmonic: bool,
}

/// The Laplace map of a constant mean curvature immersion as a map into the sphere of radius `nα`.
pub fn spherical_laplace<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<SphericalLaplace> {
    let tol = &settings.tol;
    let r: LaplaceResult<T> = laplace_map(s, settings)?;
    let f = &r.fields;
    let interior = f.interior();
    let alphas: Vec<T> = interior.iter().map(|&p| f.alpha[p]).collect();
    let (mean_alpha, sd) = mean_std(&alphas);
    let rel = if mean_alpha > T::zero() { (sd / mean_alpha).f64() } else { f64::INFINITY };
    if !(rel <= tol.const_tol) {
        return Err(GeoError::NonConstantMeanCurvature { rel_std: rel });
    }
    let (n, m) = (f.n, f.m);
    let radius = (T::of(n) * mean_alpha).f64();
    let contain: Vec<f64> = interior.iter().map(|&p| (norm(r.l.point(p)).f64() - radius).abs() / radius).collect();
    let containment = Residual::from_values(&contain, 3.0 * tol.const_tol);

    let (rho2, _) = conformal_factor(&r);
    let nn = T::of(n);
    let energy_density: Vec<f64> = rho2.iter().map(|&v| (T::lit(0.5) * nn * v).f64()).collect();
    let trusted = r.trusted();
    let ev: Vec<f64> = trusted.iter().map(|&p| energy_density[p]).collect();
    let (energy_mean, esd) = mean_std(&ev);
    let energy_rel_std = if energy_mean > 0.0 { esd / energy_mean } else { f64::INFINITY };

    let ll = f.laplace_beltrami(r.l.points(), m);
    let tangential: Vec<T> = (0..s.len())
        .map(|p| {
            let l = r.l.point(p);
            let v = &ll[p * m..(p + 1) * m];
            let ln2 = dot(l, l);
            let c = if ln2 > T::zero() { dot(v, l) / ln2 } else { T::zero() };
            let t: Vec<T> = v.iter().zip(l).map(|(&a, &b)| a - c * b).collect();
            norm(&t)
        })
        .collect();
    let scale = r.scale.f64();
    let tension = Residual::of(&tangential, &trusted, tol.fd_tol * scale.powi(3));
    Ok(SphericalLaplace {
        radius,
        containment,
        energy_density,
        energy_mean,
        energy_rel_std,
        energy_constant: energy_rel_std <= tol.const_tol,
        harmonic: tension.holds,
        tension,
    })
}
