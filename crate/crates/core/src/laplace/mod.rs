//! Laplace maps of sampled immersions and the classifiers built on them.

mod image;
mod lg;
mod spherical;
mod surface;

pub use image::{image_fit, laplace_image_fit, totally_real_check, TotallyRealReport};
pub use lg::{lg_hypersurface, LgReport, LgVariant};
pub use spherical::{spherical_laplace, SphericalLaplace};
pub use surface::{
    biharmonic_residual, conformal_surface_report_e3, harmonic_mean_curvature_residual, ConformalSurfaceReport,
    FieldVerdict,
};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::generators::{generate, Params};
use crate::geometry::{mean_curvature_vector, principal_pair, GeometryFields};
use crate::immersion::SampledImmersion;
use crate::report::{AnalysisReport, Residual, Verdict};
use crate::scalar::{dot, mean_std, norm, Real};
use crate::tol::Settings;

/// Laplace map `L = Δx` with its pullback metric and per-sample rank.
#[derive(Clone, Debug)]
pub struct LaplaceResult<T> {
    pub l: SampledImmersion<T>,
    /// `∂_i L` as flat m-vector fields.
    pub dl: Vec<Vec<T>>,
    /// Pullback metric `⟨∂_i L, ∂_j L⟩` stored as `[t00, t01, t11]`.
    pub g_l: Vec<[T; 3]>,
    /// Rank of dL per sample.
    pub rank: Vec<usize>,
    pub degenerate: bool,
    /// Largest `‖L‖` over the untrimmed samples.
    pub sup_norm: T,
    /// Inverse extent of the source, the unit for `‖L‖`.
    pub scale: T,
    pub fields: GeometryFields<T>,
    pub source: String,
}

impl<T: Real> LaplaceResult<T> {
    /// Samples where quantities differentiated from L are trusted.
    pub fn trusted(&self) -> Vec<usize> {
        self.fields.nested_interior()
    }

    pub fn pullback_at(&self, p: usize) -> [T; 3] {
        self.g_l[p]
    }
}

/// Inverse extent of the untrimmed part of `s`.
pub(crate) fn inverse_extent<T: Real>(s: &SampledImmersion<T>, samples: &[usize]) -> T {
    let e = s.extent(samples);
    if e > T::zero() {
        T::one() / e
    } else {
        T::one()
    }
}

/// Stretch factors squared of dL: eigenvalues of `g⁻¹ g_L`, descending.
fn stretches<T: Real>(g: &[T; 3], g_l: &[T; 3], n: usize) -> [T; 2] {
    if n == 1 {
        [g_l[0] / g[0], T::zero()]
    } else {
        principal_pair(g, g_l)
    }
}

pub(crate) fn pullback<T: Real>(d: &[Vec<T>], n: usize, m: usize, p: usize) -> [T; 3] {
    let a = &d[0][p * m..(p + 1) * m];
    if n == 1 {
        return [dot(a, a), T::zero(), T::zero()];
    }
    let b = &d[1][p * m..(p + 1) * m];
    [dot(a, a), dot(a, b), dot(b, b)]
}

fn laplace_from_fields<T: Real>(
    s: &SampledImmersion<T>,
    fields: GeometryFields<T>,
    l_points: Vec<T>,
    settings: &Settings,
) -> Result<LaplaceResult<T>> {
    let (n, m) = (fields.n, fields.m);
    let interior = fields.interior();
    let scale = inverse_extent(s, &interior);
    let l = s.with_points(m, l_points, format!("laplace of {}", s.label))?;
    let (dl, _) = fields.derivatives(l.points(), m);
    let g_l: Vec<[T; 3]> = (0..s.len()).into_par_iter().map(|p| pullback(&dl, n, m, p)).collect();
    let sup_norm = interior.iter().map(|&p| norm(l.point(p))).fold(T::zero(), T::max);
    let degenerate = sup_norm <= T::lit(settings.tol.fd_tol) * scale;
    let floor = T::lit(settings.tol.fd_tol) * scale * scale;
    let rel = T::lit(settings.tol.rank_tol);
    let rank = (0..s.len())
        .into_par_iter()
        .map(|p| {
            let st = stretches(&fields.g[p], &g_l[p], n);
            let sig = [st[0].max(T::zero()).sqrt(), st[1].max(T::zero()).sqrt()];
            let cut = (sig[0] * rel).max(floor);
            sig[..n].iter().filter(|&&v| v > cut).count()
        })
        .collect();
    Ok(LaplaceResult { l, dl, g_l, rank, degenerate, sup_norm, scale, fields, source: s.label.clone() })
}

/// `L = Δx` by finite differences, with pullback metric, rank field and degeneracy flag.
pub fn laplace_map<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<LaplaceResult<T>> {
    let fields = mean_curvature_vector(s, settings)?;
    let l = fields.laplace_of_position();
    laplace_from_fields(s, fields, l, settings)
}

/// Closed-form Laplace map of a catalogue entry together with its deviation from the generic one.
#[derive(Clone, Debug)]
pub struct ClosedFormLaplace {
    pub result: LaplaceResult<f64>,
    /// Largest `‖L_closed − L_fd‖` over untrimmed samples, relative to the largest `‖L_closed‖`.
    pub deviation: f64,
}

pub fn closed_form_laplace(name: &str, params: &Params, counts: &[usize], settings: &Settings) -> Result<ClosedFormLaplace> {
    let g = generate(name, params, counts, &settings.tol)?;
    let Some(exact) = g.laplace else {
        return Err(GeoError::NoClosedForm(name.to_string()));
    };
    let s = g.immersion;
    let m = s.ambient_dim();
    let fields = mean_curvature_vector(&s, settings)?;
    let fd = fields.laplace_of_position();
    let interior = fields.interior();
    let mut worst = 0.0f64;
    let mut size = 0.0f64;
    for &p in &interior {
        let e = &exact[p * m..(p + 1) * m];
        let d: Vec<f64> = e.iter().zip(&fd[p * m..(p + 1) * m]).map(|(a, b)| a - b).collect();
        worst = worst.max(norm(&d));
        size = size.max(norm(e));
    }
    let scale = inverse_extent(&s, &interior);
    let deviation = worst / size.max(scale);
    if deviation > settings.tol.fd_tol {
        return Err(GeoError::ClosedFormMismatch { deviation, tol: settings.tol.fd_tol });
    }
    let result = laplace_from_fields(&s, fields, exact, settings)?;
    Ok(ClosedFormLaplace { result, deviation })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankSummary {
    pub constant: bool,
    /// The rank when constant, else the most frequent one.
    pub rank: usize,
    pub histogram: BTreeMap<usize, usize>,
}

/// Rank of dL over the trusted samples.
pub fn rank_profile<T: Real>(r: &LaplaceResult<T>) -> RankSummary {
    let mut histogram = BTreeMap::new();
    for p in r.trusted() {
        *histogram.entry(r.rank[p]).or_insert(0usize) += 1;
    }
    let rank = histogram.iter().max_by_key(|(k, c)| (**c, std::cmp::Reverse(**k))).map(|(k, _)| *k).unwrap_or(0);
    RankSummary { constant: histogram.len() <= 1, rank, histogram }
}

/// Per-sample conformal factor `ρ² = tr(g_L g⁻¹)/n` and anisotropy `‖g_L − ρ²g‖/(‖g‖ ρ̄²)`.
pub fn conformal_factor<T: Real>(r: &LaplaceResult<T>) -> (Vec<T>, Vec<T>) {
    let n = r.fields.n;
    let nn = T::of(n);
    let rho2: Vec<T> = (0..r.g_l.len())
        .map(|p| {
            let st = stretches(&r.fields.g[p], &r.g_l[p], n);
            (st[0] + if n == 2 { st[1] } else { T::zero() }) / nn
        })
        .collect();
    let trusted = r.trusted();
    let (mean, _) = mean_std(&trusted.iter().map(|&p| rho2[p]).collect::<Vec<_>>());
    let fro = |t: &[T; 3]| if n == 1 { t[0].abs() } else { (t[0] * t[0] + T::lit(2.0) * t[1] * t[1] + t[2] * t[2]).sqrt() };
    let aniso = (0..rho2.len())
        .map(|p| {
            let g = &r.fields.g[p];
            let gl = &r.g_l[p];
            let d = [gl[0] - rho2[p] * g[0], gl[1] - rho2[p] * g[1], gl[2] - rho2[p] * g[2]];
            if mean > T::zero() {
                fro(&d) / (fro(g) * mean)
            } else {
                T::zero()
            }
        })
        .collect();
    (rho2, aniso)
}

/// Homothetic / conformal / weakly conformal classification of the Laplace transformation.
pub fn classify_transformation<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<AnalysisReport> {
    let r = laplace_map(s, settings)?;
    Ok(classify_result(&r, settings))
}

pub fn classify_result<T: Real>(r: &LaplaceResult<T>, settings: &Settings) -> AnalysisReport {
    let tol = &settings.tol;
    let trusted = r.trusted();
    let (rho2, aniso) = conformal_factor(r);
    let rho: Vec<T> = rho2.iter().map(|&v| v.max(T::zero()).sqrt()).collect();
    let vals: Vec<T> = trusted.iter().map(|&p| rho[p]).collect();
    let (c, sd) = mean_std(&vals);
    let rel_sd = if c > T::zero() { (sd / c).f64() } else { f64::INFINITY };
    let anisotropy = Residual::of(&aniso, &trusted, tol.const_tol);
    let inf_rho2 = trusted.iter().map(|&p| rho2[p].f64()).fold(f64::INFINITY, f64::min);
    let positive_floor = tol.fd_tol * (r.scale * r.scale).f64();
    let weakly = anisotropy.holds;
    let conformal = weakly && inf_rho2.sqrt() > positive_floor;
    let homothetic = conformal && rel_sd <= tol.const_tol;
    let c = c.f64();
    let verdict = if r.degenerate {
        Verdict::Degenerate
    } else if homothetic && (c - 1.0).abs() <= tol.const_tol {
        Verdict::Isometric
    } else if homothetic {
        Verdict::Homothetic
    } else if conformal {
        Verdict::Conformal
    } else if weakly {
        Verdict::WeaklyConformal
    } else {
        Verdict::None
    };
    let mut constants = BTreeMap::new();
    constants.insert("c".to_string(), c);
    constants.insert("rho_rel_std".to_string(), rel_sd);
    constants.insert("rho2_min".to_string(), inf_rho2);
    constants.insert("laplace_sup_norm".to_string(), r.sup_norm.f64());
    let mut residuals = BTreeMap::new();
    residuals.insert("anisotropy".to_string(), anisotropy);
    residuals.insert(
        "rho_constancy".to_string(),
        Residual { sup: rel_sd, mean: rel_sd, threshold: tol.const_tol, holds: rel_sd <= tol.const_tol },
    );
    AnalysisReport {
        verdict,
        constants,
        residuals,
        tolerances: tol.clone(),
        trim: r.fields.trim_band,
        trimmed: r.l.len() - trusted.len(),
        source_label: r.source.clone(),
    }
}

#[cfg(test)]
mod tests;
