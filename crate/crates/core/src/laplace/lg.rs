use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::geometry::{mean_curvature_vector, GeometryFields};
use crate::immersion::SampledImmersion;
use crate::report::{Residual, Verdict};
use crate::scalar::{dot, mean_std, norm, Real};
use crate::stencil::d1;
use crate::tol::Settings;

use super::surface::{principal_frame, second_form};
use super::{inverse_extent, laplace_map};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LgVariant {
    /// Hypersurface of Euclidean space.
    Euclidean,
    /// Surface of a hypersphere of E⁴, normalized to the unit sphere.
    Spherical,
}

#[derive(Clone, Debug, Serialize)]
pub struct LgReport {
    pub variant: LgVariant,
    /// Radius of the containing sphere (spherical variant).
    pub radius: Option<f64>,
    /// Mean of `g_L(e_i,e_i)/g_G(e_i,e_i)` over nondegenerate principal directions.
    pub ratio: f64,
    pub ratio_rel_std: f64,
    /// Spread between the two principal ratios, relative to their mean.
    pub anisotropy: Residual,
    /// `|g_L(e_1,e_2)|` relative to the mean diagonal of `g_L`.
    pub off_diagonal: Residual,
    /// `g_L` along directions where `g_G` vanishes, in units of the inverse extent to the fourth.
    pub degenerate_stretch: Residual,
    /// Samples with a degenerate Gauss-map direction.
    pub degenerate_samples: usize,
    /// Largest deviation of the principal-frame `g_L` from the pullback of the sampled Laplace map, relative.
    pub pullback_defect: f64,
    pub verdict: Verdict,
    /// Principal-frame `[g11, g12, g22]` of the Laplace and Gauss metrics per trusted sample.
    #[serde(skip)]
    pub g_l: Vec<[f64; 3]>,
    #[serde(skip)]
    pub g_g: Vec<[f64; 3]>,
}

/// Unit vector orthogonal to three vectors of E⁴.
fn normal4<T: Real>(a: &[T], b: &[T], c: &[T]) -> Vec<T> {
    let minor = |k: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != k).collect();
        let e = |v: &[T], i: usize| v[cols[i]];
        e(a, 0) * (e(b, 1) * e(c, 2) - e(b, 2) * e(c, 1)) - e(a, 1) * (e(b, 0) * e(c, 2) - e(b, 2) * e(c, 0))
            + e(a, 2) * (e(b, 0) * e(c, 1) - e(b, 1) * e(c, 0))
    };
    let v: Vec<T> = (0..4).map(|k| if k % 2 == 0 { minor(k) } else { -minor(k) }).collect();
    let l = norm(&v);
    v.iter().map(|&x| x / l).collect()
}

struct Frame<T> {
    k: [T; 2],
    e: [[T; 2]; 2],
}

/// Metrics of the Laplace and Gauss images in the principal frame and the LG-transformation verdict.
pub fn lg_hypersurface<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<LgReport> {
    let (n, m) = (s.intrinsic_dim(), s.ambient_dim());
    if n != 2 || !(m == 3 || m == 4) {
        return Err(GeoError::Input(format!("LG metrics need a surface in E³ or in a sphere of E⁴, got n={n}, m={m}")));
    }
    let tol = &settings.tol;
    if m == 3 {
        let mut f = mean_curvature_vector(s, settings)?;
        f.hypersurface_shape()?;
        let frames: Vec<Frame<T>> = (0..s.len())
            .map(|p| {
                let (k, e) = principal_frame(&f.g[p], &second_form(&f, p));
                Frame { k, e }
            })
            .collect();
        let alpha = f.alpha.clone();
        // g_L = n²α²κ_iκ_jδ_ij + n²(e_iα)(e_jα), g_G = κ_iκ_jδ_ij
        let diag = |fr: &Frame<T>, p: usize| [alpha[p] * fr.k[0], alpha[p] * fr.k[1]];
        let gdiag = |fr: &Frame<T>| [fr.k[0] * fr.k[0], fr.k[1] * fr.k[1]];
        let scale = inverse_extent(s, &f.interior());
        let lap = laplace_map(s, settings)?;
        finish(LgVariant::Euclidean, None, &f, &frames, &alpha, &diag, &gdiag, scale, &lap.dl, settings)
    } else {
        let radii: Vec<T> = s.grid().interior(settings.band()).iter().map(|&p| norm(s.point(p))).collect();
        let (r, sd) = mean_std(&radii);
        if !(r > T::zero()) || (sd / r).f64() > tol.const_tol {
            return Err(GeoError::Input(format!(
                "surface is not contained in a sphere about the origin (relative spread {:.3e})",
                (sd / r).f64()
            )));
        }
        let y = s.scaled(T::one() / r);
        let f = mean_curvature_vector(&y, settings)?;
        let mut frames = Vec::with_capacity(y.len());
        let mut abar = Vec::with_capacity(y.len());
        for p in 0..y.len() {
            let xi = normal4(y.point(p), &f.dx[0][p * 4..p * 4 + 4], &f.dx[1][p * 4..p * 4 + 4]);
            let b = [0, 1, 2].map(|q| dot(&f.ddx[q][p * 4..p * 4 + 4], &xi));
            let (k, e) = principal_frame(&f.g[p], &b);
            abar.push(T::lit(0.5) * (k[0] + k[1]));
            frames.push(Frame { k, e });
        }
        // g_L = n²(ᾱμ_i+1)(ᾱμ_j+1)δ_ij + n²(e_iᾱ)(e_jᾱ), g_G = (μ_iμ_j+1)δ_ij
        let diag = |fr: &Frame<T>, p: usize| [abar[p] * fr.k[0] + T::one(), abar[p] * fr.k[1] + T::one()];
        let gdiag = |fr: &Frame<T>| [fr.k[0] * fr.k[0] + T::one(), fr.k[1] * fr.k[1] + T::one()];
        let lap = laplace_map(&y, settings)?;
        finish(LgVariant::Spherical, Some(r.f64()), &f, &frames, &abar, &diag, &gdiag, T::one(), &lap.dl, settings)
    }
}

#[allow(clippy::too_many_arguments)]
fn finish<T: Real>(
    variant: LgVariant,
    radius: Option<f64>,
    f: &GeometryFields<T>,
    frames: &[Frame<T>],
    scalar: &[T],
    diag: &dyn Fn(&Frame<T>, usize) -> [T; 2],
    gdiag: &dyn Fn(&Frame<T>) -> [T; 2],
    scale: T,
    dl: &[Vec<T>],
    settings: &Settings,
) -> Result<LgReport> {
    let tol = &settings.tol;
    let m = f.m;
    let nn = T::lit(2.0);
    let ds = [d1(&f.grid, 0, f.order, scalar, 1), d1(&f.grid, 1, f.order, scalar, 1)];
    let trusted = f.nested_interior();
    let gfloor = T::lit(tol.fd_tol) * scale;
    let stretch_cut = tol.fd_tol * scale.f64().powi(4);

    let mut g_l = Vec::with_capacity(trusted.len());
    let mut g_g = Vec::with_capacity(trusted.len());
    let mut ratios = Vec::with_capacity(trusted.len());
    let mut aniso = Vec::new();
    let mut offd = Vec::new();
    let mut degenerate_stretch = Vec::new();
    let mut degenerate_samples = 0usize;
    let mut pullback_defect = 0.0f64;
    for &p in &trusted {
        let fr = &frames[p];
        let ea = [0, 1].map(|i| ds[0][p] * fr.e[i][0] + ds[1][p] * fr.e[i][1]);
        let dg = diag(fr, p);
        let gl = [
            nn * nn * (dg[0] * dg[0] + ea[0] * ea[0]),
            nn * nn * ea[0] * ea[1],
            nn * nn * (dg[1] * dg[1] + ea[1] * ea[1]),
        ];
        let gd = gdiag(fr);
        let gg = [gd[0], T::zero(), gd[1]];
        // pullback of the sampled Laplace map along the same frame
        let de = |i: usize| -> Vec<T> {
            (0..m).map(|k| dl[0][p * m + k] * fr.e[i][0] + dl[1][p * m + k] * fr.e[i][1]).collect()
        };
        let (v0, v1) = (de(0), de(1));
        let pb = [dot(&v0, &v0), dot(&v0, &v1), dot(&v1, &v1)];
        let size = (gl[0] + gl[2]).f64().max(f64::MIN_POSITIVE);
        for q in 0..3 {
            pullback_defect = pullback_defect.max((pb[q] - gl[q]).abs().f64() / size);
        }
        let nondeg: Vec<usize> = (0..2).filter(|&i| gd[i].sqrt() > gfloor).collect();
        if nondeg.is_empty() {
            return Err(GeoError::GaussMapDegenerate { index: p });
        }
        if nondeg.len() < 2 {
            degenerate_samples += 1;
            let i = 1 - nondeg[0];
            degenerate_stretch.push(gl[2 * i].f64());
        }
        let q: Vec<f64> = nondeg.iter().map(|&i| (gl[2 * i] / gd[i]).f64()).collect();
        let qm = q.iter().sum::<f64>() / q.len() as f64;
        if q.len() == 2 {
            aniso.push((q[0] - q[1]).abs() / qm);
        }
        offd.push(gl[1].abs().f64() / (0.5 * size));
        ratios.push(qm);
        g_l.push(gl.map(|v| v.f64()));
        g_g.push(gg.map(|v| v.f64()));
    }
    let (ratio, sd) = mean_std(&ratios);
    let ratio_rel_std = if ratio > 0.0 { sd / ratio } else { f64::INFINITY };
    let anisotropy = Residual::from_values(&aniso, tol.const_tol);
    let off_diagonal = Residual::from_values(&offd, tol.const_tol);
    let degenerate_stretch = Residual::from_values(&degenerate_stretch, stretch_cut);
    let weakly = anisotropy.holds && off_diagonal.holds && degenerate_stretch.holds;
    let conformal = weakly && ratio > 0.0;
    let verdict = if conformal && ratio_rel_std <= tol.const_tol {
        if (ratio - 1.0).abs() <= tol.const_tol {
            Verdict::Isometric
        } else {
            Verdict::Homothetic
        }
    } else if conformal {
        Verdict::Conformal
    } else if weakly {
        Verdict::WeaklyConformal
    } else {
        Verdict::None
    };
    Ok(LgReport {
        variant,
        radius,
        ratio,
        ratio_rel_std,
        anisotropy,
        off_diagonal,
        degenerate_stretch,
        degenerate_samples,
        pullback_defect,
        verdict,
        g_l,
        g_g,
    })
}
