use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::immersion::SampledImmersion;
use crate::tol::Settings;

use super::{KType, SpectralDecomposition, Spectrum};

/// `x̄ = x₀ + x_p − x_q` on the grid of the source curve.
#[derive(Clone, Debug)]
pub struct ConjugateCurve {
    pub curve: SampledImmersion<f64>,
    /// `‖x̄'‖` per sample.
    pub speed: Vec<f64>,
    pub speed_deviation: f64,
    pub unit_speed: bool,
}

pub fn conjugate_2type(d: &SpectralDecomposition, settings: &Settings) -> Result<ConjugateCurve> {
    if d.k_type != KType::Finite(2) {
        return Err(GeoError::Not2Type { k_type: d.k_type.to_string() });
    }
    let (p, q) = (&d.components[0], &d.components[1]);
    let ax = d.grid.axis(0);
    let m = d.mean.len();
    let mut points = Vec::with_capacity(ax.count * m);
    let mut speed = Vec::with_capacity(ax.count);
    for i in 0..ax.count {
        let s = ax.coord(i);
        let (xp, xq) = (p.eval(s, d.period, 0), q.eval(s, d.period, 0));
        points.extend((0..m).map(|k| d.mean[k] + xp[k] - xq[k]));
        let (vp, vq) = (p.eval(s, d.period, 1), q.eval(s, d.period, 1));
        speed.push((0..m).map(|k| (vp[k] - vq[k]).powi(2)).sum::<f64>().sqrt());
    }
    let speed_deviation = speed.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    let curve = SampledImmersion::new(d.grid.clone(), m, points, "conjugate")?;
    Ok(ConjugateCurve { curve, speed, speed_deviation, unit_speed: speed_deviation <= settings.tol.speed_tol })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceData {
    pub label: String,
    pub lambda: f64,
    pub dim: usize,
    pub singular_values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub subspaces: Vec<SubspaceData>,
    pub dim_sum: usize,
    pub span_dim: usize,
    pub linearly_independent: bool,
    /// Largest principal cosine between distinct component subspaces.
    pub max_principal_cosine: f64,
    pub orthogonal: bool,
    /// `sup |⟨x_t, x_u⟩|` over samples, relative to the component sizes.
    pub pointwise_defect: f64,
    pub pointwise_orthogonal: bool,
    /// `sup |⟨∂_i x_t, ∂_j x_u⟩|` over samples and coordinate pairs, relative.
    pub strong_defect: f64,
    pub strongly_pointwise_orthogonal: bool,
    pub angle_tol: f64,
}

/// Orthonormal basis (columns, row-major `m × r`) of the span of a sampled field, and its singular values.
fn span(values: &[f64], m: usize, sv_tol: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let cols = values.len() / m;
    let mat = DMatrix::from_fn(m, cols, |k, p| values[p * m + k]);
    let svd = mat.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let top = sv.first().copied().unwrap_or(0.0);
    let basis = order
        .iter()
        .filter(|&&i| top > 0.0 && svd.singular_values[i] > sv_tol * top)
        .map(|&i| u.column(i).iter().copied().collect())
        .collect();
    (basis, sv)
}

fn sup_norm(values: &[f64], m: usize) -> f64 {
    values.chunks(m).map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).fold(0.0, f64::max)
}

fn max_cross(a: &[f64], b: &[f64], m: usize) -> f64 {
    let den = sup_norm(a, m) * sup_norm(b, m);
    if den == 0.0 {
        return 0.0;
    }
    a.chunks(m).zip(b.chunks(m)).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u * v).sum::<f64>().abs()).fold(0.0, f64::max)
        / den
}

pub fn orthogonality_report<S: Spectrum + ?Sized>(d: &S, settings: &Settings) -> Result<OrthogonalityReport> {
    if d.k_type() == KType::Infinite {
        return Err(GeoError::Input("orthogonality needs a decomposition of finite type".into()));
    }
    let tol = &settings.tol;
    let m = d.ambient_dim();
    let comps = d.eigencomponents();
    let spans: Vec<(Vec<Vec<f64>>, Vec<f64>)> = comps.iter().map(|c| span(&c.values, m, tol.sv_tol)).collect();
    let subspaces: Vec<SubspaceData> = comps
        .iter()
        .zip(&spans)
        .map(|(c, (b, sv))| SubspaceData { label: c.label.clone(), lambda: c.lambda, dim: b.len(), singular_values: sv.clone() })
        .collect();
    let dim_sum: usize = subspaces.iter().map(|s| s.dim).sum();
    let all: Vec<&Vec<f64>> = spans.iter().flat_map(|(b, _)| b.iter()).collect();
    let span_dim = if all.is_empty() {
        0
    } else {
        let joint = DMatrix::from_fn(m, all.len(), |k, j| all[j][k]);
        let sv = joint.singular_values();
        let top = sv.max();
        sv.iter().filter(|&&v| v > tol.sv_tol * top).count()
    };

    let mut max_cos = 0.0f64;
    let mut pointwise = 0.0f64;
    let mut strong = 0.0f64;
    for t in 0..comps.len() {
        for u in t + 1..comps.len() {
            let (bt, bu) = (&spans[t].0, &spans[u].0);
            if !bt.is_empty() && !bu.is_empty() {
                let cross = DMatrix::<f64>::from_fn(bt.len(), bu.len(), |i, j| (0..m).map(|k| bt[i][k] * bu[j][k]).sum());
                max_cos = max_cos.max(cross.singular_values().max());
            }
            pointwise = pointwise.max(max_cross(&comps[t].values, &comps[u].values, m));
            for dt in &comps[t].derivatives {
                for du in &comps[u].derivatives {
                    strong = strong.max(max_cross(dt, du, m));
                }
            }
        }
    }
    Ok(OrthogonalityReport {
        subspaces,
        dim_sum,
        span_dim,
        linearly_independent: dim_sum == span_dim,
        max_principal_cosine: max_cos,
        orthogonal: max_cos <= tol.angle_tol,
        pointwise_defect: pointwise,
        pointwise_orthogonal: pointwise <= tol.angle_tol,
        strong_defect: strong,
        strongly_pointwise_orthogonal: strong <= tol.angle_tol,
        angle_tol: tol.angle_tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualCheck {
    /// `λ₁ = −λ₂ ≠ 0`.
    pub dual: bool,
    /// One eigenvalue vanishes and the other does not.
    pub null_2type: bool,
}

pub fn dual_2type_check(l1: f64, l2: f64) -> DualCheck {
    let size = l1.abs().max(l2.abs());
    let rel = 1e-12;
    let zero = |v: f64| v.abs() <= rel * size;
    DualCheck { dual: size > 0.0 && zero(l1 + l2), null_2type: size > 0.0 && (zero(l1) != zero(l2)) }
}

/// Constants of a spherical 2-type immersion with eigenvalues `λ_p < λ_q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoTypeInvariants {
    /// Squared length of the mean curvature vector in the ambient space.
    pub alpha2: f64,
    /// Scalar curvature.
    pub tau: f64,
    /// Squared length of the second fundamental form in the ambient space.
    pub h2: f64,
}

pub fn spherical_2type_invariants(lp: f64, lq: f64, n: usize) -> Result<TwoTypeInvariants> {
    if !(lp < lq) {
        return Err(GeoError::BadOrder);
    }
    if n < 2 {
        return Err(GeoError::Input(format!("intrinsic dimension must be at least 2, got {n}")));
    }
    let nf = n as f64;
    let (sum, prod) = (lp + lq, lp * lq);
    Ok(TwoTypeInvariants { alpha2: sum / nf - prod / (nf * nf), tau: sum / nf - prod / (nf * (nf - 1.0)), h2: sum })
}
