use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::Result;
use crate::immersion::SampledImmersion;
use crate::laplace::laplace_map;
use crate::linalg::lstsq;
use crate::scalar::Real;
use crate::tol::Settings;

use super::{decompose_closed_curve, SpectralDecomposition};

/// Monic `P(t) = t^k + c₁t^{k−1} + … + c_k` with `P(Δ)H ≈ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalPolynomialFit {
    pub degree: usize,
    /// `c₁..c_k`.
    pub coefficients: Vec<f64>,
    /// `‖P(Δ)H‖ / ‖Δ^k H‖`.
    pub residual: f64,
    /// Residual for every degree tried.
    pub residuals: Vec<f64>,
    /// Roots as `[re, im]`.
    pub roots: Vec<[f64; 2]>,
    /// False when no degree up to `k_max` met the tolerance.
    pub terminating: bool,
    pub condition: f64,
    pub poly_tol: f64,
}

impl MinimalPolynomialFit {
    /// Real parts of the roots, ascending.
    pub fn real_roots(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.roots.iter().map(|z| z[0]).collect();
        r.sort_by(f64::total_cmp);
        r
    }
}

/// Minimal polynomial of a closed unit-speed curve.
pub fn minimal_polynomial_fit<T: Real>(c: &SampledImmersion<T>, k_max: usize, settings: &Settings) -> Result<MinimalPolynomialFit> {
    let d = decompose_closed_curve(c, settings)?;
    Ok(minimal_polynomial_of(&d, k_max, settings))
}

/// Minimal polynomial from a decomposition. Powers of Δ act on the retained components exactly,
/// so that round-off at high frequencies is not amplified by `λ^k`.
pub fn minimal_polynomial_of(d: &SpectralDecomposition, k_max: usize, settings: &Settings) -> MinimalPolynomialFit {
    let comps = d.eigencomponents();
    let rows = comps.first().map_or(0, |c| c.values.len());
    // H = −Δx for a unit-speed curve, so Δ^j H = −Σ λ^{j+1} x_t
    let power = |j: usize| -> Vec<f64> {
        let mut v = vec![0.0; rows];
        for c in &comps {
            let f = -c.lambda.powi(j as i32 + 1);
            for (o, x) in v.iter_mut().zip(&c.values) {
                *o += f * x;
            }
        }
        v
    };
    let k_max = k_max.max(1);
    let cols: Vec<Vec<f64>> = (0..=k_max).map(power).collect();
    let tol = settings.tol.poly_tol;
    let mut residuals = Vec::with_capacity(k_max);
    let mut best = None;
    for k in 1..=k_max {
        // unknowns c₁..c_k multiply Δ^{k−1}H .. H
        let mut design = vec![0.0; rows * k];
        for r in 0..rows {
            for j in 0..k {
                design[r * k + j] = cols[k - 1 - j][r];
            }
        }
        let y: Vec<f64> = cols[k].iter().map(|v| -v).collect();
        let (coef, cond) = lstsq(&design, rows, k, &y, 1e-15);
        if cond > 1e12 {
            log::warn!("minimal polynomial degree {k}: normal matrix condition {cond:.2e}");
        }
        let mut num = 0.0;
        for r in 0..rows {
            let mut v = cols[k][r];
            for j in 0..k {
                v += coef[j] * design[r * k + j];
            }
            num += v * v;
        }
        let den: f64 = cols[k].iter().map(|v| v * v).sum();
        let residual = if den > 0.0 { (num / den).sqrt() } else { 0.0 };
        residuals.push(residual);
        let done = residual <= tol;
        if done || k == k_max {
            best = Some((k, coef, residual, cond, done));
        }
        if done {
            break;
        }
    }
    let (degree, coefficients, residual, condition, terminating) = best.expect("at least one degree tried");
    MinimalPolynomialFit {
        degree,
        roots: roots_of(&coefficients),
        coefficients,
        residual,
        residuals,
        terminating,
        condition,
        poly_tol: tol,
    }
}

/// Roots of the monic polynomial with the given lower coefficients.
pub(super) fn roots_of(c: &[f64]) -> Vec<[f64; 2]> {
    match c.len() {
        0 => vec![],
        1 => vec![[-c[0], 0.0]],
        2 => {
            let (p, q) = (c[0], c[1]);
            let disc = p * p / 4.0 - q;
            if disc >= 0.0 {
                // avoid cancellation in the smaller root
                let big = -p / 2.0 - p.signum() * disc.sqrt();
                let big = if big == 0.0 { disc.sqrt() } else { big };
                let small = if big != 0.0 { q / big } else { 0.0 };
                vec![[small.min(big), 0.0], [small.max(big), 0.0]]
            } else {
                let im = (-disc).sqrt();
                vec![[-p / 2.0, -im], [-p / 2.0, im]]
            }
        }
        k => {
            let mut comp = DMatrix::<f64>::zeros(k, k);
            for j in 0..k {
                comp[(0, j)] = -c[j];
            }
            for i in 1..k {
                comp[(i, i - 1)] = 1.0;
            }
            let mut r: Vec<[f64; 2]> = comp.complex_eigenvalues().iter().map(|z| [z.re, z.im]).collect();
            r.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
            r
        }
    }
}

/// Least-squares `Δx ≈ Ax + b`.
#[derive(Clone, Debug, Serialize)]
pub struct LinearFit {
    /// Row-major `m×m`.
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    /// RMS of `‖Δx − Ax − b‖`.
    pub residual: f64,
    /// RMS of `‖Δx‖`.
    pub laplacian_norm: f64,
    pub threshold: f64,
    pub linearly_independent: bool,
}

pub fn linear_fit_ax_b<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<LinearFit> {
    let r = laplace_map(s, settings)?;
    let m = s.ambient_dim();
    let samples = r.fields.interior();
    let rows = samples.len();
    let cols = m + 1;
    let mut design = vec![0.0; rows * cols];
    for (i, &p) in samples.iter().enumerate() {
        for k in 0..m {
            design[i * cols + k] = s.point(p)[k].f64();
        }
        design[i * cols + m] = 1.0;
    }
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    let (mut num, mut den) = (0.0, 0.0);
    for k in 0..m {
        let y: Vec<f64> = samples.iter().map(|&p| r.l.point(p)[k].f64()).collect();
        let (coef, _) = lstsq(&design, rows, cols, &y, 1e-13);
        a[k].copy_from_slice(&coef[..m]);
        b[k] = coef[m];
        for (i, yv) in y.iter().enumerate() {
            let fit: f64 = (0..cols).map(|j| design[i * cols + j] * coef[j]).sum();
            num += (yv - fit).powi(2);
            den += yv * yv;
        }
    }
    let n = rows.max(1) as f64;
    let residual = (num / n).sqrt();
    let laplacian_norm = (den / n).sqrt();
    let threshold = settings.tol.fit_tol * laplacian_norm;
    Ok(LinearFit { a, b, residual, laplacian_norm, threshold, linearly_independent: residual <= threshold })
}
