use std::f64::consts::TAU;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fourier::spectral_derivative;
use crate::grid::Grid;
use crate::immersion::SampledImmersion;
use crate::scalar::Real;
use crate::tol::Settings;

use super::{EigenComponent, KType, Spectrum};

/// Eigenspace of the flat Laplacian collected from all lattice modes sharing one eigenvalue.
#[derive(Clone, Debug, Serialize)]
pub struct TorusComponent {
    pub lambda: f64,
    /// Signed frequency pairs contributing to the eigenspace.
    pub modes: Vec<[i64; 2]>,
    /// RMS norm of the component over the torus.
    pub amplitude: f64,
    #[serde(skip)]
    values: Vec<f64>,
    #[serde(skip)]
    derivatives: Vec<Vec<f64>>,
}

/// Spectral decomposition of a doubly periodic immersion with constant metric.
#[derive(Clone, Debug, Serialize)]
pub struct TorusDecomposition {
    pub periods: [f64; 2],
    /// Constant metric `[g11, g12, g22]`.
    pub metric: [f64; 3],
    /// Largest deviation of the sampled metric from its mean, relative.
    pub metric_deviation: f64,
    pub mean: Vec<f64>,
    pub components: Vec<TorusComponent>,
    pub k_type: KType,
    pub amp_tol: f64,
    #[serde(skip)]
    pub grid: Grid<f64>,
}

impl Spectrum for TorusDecomposition {
    fn k_type(&self) -> KType {
        self.k_type
    }
    fn ambient_dim(&self) -> usize {
        self.mean.len()
    }
    fn eigencomponents(&self) -> Vec<EigenComponent> {
        self.components
            .iter()
            .map(|c| EigenComponent {
                label: format!("{:.6}", c.lambda),
                lambda: c.lambda,
                values: c.values.clone(),
                derivatives: c.derivatives.clone(),
            })
            .collect()
    }
}

fn fft2(data: &mut [Complex<f64>], n0: usize, n1: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (p0, p1) = if inverse {
        (planner.plan_fft_inverse(n0), planner.plan_fft_inverse(n1))
    } else {
        (planner.plan_fft_forward(n0), planner.plan_fft_forward(n1))
    };
    for row in data.chunks_mut(n1) {
        p1.process(row);
    }
    let mut col = vec![Complex::new(0.0, 0.0); n0];
    for j in 0..n1 {
        for i in 0..n0 {
            col[i] = data[i * n1 + j];
        }
        p0.process(&mut col);
        for i in 0..n0 {
            data[i * n1 + j] = col[i];
        }
    }
}

fn signed(k: usize, n: usize) -> i64 {
    if 2 * k <= n {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Decomposes a flat torus into eigenspaces of its Laplacian. Lattice modes are eigenfunctions
/// only when the metric is constant, which is checked first.
pub fn decompose_flat_torus<T: Real>(s: &SampledImmersion<T>, settings: &Settings) -> Result<TorusDecomposition> {
    if s.intrinsic_dim() != 2 {
        return Err(GeoError::Input(format!("expected a surface, got intrinsic dimension {}", s.intrinsic_dim())));
    }
    if !s.grid().all_periodic() {
        return Err(GeoError::NotClosed);
    }
    let grid = s.grid().cast::<f64>();
    let (n0, n1) = (grid.axis(0).count, grid.axis(1).count);
    let periods = [grid.axis(0).end - grid.axis(0).start, grid.axis(1).end - grid.axis(1).start];
    let (len, m) = (s.len(), s.ambient_dim());
    let coords: Vec<Vec<f64>> = (0..m).map(|k| (0..len).map(|p| s.point(p)[k].f64()).collect()).collect();

    // metric from spectral derivatives along each axis
    let deriv = |field: &[f64], axis: usize| -> Vec<f64> {
        let mut out = vec![0.0; len];
        if axis == 1 {
            for i in 0..n0 {
                let d = spectral_derivative(&field[i * n1..(i + 1) * n1], periods[1], 1);
                out[i * n1..(i + 1) * n1].copy_from_slice(&d);
            }
        } else {
            for j in 0..n1 {
                let line: Vec<f64> = (0..n0).map(|i| field[i * n1 + j]).collect();
                for (i, v) in spectral_derivative(&line, periods[0], 1).into_iter().enumerate() {
                    out[i * n1 + j] = v;
                }
            }
        }
        out
    };
    let d0: Vec<Vec<f64>> = coords.iter().map(|c| deriv(c, 0)).collect();
    let d1: Vec<Vec<f64>> = coords.iter().map(|c| deriv(c, 1)).collect();
    let g_at = |p: usize| {
        let mut g = [0.0; 3];
        for k in 0..m {
            g[0] += d0[k][p] * d0[k][p];
            g[1] += d0[k][p] * d1[k][p];
            g[2] += d1[k][p] * d1[k][p];
        }
        g
    };
    let gs: Vec<[f64; 3]> = (0..len).map(g_at).collect();
    let mut metric = [0.0; 3];
    for g in &gs {
        for q in 0..3 {
            metric[q] += g[q] / len as f64;
        }
    }
    let size = metric[0] + metric[2];
    let metric_deviation =
        gs.iter().flat_map(|g| (0..3).map(move |q| (g[q] - metric[q]).abs() / size)).fold(0.0, f64::max);
    let det = metric[0] * metric[2] - metric[1] * metric[1];
    if !(metric_deviation <= settings.tol.const_tol) || !(det > 0.0) {
        return Err(GeoError::NotFlat);
    }
    let ginv = [metric[2] / det, -metric[1] / det, metric[0] / det];

    let spectra: Vec<Vec<Complex<f64>>> = coords
        .iter()
        .map(|c| {
            let mut buf: Vec<Complex<f64>> = c.iter().map(|&v| Complex::new(v, 0.0)).collect();
            fft2(&mut buf, n0, n1, false);
            buf
        })
        .collect();
    let nf = len as f64;
    let mean: Vec<f64> = spectra.iter().map(|sp| sp[0].re / nf).collect();

    // (eigenvalue, flat spectral index, squared amplitude)
    let mut modes: Vec<(f64, usize, f64)> = Vec::new();
    for i in 0..n0 {
        for j in 0..n1 {
            if i == 0 && j == 0 {
                continue;
            }
            let w = [TAU * signed(i, n0) as f64 / periods[0], TAU * signed(j, n1) as f64 / periods[1]];
            let lambda = ginv[0] * w[0] * w[0] + 2.0 * ginv[1] * w[0] * w[1] + ginv[2] * w[1] * w[1];
            let power: f64 = spectra.iter().map(|sp| sp[i * n1 + j].norm_sqr()).sum::<f64>() / (nf * nf);
            modes.push((lambda, i * n1 + j, power));
        }
    }
    modes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut groups: Vec<(f64, Vec<usize>, f64)> = Vec::new();
    for (lambda, idx, power) in modes {
        match groups.last_mut() {
            Some(g) if (lambda - g.0).abs() <= 1e-9 * lambda.max(1.0) => {
                g.1.push(idx);
                g.2 += power;
            }
            _ => groups.push((lambda, vec![idx], power)),
        }
    }
    let top = groups.iter().map(|g| g.2.sqrt()).fold(0.0, f64::max);
    let amp_tol = settings.tol.amp_tol;
    let mut infinite = false;
    let mut components = Vec::new();
    for (lambda, idxs, power) in groups {
        let amplitude = power.sqrt();
        if !(amplitude > amp_tol * top) {
            continue;
        }
        let live: Vec<usize> = idxs
            .into_iter()
            .filter(|&q| spectra.iter().any(|sp| sp[q].norm() / nf > amp_tol * top * 1e-3))
            .collect();
        let pairs: Vec<[i64; 2]> = live.iter().map(|&q| [signed(q / n1, n0), signed(q % n1, n1)]).collect();
        if pairs.iter().any(|p| 4 * p[0].unsigned_abs() as usize >= n0 || 4 * p[1].unsigned_abs() as usize >= n1) {
            infinite = true;
        }
        let synth = |factor: &dyn Fn(usize) -> Complex<f64>| -> Vec<f64> {
            let mut out = vec![0.0; len * m];
            for (k, sp) in spectra.iter().enumerate() {
                let mut buf = vec![Complex::new(0.0, 0.0); len];
                for &q in &live {
                    buf[q] = sp[q] * factor(q);
                }
                fft2(&mut buf, n0, n1, true);
                for p in 0..len {
                    out[p * m + k] = buf[p].re / nf;
                }
            }
            out
        };
        let values = synth(&|_| Complex::new(1.0, 0.0));
        let derivatives = (0..2)
            .map(|axis| {
                synth(&|q| {
                    let (k, n) = if axis == 0 { (q / n1, n0) } else { (q % n1, n1) };
                    if 2 * k == n {
                        return Complex::new(0.0, 0.0);
                    }
                    Complex::new(0.0, TAU * signed(k, n) as f64 / periods[axis])
                })
            })
            .collect();
        components.push(TorusComponent { lambda, modes: pairs, amplitude, values, derivatives });
    }
    let k_type = if infinite { KType::Infinite } else { KType::Finite(components.len()) };
    Ok(TorusDecomposition { periods, metric, metric_deviation, mean, components, k_type, amp_tol, grid })
}
