//! Frenet apparatus of sampled curves and the curve-level Laplace criteria.

use serde::Serialize;

use crate::error::{GeoError, Result};
use crate::fit::{fit_all, Primitive, PrimitiveFit};
use crate::fourier::{spectral_derivative, RealSeries};
use crate::grid::Grid;
use crate::immersion::SampledImmersion;
use crate::linalg::singular_values;
use crate::scalar::{dot, mean_std, norm, sup, Real};
use crate::stencil::{d1, d2};
use crate::tol::{FdOrder, Settings};

/// Per-sample Frenet data of a unit-speed curve.
#[derive(Clone, Debug)]
pub struct FrenetApparatus<T> {
    pub grid: Grid<T>,
    pub m: usize,
    pub rank: usize,
    /// `kappa[i]` is the field κ_{i+1}. The last one is signed when the frame fills E^m.
    pub kappa: Vec<Vec<T>>,
    /// `frames[i]` is β_{i+1} as a flat m-vector field.
    pub frames: Vec<Vec<T>>,
    /// Largest Frenet-equation defect over the trusted samples, relative to the curvature scale.
    pub residual: T,
    /// Largest deviation of the frame from orthonormality.
    pub frame_defect: T,
    /// Boundary samples excluded per end on a non-periodic axis.
    pub band: usize,
    pub order: FdOrder,
    /// Inverse of the curve's extent.
    pub curvature_scale: T,
}

impl<T: Real> FrenetApparatus<T> {
    /// Samples trusted for quantities differentiated `depth` times after the curvatures.
    pub fn trusted(&self, depth: usize) -> Vec<usize> {
        self.grid.interior(self.band * (2 + depth))
    }

    pub fn derivative(&self, field: &[T]) -> Vec<T> {
        d1(&self.grid, 0, self.order, field, 1)
    }

    pub fn second_derivative(&self, field: &[T]) -> Vec<T> {
        d2(&self.grid, 0, self.order, field, 1)
    }

    /// κ_i as a field, zero beyond the computed range.
    pub fn curvature(&self, i: usize) -> Vec<T> {
        self.kappa.get(i - 1).cloned().unwrap_or_else(|| vec![T::zero(); self.grid.len()])
    }
}

fn check_curve<T: Real>(c: &SampledImmersion<T>) -> Result<()> {
    if c.intrinsic_dim() != 1 {
        return Err(GeoError::Input(format!("expected a curve, got intrinsic dimension {}", c.intrinsic_dim())));
    }
    Ok(())
}

/// Speed `‖x'‖` per sample (spectral on periodic grids, fourth-order differences otherwise).
pub fn speed<T: Real>(c: &SampledImmersion<T>) -> Vec<T> {
    let m = c.ambient_dim();
    let ax = c.grid().axis(0);
    let n = c.len();
    if ax.periodic {
        let period = (ax.end - ax.start).f64();
        let comps: Vec<Vec<f64>> = (0..m)
            .map(|k| spectral_derivative(&(0..n).map(|i| c.point(i)[k].f64()).collect::<Vec<_>>(), period, 1))
            .collect();
        (0..n).map(|i| T::lit((0..m).map(|k| comps[k][i] * comps[k][i]).sum::<f64>().sqrt())).collect()
    } else {
        let dx = d1(c.grid(), 0, FdOrder::Fourth, c.points(), m);
        dx.chunks(m).map(norm).collect()
    }
}

/// Local Lagrange interpolation on a uniform non-periodic axis.
struct LocalPoly<'a> {
    start: f64,
    h: f64,
    n: usize,
    values: &'a [f64],
    width: usize,
}

impl LocalPoly<'_> {
    fn window(&self, u: f64) -> usize {
        let j = ((u - self.start) / self.h).floor() as isize - (self.width as isize / 2 - 1);
        j.clamp(0, (self.n - self.width) as isize) as usize
    }

    /// Value and first derivative at `u`.
    fn eval(&self, u: f64) -> (f64, f64) {
        let j0 = self.window(u);
        let nodes: Vec<f64> = (0..self.width).map(|k| self.start + (j0 + k) as f64 * self.h).collect();
        let (mut v, mut dv) = (0.0, 0.0);
        for a in 0..self.width {
            let mut la = 1.0;
            let mut dla = 0.0;
            for b in 0..self.width {
                if b == a {
                    continue;
                }
                let w = 1.0 / (nodes[a] - nodes[b]);
                dla = dla * (u - nodes[b]) * w + la * w;
                la *= (u - nodes[b]) * w;
            }
            v += la * self.values[j0 + a];
            dv += dla * self.values[j0 + a];
        }
        (v, dv)
    }
}

/// Resamples a regular curve uniformly in arclength, preserving length and periodicity.
pub fn reparametrize_unit_speed<T: Real>(c: &SampledImmersion<T>, settings: &Settings) -> Result<SampledImmersion<T>> {
    check_curve(c)?;
    let m = c.ambient_dim();
    let ax = c.grid().axis(0).cast::<f64>();
    let n = c.len();
    let comp: Vec<Vec<f64>> = (0..m).map(|k| (0..n).map(|i| c.point(i)[k].f64()).collect()).collect();
    let sp: Vec<f64> = speed(c).iter().map(|v| v.f64()).collect();
    let mean_speed = sp.iter().sum::<f64>() / n as f64;
    if let Some(i) = sp.iter().position(|&v| !(v > settings.tol.reg_eps * mean_speed)) {
        return Err(GeoError::DegenerateCurve { index: i });
    }
    let (total, points) = if ax.periodic {
        let period = ax.end - ax.start;
        let series: Vec<RealSeries> = comp.iter().map(|v| RealSeries::fit(v, ax.start, period)).collect();
        let speed_at = |u: f64| series.iter().map(|s| s.eval(u, 1).powi(2)).sum::<f64>().sqrt();
        let dense = 8 * n;
        let fine: Vec<f64> = (0..dense).map(|i| speed_at(ax.start + period * i as f64 / dense as f64)).collect();
        let arc = RealSeries::fit(&fine, ax.start, period);
        let total = arc.a0 * period;
        let s_of = |u: f64| arc.a0 * (u - ax.start) + arc.primitive(u) - arc.primitive(ax.start);
        let mut pts = Vec::with_capacity(n * m);
        let mut u = ax.start;
        for i in 0..n {
            let target = total * i as f64 / n as f64;
            for _ in 0..50 {
                let du = (s_of(u) - target) / speed_at(u);
                u -= du;
                if du.abs() < 1e-15 * (1.0 + u.abs()) {
                    break;
                }
            }
            pts.extend(series.iter().map(|s| T::lit(s.eval(u, 0))));
        }
        (total, pts)
    } else {
        let h = ax.step();
        let polys: Vec<LocalPoly> =
            comp.iter().map(|v| LocalPoly { start: ax.start, h, n, values: v, width: n.min(8) }).collect();
        let speed_at = |u: f64| polys.iter().map(|p| p.eval(u).1.powi(2)).sum::<f64>().sqrt();
        // cumulative arclength at the nodes by 8-point Gauss–Legendre per interval
        let (gx, gw) = gauss_legendre_8();
        let mut cum = vec![0.0; n];
        for j in 0..n - 1 {
            let a = ax.start + j as f64 * h;
            let seg: f64 = gx.iter().zip(&gw).map(|(x, w)| w * speed_at(a + 0.5 * h * (x + 1.0))).sum::<f64>() * 0.5 * h;
            cum[j + 1] = cum[j] + seg;
        }
        let total = cum[n - 1];
        let mut pts = Vec::with_capacity(n * m);
        for i in 0..n {
            let target = total * i as f64 / (n - 1) as f64;
            let j = cum.partition_point(|&v| v <= target).clamp(1, n - 1) - 1;
            let a = ax.start + j as f64 * h;
            let s_of = |u: f64| {
                let w = u - a;
                cum[j] + gx.iter().zip(&gw).map(|(x, g)| g * speed_at(a + 0.5 * w * (x + 1.0))).sum::<f64>() * 0.5 * w
            };
            let mut u = a + (target - cum[j]) / speed_at(a);
            for _ in 0..50 {
                let du = (s_of(u) - target) / speed_at(u);
                u -= du;
                if du.abs() < 1e-15 * (1.0 + u.abs()) {
                    break;
                }
            }
            pts.extend(polys.iter().map(|p| T::lit(p.eval(u).0)));
        }
        (total, pts)
    };
    let grid = Grid::curve(n, T::zero(), T::lit(total), ax.periodic)?;
    SampledImmersion::new(grid, m, points, c.label.clone())
}

fn gauss_legendre_8() -> ([f64; 8], [f64; 8]) {
    let x = [0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363];
    let w = [0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];
    (
        [-x[3], -x[2], -x[1], -x[0], x[0], x[1], x[2], x[3]],
        [w[3], w[2], w[1], w[0], w[0], w[1], w[2], w[3]],
    )
}

/// Sign of the determinant of the m×m matrix whose columns are `cols`.
fn det<T: Real>(cols: &[Vec<T>], m: usize) -> T {
    let mut a: Vec<T> = (0..m * m).map(|k| cols[k % m][k / m]).collect();
    let mut d = T::one();
    for c in 0..m {
        let p = (c..m).max_by(|&i, &j| a[i * m + c].abs().partial_cmp(&a[j * m + c].abs()).unwrap()).unwrap();
        if a[p * m + c] == T::zero() {
            return T::zero();
        }
        if p != c {
            for k in 0..m {
                a.swap(p * m + k, c * m + k);
            }
            d = -d;
        }
        d = d * a[c * m + c];
        for r in c + 1..m {
            let f = a[r * m + c] / a[c * m + c];
            for k in c..m {
                a[r * m + k] = a[r * m + k] - f * a[c * m + k];
            }
        }
    }
    d
}

/// Unit vector completing `cols` (m−1 orthonormal vectors) to a positive basis.
fn orientation_completion<T: Real>(cols: &[Vec<T>], m: usize) -> Vec<T> {
    let mut out = vec![T::zero(); m];
    for k in 0..m {
        let mut e = vec![T::zero(); m];
        e[k] = T::one();
        let mut all = cols.to_vec();
        all.push(e);
        out[k] = det(&all, m);
    }
    let n = norm(&out);
    out.iter().map(|&v| v / n).collect()
}

/// Successive derivatives `x^(1) … x^(k)` by nested differences.
fn derivatives<T: Real>(c: &SampledImmersion<T>, k: usize, settings: &Settings) -> Vec<Vec<T>> {
    let m = c.ambient_dim();
    let g = c.grid();
    let mut out: Vec<Vec<T>> = Vec::with_capacity(k);
    for j in 1..=k {
        let d = match j {
            1 => d1(g, 0, settings.order, c.points(), m),
            2 => d2(g, 0, settings.order, c.points(), m),
            _ if j % 2 == 1 => d1(g, 0, settings.order, &out[j - 2], m),
            _ => d2(g, 0, settings.order, &out[j - 3], m),
        };
        out.push(d);
    }
    out
}

/// Frenet curvatures and frames up to `d_max` by Gram–Schmidt on successive derivatives.
pub fn frenet<T: Real>(c: &SampledImmersion<T>, d_max: usize, settings: &Settings) -> Result<FrenetApparatus<T>> {
    check_curve(c)?;
    let m = c.ambient_dim();
    let d_max = d_max.clamp(1, m - 1);
    let n = c.len();
    let band = settings.band();
    let ders = derivatives(c, d_max + 1, settings);
    let all = c.grid().interior(0);
    let extent = c.extent(&all);
    let curvature_scale = if extent > T::zero() { T::one() / extent } else { T::one() };
    let floor = T::lit(settings.tol.rank_floor) * curvature_scale;

    let mut kappa = vec![vec![T::zero(); n]; d_max];
    let mut frames = vec![vec![T::zero(); n * m]; d_max + 1];
    for p in 0..n {
        let mut basis: Vec<Vec<T>> = Vec::with_capacity(d_max + 1);
        let t = &ders[0][p * m..(p + 1) * m];
        let nt = norm(t);
        basis.push(t.iter().map(|&v| v / nt).collect());
        let mut prod = T::one();
        for i in 1..=d_max {
            let raw = &ders[i][p * m..(p + 1) * m];
            let (next, k) = if i + 1 == m {
                let b = orientation_completion(&basis, m);
                let k = dot(raw, &b) / prod;
                (b, k)
            } else {
                let mut v = raw.to_vec();
                for _ in 0..2 {
                    for b in &basis {
                        let c = dot(&v, b);
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = *x - c * *y;
                        }
                    }
                }
                let nv = norm(&v);
                let k = nv / prod;
                let dir = if nv > T::zero() { v.iter().map(|&x| x / nv).collect() } else { vec![T::zero(); m] };
                (dir, k)
            };
            kappa[i - 1][p] = k;
            basis.push(next);
            prod = prod * k;
            if prod.abs() <= T::min_positive_value() {
                prod = T::min_positive_value();
            }
        }
        for (i, b) in basis.iter().enumerate() {
            frames[i][p * m..(p + 1) * m].copy_from_slice(b);
        }
    }

    let trusted = c.grid().interior(band * 2);
    let mut rank = d_max;
    for i in 0..d_max {
        let vals: Vec<T> = trusted.iter().map(|&p| kappa[i][p].abs()).collect();
        if sup(&vals) < floor {
            rank = i + 1;
            break;
        }
    }
    for k in kappa.iter_mut().skip(rank) {
        k.iter_mut().for_each(|v| *v = T::zero());
    }
    frames.truncate(rank + 1);

    let mut frame_defect = T::zero();
    for &p in &trusted {
        for i in 0..frames.len() {
            for j in 0..frames.len() {
                let target = if i == j { T::one() } else { T::zero() };
                let d = (dot(&frames[i][p * m..(p + 1) * m], &frames[j][p * m..(p + 1) * m]) - target).abs();
                frame_defect = frame_defect.max(d);
            }
        }
    }

    // Frenet equations β_i' = −κ_{i−1}β_{i−1} + κ_iβ_{i+1} on the frames that are defined
    let nested = c.grid().interior(band * 3);
    let kscale = kappa.iter().flat_map(|k| nested.iter().map(move |&p| k[p].abs())).fold(curvature_scale, T::max);
    let mut residual = T::zero();
    let usable = frames.len().min(rank + 1);
    for i in 0..usable {
        if i >= 1 && i + 1 < usable && i == rank {
            break;
        }
        let db = d1(c.grid(), 0, settings.order, &frames[i], m);
        for &p in &nested {
            for a in 0..m {
                let mut rhs = T::zero();
                if i >= 1 {
                    rhs = rhs - kappa[i - 1][p] * frames[i - 1][p * m + a];
                }
                if i < rank && i + 1 < usable {
                    rhs = rhs + kappa[i][p] * frames[i + 1][p * m + a];
                }
                residual = residual.max((db[p * m + a] - rhs).abs() / kscale);
            }
        }
    }

    Ok(FrenetApparatus {
        grid: c.grid().clone(),
        m,
        rank,
        kappa,
        frames,
        residual,
        frame_defect,
        band,
        order: settings.order,
        curvature_scale,
    })
}

/// Laplace map `L = −x''` of a unit-speed curve with its differential `dL = −x'''`.
#[derive(Clone, Debug)]
pub struct CurveLaplace<T> {
    pub l: SampledImmersion<T>,
    pub dl: Vec<T>,
    /// `max |‖dL‖² − (κ₁⁴ + κ₁'² + κ₁²κ₂²)|` over trusted samples, relative to the largest term.
    pub identity_defect: T,
}

pub fn curve_laplace<T: Real>(c: &SampledImmersion<T>, settings: &Settings) -> Result<CurveLaplace<T>> {
    check_curve(c)?;
    let m = c.ambient_dim();
    let ders = derivatives(c, 3, settings);
    let l: Vec<T> = ders[1].iter().map(|&v| -v).collect();
    let dl: Vec<T> = ders[2].iter().map(|&v| -v).collect();
    let f = frenet(c, (m - 1).min(2), settings)?;
    let k1 = f.curvature(1);
    let k2 = f.curvature(2);
    let dk1 = f.derivative(&k1);
    let trusted = f.trusted(2);
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &p in &trusted {
        let lhs = dot(&dl[p * m..(p + 1) * m], &dl[p * m..(p + 1) * m]);
        let rhs = k1[p].powi(4) + dk1[p] * dk1[p] + k1[p] * k1[p] * k2[p] * k2[p];
        worst = worst.max((lhs - rhs).abs());
        scale = scale.max(rhs.abs()).max(lhs.abs());
    }
    let identity_defect = if scale > T::zero() { worst / scale } else { worst };
    let label = format!("laplace of {}", c.label);
    Ok(CurveLaplace { l: c.with_points(m, l, label)?, dl, identity_defect })
}

/// Constancy verdict on a scalar field.
#[derive(Clone, Debug, Serialize)]
pub struct ConstancyReport {
    pub mean: f64,
    pub rel_std: f64,
    pub tolerance: f64,
    pub holds: bool,
}

fn constancy<T: Real>(field: &[T], samples: &[usize], tol: f64) -> ConstancyReport {
    let vals: Vec<T> = samples.iter().map(|&p| field[p]).collect();
    let (mean, std) = mean_std(&vals);
    let rel = if mean.abs() > T::zero() { (std / mean.abs()).f64() } else { f64::INFINITY };
    ConstancyReport { mean: mean.f64(), rel_std: rel, tolerance: tol, holds: rel <= tol && mean > T::zero() }
}

#[derive(Clone, Debug)]
pub struct HomothetyReport<T> {
    /// κ₁⁴ + κ₁'² + κ₁²κ₂² per sample.
    pub field: Vec<T>,
    pub verdict: ConstancyReport,
    /// Fitted constant c (the mean of the field).
    pub c: f64,
}

pub fn homothety_functional<T: Real>(f: &FrenetApparatus<T>, settings: &Settings) -> HomothetyReport<T> {
    let k1 = f.curvature(1);
    let k2 = f.curvature(2);
    let dk1 = f.derivative(&k1);
    let field: Vec<T> = (0..k1.len()).map(|p| k1[p].powi(4) + dk1[p] * dk1[p] + k1[p] * k1[p] * k2[p] * k2[p]).collect();
    let verdict = constancy(&field, &f.trusted(1), settings.tol.const_tol);
    HomothetyReport { c: verdict.mean, field, verdict }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualVerdict {
    pub sup: f64,
    pub mean: f64,
    pub threshold: f64,
    pub holds: bool,
}

fn residual_verdict<T: Real>(field: &[T], samples: &[usize], threshold: f64) -> ResidualVerdict {
    let vals: Vec<f64> = samples.iter().map(|&p| field[p].abs().f64()).collect();
    let s = vals.iter().copied().fold(0.0, f64::max);
    let mean = if vals.is_empty() { 0.0 } else { vals.iter().sum::<f64>() / vals.len() as f64 };
    ResidualVerdict { sup: s, mean, threshold, holds: s <= threshold }
}

/// Largest magnitude of any single term of an equation over the samples.
fn term_scale<T: Real>(terms: &[&dyn Fn(usize) -> T], samples: &[usize]) -> f64 {
    samples.iter().flat_map(|&p| terms.iter().map(move |t| t(p).abs().f64())).fold(0.0, f64::max)
}

/// `κ₁'(2κ₁³ + κ₁'') + κ₁κ₂(κ₁'κ₂ + κ₁κ₂')` per sample.
pub fn harmonic_lt_residual<T: Real>(f: &FrenetApparatus<T>, settings: &Settings) -> (Vec<T>, ResidualVerdict) {
    let k1 = f.curvature(1);
    let k2 = f.curvature(2);
    let dk1 = f.derivative(&k1);
    let ddk1 = f.second_derivative(&k1);
    let dk2 = f.derivative(&k2);
    let two = T::lit(2.0);
    let res: Vec<T> = (0..k1.len())
        .map(|p| dk1[p] * (two * k1[p].powi(3) + ddk1[p]) + k1[p] * k2[p] * (dk1[p] * k2[p] + k1[p] * dk2[p]))
        .collect();
    let samples = f.trusted(2);
    let scale = term_scale(
        &[&|p| two * k1[p].powi(3) * dk1[p], &|p| dk1[p] * ddk1[p], &|p| k1[p] * k2[p] * (dk1[p] * k2[p] + k1[p] * dk2[p])],
        &samples,
    );
    let threshold = settings.tol.ode_tol * scale;
    let v = residual_verdict(&res, &samples, threshold);
    (res, v)
}

#[derive(Clone, Debug, Serialize)]
pub struct LaplaceInLineReport {
    pub rank: usize,
    /// Fitted ratio κ₂/κ₁ in the helix case.
    pub c: Option<f64>,
    pub equation: ResidualVerdict,
    pub ratio: Option<ResidualVerdict>,
    /// Second over first singular value of the centered Laplace image.
    pub collinearity: f64,
    pub collinear: bool,
    pub holds: bool,
}

pub fn laplace_in_line_residual<T: Real>(
    c: &SampledImmersion<T>,
    f: &FrenetApparatus<T>,
    settings: &Settings,
) -> Result<LaplaceInLineReport> {
    let k3_above = f.kappa.len() >= 3 && f.rank >= 3 && {
        let floor = settings.tol.rank_floor * f.curvature_scale.f64();
        f.trusted(1).iter().any(|&p| f.kappa[2][p].abs().f64() > floor)
    };
    if k3_above {
        return Err(GeoError::RankTooHigh { rank: f.rank });
    }
    let k1 = f.curvature(1);
    let k2 = f.curvature(2);
    let dk1 = f.derivative(&k1);
    let ddk1 = f.second_derivative(&k1);
    let samples = f.trusted(2);
    let c2 = |p: usize| T::one() + T::lit(k2[p].f64().powi(2) / k1[p].f64().powi(2).max(f64::MIN_POSITIVE));
    let scale = term_scale(&[&|p| k1[p] * ddk1[p], &|p| c2(p) * k1[p].powi(4), &|p| T::lit(3.0) * dk1[p] * dk1[p]], &samples);
    let threshold = settings.tol.ode_tol * scale;
    let floor = settings.tol.rank_floor * f.curvature_scale.f64();
    let planar = samples.iter().all(|&p| k2[p].abs().f64() < floor);
    let (cfit, eq, ratio) = if planar {
        let res: Vec<T> = (0..k1.len())
            .map(|p| k1[p] * ddk1[p] - k1[p].powi(4) - T::lit(3.0) * dk1[p] * dk1[p])
            .collect();
        (None, residual_verdict(&res, &samples, threshold), None)
    } else {
        let num: f64 = samples.iter().map(|&p| (k1[p] * k2[p]).f64()).sum();
        let den: f64 = samples.iter().map(|&p| (k1[p] * k1[p]).f64()).sum();
        let cf = num / den;
        let cft = T::lit(cf);
        let rr: Vec<T> = (0..k1.len()).map(|p| k2[p] - cft * k1[p]).collect();
        let kmax = samples.iter().map(|&p| k1[p].abs().f64()).fold(0.0, f64::max);
        let ratio = residual_verdict(&rr, &samples, settings.tol.ode_tol * kmax);
        let res: Vec<T> = (0..k1.len())
            .map(|p| k1[p] * ddk1[p] - (T::one() + cft * cft) * k1[p].powi(4) - T::lit(3.0) * dk1[p] * dk1[p])
            .collect();
        (Some(cf), residual_verdict(&res, &samples, threshold), Some(ratio))
    };
    let lap = curve_laplace(c, settings)?;
    let m = c.ambient_dim();
    let trusted = f.trusted(0);
    let mut centered = Vec::with_capacity(trusted.len() * m);
    let mut mean = vec![0.0; m];
    for &p in &trusted {
        for k in 0..m {
            mean[k] += lap.l.point(p)[k].f64() / trusted.len() as f64;
        }
    }
    for &p in &trusted {
        centered.extend((0..m).map(|k| lap.l.point(p)[k].f64() - mean[k]));
    }
    let sv = singular_values(&centered, trusted.len(), m);
    let collinearity = if sv[0] > 0.0 { sv[1] / sv[0] } else { 0.0 };
    let collinear = collinearity <= settings.tol.fit_tol;
    let holds = eq.holds && ratio.as_ref().is_none_or(|r| r.holds);
    Ok(LaplaceInLineReport { rank: f.rank, c: cfit, equation: eq, ratio, collinearity, collinear, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct LaplaceInCircleReport {
    pub fit: PrimitiveFit,
    pub holds: bool,
}

/// Circle fit to the Laplace image of a plane curve.
pub fn laplace_in_circle_check<T: Real>(c: &SampledImmersion<T>, settings: &Settings) -> Result<LaplaceInCircleReport> {
    let lap = curve_laplace(c, settings)?;
    let m = c.ambient_dim();
    let trusted = c.grid().interior(settings.band());
    let pts: Vec<f64> = trusted.iter().flat_map(|&p| lap.l.point(p).iter().map(|v| v.f64()).collect::<Vec<_>>()).collect();
    let fits = fit_all(&pts, m, settings.tol.fit_tol);
    let fit = fits.get(Primitive::Circle).cloned().expect("circle fit exists for m ≥ 2");
    Ok(LaplaceInCircleReport { holds: fit.residual <= settings.tol.fit_tol, fit })
}

#[derive(Clone, Debug)]
pub struct LgCurveReport<T> {
    pub g_l: Vec<T>,
    pub g_g: Vec<T>,
    pub ratio: ConstancyReport,
    pub homothetic: bool,
    pub conformal: bool,
}

/// Metrics of the Laplace and Gauss images of a curve and their ratio.
pub fn lg_metrics_curve<T: Real>(f: &FrenetApparatus<T>, settings: &Settings) -> Result<LgCurveReport<T>> {
    let k1 = f.curvature(1);
    let k2 = f.curvature(2);
    let dk1 = f.derivative(&k1);
    let floor = T::lit(settings.tol.rank_floor) * f.curvature_scale;
    let samples = f.trusted(1);
    if let Some(&p) = samples.iter().find(|&&p| k1[p].abs() <= floor) {
        return Err(GeoError::LaplaceMapSingular { index: p });
    }
    let g_l: Vec<T> = (0..k1.len()).map(|p| k1[p].powi(4) + dk1[p] * dk1[p] + k1[p] * k1[p] * k2[p] * k2[p]).collect();
    let g_g: Vec<T> = k1.iter().map(|&k| k * k).collect();
    let q: Vec<T> = g_l.iter().zip(&g_g).map(|(&a, &b)| if b > T::zero() { a / b } else { T::zero() }).collect();
    let ratio = constancy(&q, &samples, settings.tol.const_tol);
    Ok(LgCurveReport { homothetic: ratio.holds, conformal: true, g_l, g_g, ratio })
}

/// `sup |‖x'‖ − 1|` over all samples.
pub fn unit_speed_deviation<T: Real>(c: &SampledImmersion<T>) -> f64 {
    let s = speed(c);
    let trusted = c.grid().interior(2);
    trusted.iter().map(|&p| (s[p].f64() - 1.0).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Params};
    use crate::tol::Tolerances;

    fn gen(name: &str, p: &str, counts: &[usize]) -> SampledImmersion<f64> {
        generate(name, &Params::parse(p).unwrap(), counts, &Tolerances::default()).unwrap().immersion
    }

    #[test]
    fn line_and_circle_ranks() {
        let s = Settings::default();
        let f = frenet(&gen("line", "", &[128]), 2, &s).unwrap();
        assert_eq!(f.rank, 1);
        let f = frenet(&gen("circle", "r=2", &[256]), 1, &s).unwrap();
        assert_eq!(f.rank, 1);
        assert!(f.kappa[0].iter().all(|k| (k - 0.5).abs() < 1e-8));
        let f = frenet(&gen("circle", "r=2", &[256]), 1, &s).unwrap();
        assert!(f.frame_defect < 1e-12);
    }

    #[test]
    fn helix_curvatures() {
        let s = Settings::default();
        let (a, b) = (1.0, 0.5);
        let f = frenet(&gen("helix", "a=1,b=0.5", &[1024]), 2, &s).unwrap();
        assert_eq!(f.rank, 2);
        for &p in &f.trusted(0) {
            assert!((f.kappa[0][p] - a / (a * a + b * b)).abs() < 1e-6);
            assert!((f.kappa[1][p] - b / (a * a + b * b)).abs() < 1e-6, "{} {} {}", p, f.kappa[0][p], f.kappa[1][p]);
        }
        assert!(f.residual < 1e-6, "{}", f.residual);
    }

    #[test]
    fn reparametrization() {
        let s = Settings::default();
        let e = reparametrize_unit_speed(&gen("ellipse", "a=2,b=1", &[256]), &s).unwrap();
        assert!(unit_speed_deviation(&e) < 1e-8, "{}", unit_speed_deviation(&e));
        let c = gen("circle", "", &[64]);
        let r = reparametrize_unit_speed(&c, &s).unwrap();
        for (a, b) in c.points().iter().zip(r.points()) {
            assert!((a - b).abs() < 1e-12);
        }
        let grid = Grid::curve(64, 0.0, 2.0, false).unwrap();
        let seg = SampledImmersion::from_fn(grid, 2, "seg", |p| vec![p[0], p[0]]).unwrap();
        let r = reparametrize_unit_speed(&seg, &s).unwrap();
        assert!((r.grid().axis(0).end - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(unit_speed_deviation(&r) < 1e-10);
    }

    #[test]
    fn round_trip_curvature() {
        let s = Settings::default();
        let c = gen("cornu_spiral", "a=1,b=0.5,length=3", &[1024]);
        let f = frenet(&c, 1, &s).unwrap();
        let coords = c.grid().axis(0).coords();
        for &p in &f.trusted(0) {
            assert!((f.kappa[0][p] - (coords[p] + 0.5)).abs() < 1e-6);
        }
    }

    #[test]
    fn curve_laplace_identity_and_w_curve() {
        let s = Settings::default();
        let h = gen("helix", "", &[1024]);
        let lap = curve_laplace(&h, &s).unwrap();
        assert!(lap.identity_defect < 1e-6, "{}", lap.identity_defect);
        let norms: Vec<f64> = lap.dl.chunks(3).map(norm).collect();
        let trusted = h.grid().interior(4);
        let vals: Vec<f64> = trusted.iter().map(|&p| norms[p]).collect();
        assert!(crate::scalar::rel_std(&vals) < 1e-6);
        let line = curve_laplace(&gen("line", "", &[128]), &s).unwrap();
        assert!(sup(&line.l.points().iter().map(|v| v.abs()).collect::<Vec<_>>()) < 1e-10);
    }

    #[test]
    fn curve_criteria() {
        let s = Settings::default();
        let hp = gen("homothetic_plane_curve", "a=1,c=2", &[1024]);
        let f = frenet(&hp, 1, &s).unwrap();
        let h = homothety_functional(&f, &s);
        assert!(h.verdict.rel_std < 1e-6 && (h.c - 4.0).abs() < 1e-5, "{:?}", h.verdict);

        let cornu = gen("cornu_spiral", "a=1,b=0,s0=0,length=3", &[1024]);
        let f = frenet(&cornu, 1, &s).unwrap();
        let (res, v) = harmonic_lt_residual(&f, &s);
        assert!(!v.holds);
        let coords = cornu.grid().axis(0).coords();
        for &p in &f.trusted(2) {
            assert!((res[p] - 2.0 * coords[p].powi(3)).abs() < 1e-5 * (1.0 + coords[p].powi(3)));
        }
        let circle = gen("circle", "", &[256]);
        let f = frenet(&circle, 1, &s).unwrap();
        let line = laplace_in_line_residual(&circle, &f, &s).unwrap();
        assert!(!line.holds);
        assert!(laplace_in_circle_check(&circle, &s).unwrap().holds);

        let lic = gen("laplace_in_circle_curve", "c=1", &[512]);
        let chk = laplace_in_circle_check(&lic, &s).unwrap();
        assert!(chk.holds);
        assert!((chk.fit.center[0] - 1.0).abs() < 1e-4 && chk.fit.center[1].abs() < 1e-4);
        assert!((chk.fit.radius.unwrap() - 1.0).abs() < 1e-4);
        let el = reparametrize_unit_speed(&gen("ellipse", "", &[256]), &s).unwrap();
        let chk = laplace_in_circle_check(&el, &s).unwrap();
        assert!(chk.fit.residual > 10.0 * s.tol.fit_tol);
    }

    #[test]
    fn ode_curves_pass_their_criteria() {
        let s = Settings::default();
        let c = gen("harmonic_lt_curve", "", &[512]);
        let f = frenet(&c, 1, &s).unwrap();
        assert!(harmonic_lt_residual(&f, &s).1.holds, "{:?}", harmonic_lt_residual(&f, &s).1);
        let h = homothety_functional(&f, &s);
        assert!(h.verdict.holds && (h.c - 1.0).abs() < 1e-6);

        let c = gen("laplace_line_curve", "", &[512]);
        let f = frenet(&c, 1, &s).unwrap();
        let r = laplace_in_line_residual(&c, &f, &s).unwrap();
        assert!(r.holds && r.collinear, "{r:?}");

        let c = gen("laplace_line_helix", "", &[512]);
        let f = frenet(&c, 2, &s).unwrap();
        let r = laplace_in_line_residual(&c, &f, &s).unwrap();
        assert!(r.collinear && r.holds, "{r:?}");
        assert!((r.c.unwrap() - 0.5).abs() < 1e-6);

        let c = gen("lg_homothetic_curve", "c=2,k0=1", &[512]);
        let f = frenet(&c, 1, &s).unwrap();
        let lg = lg_metrics_curve(&f, &s).unwrap();
        assert!(lg.homothetic && (lg.ratio.mean - 4.0).abs() < 1e-4, "{:?}", lg.ratio);
        let c = gen("cornu_spiral", "a=1,b=0,s0=1,length=2", &[1024]);
        let f = frenet(&c, 1, &s).unwrap();
        assert!(!lg_metrics_curve(&f, &s).unwrap().homothetic);
    }
}
