//! Finite-type analysis of closed curves and flat tori.

mod polynomial;
mod torus;
mod twotype;

#[cfg(test)]
mod tests;

use std::f64::consts::TAU;

use serde::{Serialize, Serializer};

use crate::error::{GeoError, Result};
use crate::fourier::RealSeries;
use crate::frenet::speed;
use crate::grid::Grid;
use crate::immersion::SampledImmersion;
use crate::scalar::Real;
use crate::tol::Settings;

pub use polynomial::{linear_fit_ax_b, minimal_polynomial_fit, minimal_polynomial_of, LinearFit, MinimalPolynomialFit};
pub use torus::{decompose_flat_torus, TorusComponent, TorusDecomposition};
pub use twotype::{
    conjugate_2type, dual_2type_check, orthogonality_report, spherical_2type_invariants, ConjugateCurve, DualCheck,
    OrthogonalityReport, SubspaceData, TwoTypeInvariants,
};

/// Number of nonzero frequency components, or infinite when the spectrum reaches the grid resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KType {
    Finite(usize),
    Infinite,
}

impl KType {
    pub fn finite(self) -> Option<usize> {
        match self {
            KType::Finite(k) => Some(k),
            KType::Infinite => None,
        }
    }
}

impl std::fmt::Display for KType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KType::Finite(k) => write!(f, "{k}"),
            KType::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for KType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KType::Finite(k) => s.serialize_u64(*k as u64),
            KType::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// `x_t(s) = a cos(2πts/T) + b sin(2πts/T)`.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub t: usize,
    pub lambda: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl Component {
    /// Derivative of the given order at `s`.
    pub fn eval(&self, s: f64, period: f64, order: u32) -> Vec<f64> {
        let w = TAU * self.t as f64 / period;
        let (sn, cs) = (w * s).sin_cos();
        let f = w.powi(order as i32);
        let (ca, cb) = match order % 4 {
            0 => (cs, sn),
            1 => (-sn, cs),
            2 => (-cs, -sn),
            _ => (sn, -cs),
        };
        self.a.iter().zip(&self.b).map(|(a, b)| f * (a * ca + b * cb)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralDecomposition {
    pub period: f64,
    /// Center of mass.
    pub mean: Vec<f64>,
    /// Components in the type set, by increasing frequency.
    pub components: Vec<Component>,
    pub type_set: Vec<usize>,
    /// `[min, max]` of the type set.
    pub order: Option<[usize; 2]>,
    pub k_type: KType,
    pub amp_tol: f64,
    /// RMS of `x − x₀ − Σ x_t` relative to the RMS of `x − x₀`.
    pub closure: f64,
    /// `sup |‖x'‖ − 1|`.
    pub speed_deviation: f64,
    #[serde(skip)]
    pub amplitudes: Vec<f64>,
    #[serde(skip)]
    pub grid: Grid<f64>,
}

impl SpectralDecomposition {
    pub fn component(&self, t: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.t == t)
    }

    /// `x₀ + Σ x_t` at the grid samples.
    pub fn reconstruct(&self) -> Vec<f64> {
        let ax = self.grid.axis(0);
        let m = self.mean.len();
        let mut out = Vec::with_capacity(ax.count * m);
        for i in 0..ax.count {
            let s = ax.coord(i);
            let mut p = self.mean.clone();
            for c in &self.components {
                for (v, d) in p.iter_mut().zip(c.eval(s, self.period, 0)) {
                    *v += d;
                }
            }
            out.extend(p);
        }
        out
    }

    /// Components sampled on the grid together with their arclength derivatives.
    pub fn eigencomponents(&self) -> Vec<EigenComponent> {
        let ax = self.grid.axis(0);
        self.components
            .iter()
            .map(|c| {
                let mut values = Vec::with_capacity(ax.count * self.mean.len());
                let mut deriv = Vec::with_capacity(values.capacity());
                for i in 0..ax.count {
                    values.extend(c.eval(ax.coord(i), self.period, 0));
                    deriv.extend(c.eval(ax.coord(i), self.period, 1));
                }
                EigenComponent { label: c.t.to_string(), lambda: c.lambda, values, derivatives: vec![deriv] }
            })
            .collect()
    }
}

/// One eigenspace component sampled on the grid.
#[derive(Clone, Debug)]
pub struct EigenComponent {
    pub label: String,
    pub lambda: f64,
    /// Row-major `samples × m`.
    pub values: Vec<f64>,
    /// One field per coordinate axis.
    pub derivatives: Vec<Vec<f64>>,
}

/// Common view of curve and torus decompositions.
pub trait Spectrum {
    fn k_type(&self) -> KType;
    fn ambient_dim(&self) -> usize;
    fn eigencomponents(&self) -> Vec<EigenComponent>;
}

impl Spectrum for SpectralDecomposition {
    fn k_type(&self) -> KType {
        self.k_type
    }
    fn ambient_dim(&self) -> usize {
        self.mean.len()
    }
    fn eigencomponents(&self) -> Vec<EigenComponent> {
        SpectralDecomposition::eigencomponents(self)
    }
}

fn check_closed_curve<T: Real>(c: &SampledImmersion<T>, settings: &Settings) -> Result<f64> {
    if c.intrinsic_dim() != 1 {
        return Err(GeoError::Input(format!("expected a curve, got intrinsic dimension {}", c.intrinsic_dim())));
    }
    if !c.grid().axis(0).periodic {
        return Err(GeoError::NotClosed);
    }
    let deviation = speed(c).iter().map(|v| (v.f64() - 1.0).abs()).fold(0.0, f64::max);
    if !(deviation <= settings.tol.speed_tol) {
        return Err(GeoError::NotUnitSpeed { deviation });
    }
    Ok(deviation)
}

/// Fourier decomposition of a closed unit-speed curve into eigencomponents of the Laplacian.
pub fn decompose_closed_curve<T: Real>(c: &SampledImmersion<T>, settings: &Settings) -> Result<SpectralDecomposition> {
    let speed_deviation = check_closed_curve(c, settings)?;
    let grid = c.grid().cast::<f64>();
    let ax = grid.axis(0).clone();
    let (n, m) = (c.len(), c.ambient_dim());
    let period = ax.end - ax.start;
    let series: Vec<RealSeries> = (0..m)
        .map(|k| {
            let v: Vec<f64> = (0..n).map(|i| c.point(i)[k].f64()).collect();
            RealSeries::fit(&v, ax.start, period)
        })
        .collect();
    let half = n / 2;
    let amplitudes: Vec<f64> = (0..half)
        .map(|j| series.iter().map(|s| s.a[j] * s.a[j] + s.b[j] * s.b[j]).sum::<f64>().sqrt())
        .collect();
    let top = amplitudes.iter().copied().fold(0.0, f64::max);
    let amp_tol = settings.tol.amp_tol;
    let type_set: Vec<usize> = (0..half).filter(|&j| amplitudes[j] > amp_tol * top).map(|j| j + 1).collect();
    let w = TAU / period;
    let components: Vec<Component> = type_set
        .iter()
        .map(|&t| Component {
            t,
            lambda: (w * t as f64).powi(2),
            a: series.iter().map(|s| s.a[t - 1]).collect(),
            b: series.iter().map(|s| s.b[t - 1]).collect(),
        })
        .collect();
    let order = match (type_set.first(), type_set.last()) {
        (Some(&p), Some(&q)) => Some([p, q]),
        _ => None,
    };
    let k_type = match order {
        Some([_, q]) if 2 * q >= half => KType::Infinite,
        _ => KType::Finite(type_set.len()),
    };
    let mut d = SpectralDecomposition {
        period,
        mean: series.iter().map(|s| s.a0).collect(),
        components,
        type_set,
        order,
        k_type,
        amp_tol,
        closure: 0.0,
        speed_deviation,
        amplitudes,
        grid,
    };
    let rec = d.reconstruct();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..n {
        for k in 0..m {
            let x = c.point(i)[k].f64();
            num += (x - rec[i * m + k]).powi(2);
            den += (x - d.mean[k]).powi(2);
        }
    }
    d.closure = if den > 0.0 { (num / den).sqrt() } else { 0.0 };
    Ok(d)
}

/// Closed curve ready for spectral analysis: unchanged when unit speed, otherwise resampled by arclength.
/// The flag records whether resampling took place.
pub fn unit_speed_closed_curve<T: Real>(c: &SampledImmersion<T>, settings: &Settings) -> Result<(SampledImmersion<T>, bool)> {
    match check_closed_curve(c, settings) {
        Ok(_) => Ok((c.clone(), false)),
        Err(GeoError::NotUnitSpeed { .. }) => {
            let r = crate::frenet::reparametrize_unit_speed(c, settings)?;
            check_closed_curve(&r, settings)?;
            Ok((r, true))
        }
        Err(e) => Err(e),
    }
}
