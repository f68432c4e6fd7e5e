//! Uniform parameter grids with one or two axes.

use crate::error::{GeoError, Result};
use crate::scalar::Real;

pub const MIN_SAMPLES: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis<T> {
    pub count: usize,
    pub start: T,
    pub end: T,
    pub periodic: bool,
}

impl<T: Real> Axis<T> {
    pub fn new(count: usize, start: T, end: T, periodic: bool) -> Result<Self> {
        if count < MIN_SAMPLES {
            return Err(GeoError::Input(format!("axis needs at least {MIN_SAMPLES} samples, got {count}")));
        }
        if !(end > start) {
            return Err(GeoError::Input(format!("axis end {end} must exceed start {start}")));
        }
        Ok(Axis { count, start, end, periodic })
    }

    pub fn step(&self) -> T {
        if self.periodic {
            (self.end - self.start) / T::of(self.count)
        } else {
            (self.end - self.start) / T::of(self.count - 1)
        }
    }

    pub fn coord(&self, i: usize) -> T {
        self.start + T::of(i) * self.step()
    }

    pub fn coords(&self) -> Vec<T> {
        (0..self.count).map(|i| self.coord(i)).collect()
    }

    pub fn cast<U: Real>(&self) -> Axis<U> {
        Axis { count: self.count, start: U::lit(self.start.f64()), end: U::lit(self.end.f64()), periodic: self.periodic }
    }
}

/// Row-major grid, last axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T> {
    axes: Vec<Axis<T>>,
}

impl<T: Real> Grid<T> {
    pub fn new(axes: Vec<Axis<T>>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(GeoError::Input(format!("grids have 1 or 2 axes, got {}", axes.len())));
        }
        Ok(Grid { axes })
    }

    pub fn curve(count: usize, start: T, end: T, periodic: bool) -> Result<Self> {
        Grid::new(vec![Axis::new(count, start, end, periodic)?])
    }

    pub fn surface(a0: Axis<T>, a1: Axis<T>) -> Result<Self> {
        Grid::new(vec![a0, a1])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis<T>] {
        &self.axes
    }

    pub fn axis(&self, k: usize) -> &Axis<T> {
        &self.axes[k]
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn all_periodic(&self) -> bool {
        self.axes.iter().all(|a| a.periodic)
    }

    /// Stride of axis `k` in the flat sample index.
    pub fn stride(&self, k: usize) -> usize {
        self.axes[k + 1..].iter().map(|a| a.count).product()
    }

    pub fn multi_index(&self, flat: usize) -> [usize; 2] {
        if self.dim() == 1 {
            [flat, 0]
        } else {
            let n1 = self.axes[1].count;
            [flat / n1, flat % n1]
        }
    }

    pub fn flat(&self, idx: [usize; 2]) -> usize {
        if self.dim() == 1 {
            idx[0]
        } else {
            idx[0] * self.axes[1].count + idx[1]
        }
    }

    /// Parameter coordinates of a sample.
    pub fn params(&self, flat: usize) -> Vec<T> {
        let idx = self.multi_index(flat);
        self.axes.iter().enumerate().map(|(k, a)| a.coord(idx[k])).collect()
    }

    /// True when the sample lies at least `band` samples away from every non-periodic end.
    pub fn is_interior(&self, flat: usize, band: usize) -> bool {
        let idx = self.multi_index(flat);
        self.axes.iter().enumerate().all(|(k, a)| a.periodic || (idx[k] >= band && idx[k] + band < a.count))
    }

    /// Flat indices of samples outside the boundary band.
    pub fn interior(&self, band: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_interior(i, band)).collect()
    }

    /// Quadrature weights: midpoint on periodic axes, trapezoid on bounded ones.
    pub fn quadrature_weights(&self) -> Vec<T> {
        let per_axis: Vec<Vec<T>> = self
            .axes
            .iter()
            .map(|a| {
                let h = a.step();
                (0..a.count)
                    .map(|i| if !a.periodic && (i == 0 || i + 1 == a.count) { h / T::lit(2.0) } else { h })
                    .collect()
            })
            .collect();
        (0..self.len())
            .map(|f| {
                let idx = self.multi_index(f);
                per_axis.iter().enumerate().fold(T::one(), |w, (k, ws)| w * ws[idx[k]])
            })
            .collect()
    }

    pub fn cast<U: Real>(&self) -> Grid<U> {
        Grid { axes: self.axes.iter().map(|a| a.cast()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_step_excludes_endpoint() {
        let a = Axis::new(16, 0.0, 16.0, true).unwrap();
        assert_eq!(a.step(), 1.0);
        let b = Axis::new(17, 0.0, 16.0, false).unwrap();
        assert_eq!(b.step(), 1.0);
        assert_eq!(b.coord(16), 16.0);
    }

    #[test]
    fn rejects_small_axes() {
        assert!(Axis::new(8, 0.0, 1.0, false).is_err());
        assert!(Axis::new(16, 1.0, 1.0, false).is_err());
    }

    #[test]
    fn flat_index_round_trip() {
        let g = Grid::surface(Axis::new(16, 0.0, 1.0, false).unwrap(), Axis::new(20, 0.0, 1.0, true).unwrap()).unwrap();
        for f in [0, 19, 20, 319] {
            assert_eq!(g.flat(g.multi_index(f)), f);
        }
        assert_eq!(g.stride(0), 20);
        assert_eq!(g.interior(2).len(), 12 * 20);
    }

    #[test]
    fn weights_sum_to_domain_measure() {
        let g = Grid::surface(Axis::new(33, 0.0, 2.0, false).unwrap(), Axis::new(16, 0.0, 3.0, true).unwrap()).unwrap();
        let total: f64 = g.quadrature_weights().iter().sum();
        assert!((total - 6.0).abs() < 1e-12);
    }
}
