//! Finite-difference derivatives along grid axes.
//!
//! Central stencils are written in difference form so constants map to exact zeros.
//! Non-periodic axes fall back to second-order stencils near each end.

use rayon::prelude::*;

use crate::grid::Grid;
use crate::scalar::Real;
use crate::tol::FdOrder;

#[derive(Clone, Copy)]
enum Deriv {
    First,
    Second,
}

pub fn d1<T: Real>(grid: &Grid<T>, axis: usize, order: FdOrder, data: &[T], comps: usize) -> Vec<T> {
    apply(grid, axis, order, data, comps, Deriv::First)
}

pub fn d2<T: Real>(grid: &Grid<T>, axis: usize, order: FdOrder, data: &[T], comps: usize) -> Vec<T> {
    apply(grid, axis, order, data, comps, Deriv::Second)
}

/// Mixed derivative `∂_0 ∂_1`.
pub fn d01<T: Real>(grid: &Grid<T>, order: FdOrder, data: &[T], comps: usize) -> Vec<T> {
    let inner = d1(grid, 1, order, data, comps);
    d1(grid, 0, order, &inner, comps)
}

fn apply<T: Real>(grid: &Grid<T>, axis: usize, order: FdOrder, data: &[T], comps: usize, kind: Deriv) -> Vec<T> {
    let ax = grid.axis(axis);
    let n = ax.count;
    let stride = grid.stride(axis);
    let h = ax.step();
    let periodic = ax.periodic;
    let mut out = vec![T::zero(); data.len()];
    out.par_chunks_mut(comps).enumerate().for_each(|(flat, o)| {
        let i = grid.multi_index(flat)[axis];
        let base = flat - i * stride;
        let at = |j: isize, c: usize| -> T {
            let jj = if periodic { j.rem_euclid(n as isize) as usize } else { j as usize };
            data[(base + jj * stride) * comps + c]
        };
        let i = i as isize;
        let last = n as isize - 1;
        for (c, slot) in o.iter_mut().enumerate() {
            let f = |k: isize| at(i + k, c);
            let f0 = f(0);
            let central4 = periodic || (i >= 2 && i <= last - 2);
            let central2 = periodic || (i >= 1 && i <= last - 1);
            *slot = match (kind, order) {
                (Deriv::First, FdOrder::Fourth) if central4 => {
                    (T::lit(8.0) * (f(1) - f(-1)) - (f(2) - f(-2))) / (T::lit(12.0) * h)
                }
                (Deriv::Second, FdOrder::Fourth) if central4 => {
                    (T::lit(16.0) * ((f(-1) - f0) + (f(1) - f0)) - ((f(-2) - f0) + (f(2) - f0)))
                        / (T::lit(12.0) * h * h)
                }
                (Deriv::First, _) if central2 => (f(1) - f(-1)) / (T::lit(2.0) * h),
                (Deriv::Second, _) if central2 => ((f(-1) - f0) + (f(1) - f0)) / (h * h),
                (Deriv::First, _) => {
                    let s = if i == 0 { 1 } else { -1 };
                    let v = T::lit(4.0) * (f(s) - f0) - (f(2 * s) - f0);
                    if s == 1 { v / (T::lit(2.0) * h) } else { -v / (T::lit(2.0) * h) }
                }
                (Deriv::Second, _) => {
                    let s = if i == 0 { 1 } else { -1 };
                    (T::lit(-5.0) * (f(s) - f0) + T::lit(4.0) * (f(2 * s) - f0) - (f(3 * s) - f0)) / (h * h)
                }
            };
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;

    fn curve_grid(n: usize, periodic: bool) -> Grid<f64> {
        Grid::curve(n, 0.0, std::f64::consts::TAU, periodic).unwrap()
    }

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn constants_differentiate_to_exact_zero() {
        let g = curve_grid(32, false);
        let data = vec![0.1234567891234f64; 32];
        assert!(d1(&g, 0, FdOrder::Fourth, &data, 1).iter().all(|&v| v == 0.0));
        assert!(d2(&g, 0, FdOrder::Fourth, &data, 1).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn fourth_order_convergence_on_periodic_sine() {
        let err = |n: usize| {
            let g = curve_grid(n, true);
            let x = g.axis(0).coords();
            let f: Vec<f64> = x.iter().map(|t| (3.0 * t).sin()).collect();
            let ex: Vec<f64> = x.iter().map(|t| -9.0 * (3.0 * t).sin()).collect();
            max_err(&d2(&g, 0, FdOrder::Fourth, &f, 1), &ex)
        };
        let rate = (err(64) / err(128)).log2();
        assert!((3.5..4.5).contains(&rate), "rate {rate}");
    }

    #[test]
    fn one_sided_stencils_are_exact_on_quadratics() {
        let g = Grid::curve(16, 0.0, 1.5, false).unwrap();
        let x = g.axis(0).coords();
        let f: Vec<f64> = x.iter().map(|t| 2.0 * t * t - t + 3.0).collect();
        let df: Vec<f64> = x.iter().map(|t| 4.0 * t - 1.0).collect();
        assert!(max_err(&d1(&g, 0, FdOrder::Fourth, &f, 1), &df) < 1e-12);
        assert!(d2(&g, 0, FdOrder::Second, &f, 1).iter().all(|v| (v - 4.0).abs() < 1e-10));
    }

    #[test]
    fn mixed_derivative_on_surface_grid() {
        let g = Grid::surface(Axis::new(40, 0.0, 1.0, false).unwrap(), Axis::new(48, 0.0, std::f64::consts::TAU, true).unwrap()).unwrap();
        let f: Vec<f64> = (0..g.len()).map(|i| { let p = g.params(i); p[0] * p[0] * (p[1]).sin() }).collect();
        let m = d01(&g, FdOrder::Fourth, &f, 1);
        for i in g.interior(2) {
            let p = g.params(i);
            assert!((m[i] - 2.0 * p[0] * p[1].cos()).abs() < 1e-4);
        }
    }
}
