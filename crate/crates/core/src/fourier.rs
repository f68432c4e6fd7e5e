//! Real trigonometric series of periodic samples.

use std::f64::consts::TAU;

use rustfft::{num_complex::Complex, FftPlanner};

/// `x(t) = a0 + Σ_k (a[k-1] cos(ωk t) + b[k-1] sin(ωk t))`, `ω = 2π/period`.
#[derive(Clone, Debug)]
pub struct RealSeries {
    pub period: f64,
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Complex DFT of one real signal.
pub fn dft(samples: &[f64]) -> Vec<Complex<f64>> {
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

impl RealSeries {
    /// Series through `samples` taken at `start + i·period/N`. The Nyquist term of an
    /// even-length signal is split evenly between cosine and the aliased partner, so it
    /// carries half weight here and is dropped by odd derivatives.
    pub fn fit(samples: &[f64], start: f64, period: f64) -> Self {
        let n = samples.len();
        let spec = dft(samples);
        let half = n / 2;
        let nf = n as f64;
        let mut a = Vec::with_capacity(half);
        let mut b = Vec::with_capacity(half);
        let w = TAU / period;
        for (k, c) in spec.iter().enumerate().take(half + 1).skip(1) {
            let weight = if 2 * k == n { 1.0 } else { 2.0 };
            let (re, im) = (weight * c.re / nf, -weight * c.im / nf);
            // shift the origin from `start` to 0
            let (s, co) = (w * k as f64 * start).sin_cos();
            a.push(re * co - im * s);
            b.push(re * s + im * co);
        }
        RealSeries { period, a0: spec[0].re / nf, a, b }
    }

    pub fn omega(&self) -> f64 {
        TAU / self.period
    }

    /// Value of the `order`-th derivative at `t`.
    pub fn eval(&self, t: f64, order: u32) -> f64 {
        let w = self.omega();
        let mut acc = if order == 0 { self.a0 } else { 0.0 };
        for k in 0..self.a.len() {
            let wk = w * (k + 1) as f64;
            let (s, c) = (wk * t).sin_cos();
            let f = wk.powi(order as i32);
            let (ca, cb) = match order % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            acc += f * (self.a[k] * ca + self.b[k] * cb);
        }
        acc
    }

    /// Antiderivative of the oscillating part (the mean is excluded).
    pub fn primitive(&self, t: f64) -> f64 {
        let w = self.omega();
        let mut acc = 0.0;
        for k in 0..self.a.len() {
            let wk = w * (k + 1) as f64;
            let (s, c) = (wk * t).sin_cos();
            acc += (self.a[k] * s - self.b[k] * c) / wk;
        }
        acc
    }
}

/// Derivative of periodic samples by exact differentiation of the interpolating series.
pub fn spectral_derivative(samples: &[f64], period: f64, order: u32) -> Vec<f64> {
    let n = samples.len();
    let mut spec = dft(samples);
    let w = TAU / period;
    for (k, c) in spec.iter_mut().enumerate() {
        let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        if 2 * k == n && order % 2 == 1 {
            *c = Complex::new(0.0, 0.0);
            continue;
        }
        let f = Complex::new(0.0, w * kk).powu(order);
        *c *= f;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut spec);
    spec.iter().map(|c| c.re / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_reproduces_trig_polynomial() {
        let n = 32;
        let period = 3.0;
        let w = TAU / period;
        let f = |t: f64| 0.5 + 2.0 * (w * t).cos() - 0.3 * (3.0 * w * t).sin();
        let start = 0.7;
        let xs: Vec<f64> = (0..n).map(|i| f(start + i as f64 * period / n as f64)).collect();
        let s = RealSeries::fit(&xs, start, period);
        for t in [0.0, 0.33, 1.9] {
            assert!((s.eval(t, 0) - f(t)).abs() < 1e-13);
            let df = -2.0 * w * (w * t).sin() - 0.9 * w * (3.0 * w * t).cos();
            assert!((s.eval(t, 1) - df).abs() < 1e-12);
        }
        let d2 = spectral_derivative(&xs, period, 2);
        for (i, v) in d2.iter().enumerate() {
            let t = start + i as f64 * period / n as f64;
            let exact = -2.0 * w * w * (w * t).cos() + 2.7 * w * w * (3.0 * w * t).sin();
            assert!((v - exact).abs() < 1e-11);
        }
    }
}
