//! Small dense linear algebra on row-major slices.

use crate::scalar::Real;

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order and eigenvectors as columns of a row-major `n×n` matrix.
pub fn sym_eigen<T: Real>(a: &[T], n: usize) -> (Vec<T>, Vec<T>) {
    let mut m = a.to_vec();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let two = T::lit(2.0);
    for _sweep in 0..100 {
        let mut off = T::zero();
        let mut diag = T::zero();
        for i in 0..n {
            diag = diag + m[i * n + i] * m[i * n + i];
            for j in (i + 1)..n {
                off = off + m[i * n + j] * m[i * n + j];
            }
        }
        if off <= T::epsilon() * T::epsilon() * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| m[j * n + j].partial_cmp(&m[i * n + i]).unwrap_or(std::cmp::Ordering::Equal));
    let vals = idx.iter().map(|&i| m[i * n + i]).collect();
    let mut vecs = vec![T::zero(); n * n];
    for (col, &i) in idx.iter().enumerate() {
        for k in 0..n {
            vecs[k * n + col] = v[k * n + i];
        }
    }
    (vals, vecs)
}

/// Column `j` of a row-major `n×n` matrix.
pub fn column<T: Real>(a: &[T], n: usize, j: usize) -> Vec<T> {
    (0..n).map(|k| a[k * n + j]).collect()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting. `None` when singular.
pub fn solve<T: Real>(a: &[T], b: &[T], n: usize) -> Option<Vec<T>> {
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[r * n + col].abs() > m[piv * n + col].abs() {
                piv = r;
            }
        }
        if m[piv * n + col] == T::zero() || !m[piv * n + col].is_finite() {
            return None;
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        for r in (col + 1)..n {
            let f = m[r * n + col] / m[col * n + col];
            if f == T::zero() {
                continue;
            }
            for k in col..n {
                m[r * n + k] = m[r * n + k] - f * m[col * n + k];
            }
            x[r] = x[r] - f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in (col + 1)..n {
            s = s - m[col * n + k] * x[k];
        }
        x[col] = s / m[col * n + col];
    }
    Some(x)
}

/// Minimum-norm least squares `min ‖D c − y‖` for a row-major `rows×cols` design.
/// Columns are scaled to unit norm and the normal matrix is pseudo-inverted with relative cut `rcond`.
/// Returns the solution and the condition number of the scaled normal matrix.
pub fn lstsq<T: Real>(design: &[T], rows: usize, cols: usize, y: &[T], rcond: T) -> (Vec<T>, T) {
    let mut scale = vec![T::zero(); cols];
    for r in 0..rows {
        for c in 0..cols {
            scale[c] = scale[c] + design[r * cols + c] * design[r * cols + c];
        }
    }
    for s in scale.iter_mut() {
        *s = if *s > T::zero() { s.sqrt() } else { T::one() };
    }
    let mut ata = vec![T::zero(); cols * cols];
    let mut aty = vec![T::zero(); cols];
    for r in 0..rows {
        let row = &design[r * cols..(r + 1) * cols];
        for i in 0..cols {
            let di = row[i] / scale[i];
            aty[i] = aty[i] + di * y[r];
            for j in i..cols {
                ata[i * cols + j] = ata[i * cols + j] + di * row[j] / scale[j];
            }
        }
    }
    for i in 0..cols {
        for j in 0..i {
            ata[i * cols + j] = ata[j * cols + i];
        }
    }
    let (vals, vecs) = sym_eigen(&ata, cols);
    let top = vals.first().copied().unwrap_or(T::zero());
    let cut = top * rcond;
    let mut sol = vec![T::zero(); cols];
    let mut smallest = top;
    for k in 0..cols {
        if vals[k] <= cut || vals[k] <= T::zero() {
            continue;
        }
        smallest = vals[k];
        let v = column(&vecs, cols, k);
        let coef = crate::scalar::dot(&v, &aty) / vals[k];
        for i in 0..cols {
            sol[i] = sol[i] + coef * v[i];
        }
    }
    for i in 0..cols {
        sol[i] = sol[i] / scale[i];
    }
    let cond = if smallest > T::zero() { top / smallest } else { T::infinity() };
    (sol, cond)
}

/// Levenberg–Marquardt on residual function `r(p)` with forward-difference Jacobian.
/// Returns the parameters and the final sum of squared residuals.
pub fn levenberg_marquardt<T, F>(p0: &[T], residual: F, max_iter: usize) -> (Vec<T>, T)
where
    T: Real,
    F: Fn(&[T]) -> Vec<T>,
{
    let np = p0.len();
    let mut p = p0.to_vec();
    let mut r = residual(&p);
    let mut cost = crate::scalar::dot(&r, &r);
    let mut lambda = T::lit(1e-3);
    let h_rel = T::epsilon().sqrt();
    for _ in 0..max_iter {
        let nr = r.len();
        let mut jac = vec![T::zero(); nr * np];
        for k in 0..np {
            let h = h_rel * (p[k].abs() + T::one());
            let mut pk = p.clone();
            pk[k] = pk[k] + h;
            let rk = residual(&pk);
            for i in 0..nr {
                jac[i * np + k] = (rk[i] - r[i]) / h;
            }
        }
        let mut jtj = vec![T::zero(); np * np];
        let mut jtr = vec![T::zero(); np];
        for i in 0..nr {
            for a in 0..np {
                jtr[a] = jtr[a] + jac[i * np + a] * r[i];
                for b in 0..np {
                    jtj[a * np + b] = jtj[a * np + b] + jac[i * np + a] * jac[i * np + b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..20 {
            let mut m = jtj.clone();
            for a in 0..np {
                m[a * np + a] = m[a * np + a] * (T::one() + lambda) + lambda * T::lit(1e-12);
            }
            let neg: Vec<T> = jtr.iter().map(|&v| -v).collect();
            let Some(step) = solve(&m, &neg, np) else {
                lambda = lambda * T::lit(10.0);
                continue;
            };
            let trial: Vec<T> = p.iter().zip(&step).map(|(&a, &b)| a + b).collect();
            let rt = residual(&trial);
            let ct = crate::scalar::dot(&rt, &rt);
            if ct.is_finite() && ct < cost {
                let rel = (cost - ct) / cost.max(T::min_positive_value());
                p = trial;
                r = rt;
                cost = ct;
                lambda = (lambda / T::lit(10.0)).max(T::lit(1e-15));
                improved = true;
                if rel < T::epsilon() * T::lit(16.0) {
                    return (p, cost);
                }
                break;
            }
            lambda = lambda * T::lit(10.0);
        }
        if !improved || cost == T::zero() {
            break;
        }
    }
    (p, cost)
}

/// Singular values (descending) of a row-major `rows×cols` matrix via its Gram matrix.
pub fn singular_values<T: Real>(a: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut g = vec![T::zero(); cols * cols];
    for r in 0..rows {
        for i in 0..cols {
            for j in 0..cols {
                g[i * cols + j] = g[i * cols + j] + a[r * cols + i] * a[r * cols + j];
            }
        }
    }
    let (vals, _) = sym_eigen(&g, cols);
    vals.into_iter().map(|v| v.max(T::zero()).sqrt()).collect()
}

/// Centered covariance (unnormalized) of a point set, with the centroid.
pub fn scatter<T: Real>(points: &[T], m: usize) -> (Vec<T>, Vec<T>) {
    let count = points.len() / m;
    let mut c = vec![T::zero(); m];
    for p in points.chunks(m) {
        for k in 0..m {
            c[k] = c[k] + p[k];
        }
    }
    for v in c.iter_mut() {
        *v = *v / T::of(count.max(1));
    }
    let mut s = vec![T::zero(); m * m];
    for p in points.chunks(m) {
        for i in 0..m {
            let di = p[i] - c[i];
            for j in 0..m {
                s[i * m + j] = s[i * m + j] + di * (p[j] - c[j]);
            }
        }
    }
    (s, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let a = [2.0f64, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 5.0];
        let (vals, vecs) = sym_eigen(&a, 3);
        assert_relative_eq!(vals[0], 5.0, epsilon = 1e-14);
        assert_relative_eq!(vals[1], 3.0, epsilon = 1e-14);
        assert_relative_eq!(vals[2], 1.0, epsilon = 1e-14);
        let v = column(&vecs, 3, 1);
        assert_relative_eq!(v[0].abs(), 0.5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn solve_small_system() {
        let a = [0.0, 2.0, 1.0, 1.0];
        let x = solve(&a, &[4.0, 3.0], 2).unwrap();
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(x[1], 2.0, epsilon = 1e-14);
        assert!(solve(&[1.0, 1.0, 1.0, 1.0], &[1.0, 2.0], 2).is_none());
    }

    #[test]
    fn lstsq_fits_line_and_handles_null_column() {
        let mut d = vec![];
        let mut y = vec![];
        for i in 0..10 {
            let t = i as f64;
            d.extend_from_slice(&[t, 1.0, 0.0]);
            y.push(3.0 * t - 1.0);
        }
        let (c, _) = lstsq(&d, 10, 3, &y, 1e-13);
        assert_relative_eq!(c[0], 3.0, epsilon = 1e-10);
        assert_relative_eq!(c[1], -1.0, epsilon = 1e-10);
        assert_eq!(c[2], 0.0);
    }

    #[test]
    fn lm_fits_exponential() {
        let ts: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = ts.iter().map(|t| 2.0 * (-1.5 * t).exp()).collect();
        let (p, cost) = levenberg_marquardt(
            &[1.0, -1.0],
            |p| ts.iter().zip(&ys).map(|(t, y)| p[0] * (p[1] * t).exp() - y).collect(),
            200,
        );
        assert!(cost < 1e-20);
        assert_relative_eq!(p[1], -1.5, epsilon = 1e-8);
    }

    #[test]
    fn singular_values_of_rank_one() {
        let a = [1.0, 2.0, 2.0, 4.0, 3.0, 6.0];
        let s = singular_values(&a, 3, 2);
        assert!(s[1] < 1e-7 * s[0]);
    }
}
