use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Condition number reported for a rank-deficient design when the computed
/// singular-value ratio is smaller than this or infinite.
pub const RANK_DEFICIENT_CONDITION: f64 = 1e16;

const MAX_SWEEPS: usize = 60;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape("data length is not rows * cols"));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape("ragged rows"));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Result of [`ols_fit`].
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit {
    pub coefficients: Vec<f64>,
    /// Homoskedastic standard errors. Infinite for coefficients that load on a
    /// dropped (null-space) direction, or when there are no residual degrees
    /// of freedom.
    pub standard_errors: Vec<f64>,
    /// Centered R², clamped to `[0, 1]`.
    pub r_squared: f64,
    /// Ratio of the largest to the smallest singular value of `X`.
    pub condition_number: f64,
    pub rank: usize,
    pub residuals: Vec<f64>,
}

impl LeastSquaresFit {
    pub fn is_rank_deficient(&self) -> bool {
        self.rank < self.coefficients.len()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Thin SVD by one-sided Jacobi rotations. Returns the rotated columns
/// `A V = U Σ` (so `‖col_j‖ = σ_j`) and `V`, column-major.
fn jacobi_svd(x: &Matrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let k = x.cols;
    let mut a: Vec<Vec<f64>> = (0..k).map(|j| x.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = dot(&a[p], &a[p]);
                let beta = dot(&a[q], &a[q]);
                let gamma = dot(&a[p], &a[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for cols in [&mut a, &mut v] {
                    let (left, right) = cols.split_at_mut(q);
                    for (ap, aq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                        let (xp, xq) = (*ap, *aq);
                        *ap = c * xp - s * xq;
                        *aq = s * xp + c * xq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    (a, v)
}

/// Ordinary least squares through an orthogonal decomposition of `X`.
///
/// Directions whose singular value falls below `max(n, k) * ε * σ_max` are
/// dropped: their coefficient contribution is zero, the affected standard
/// errors are infinite and the condition number is at least
/// [`RANK_DEFICIENT_CONDITION`]. No collinearity threshold is applied here.
pub fn ols_fit(x: &Matrix, y: &[f64]) -> Result<LeastSquaresFit> {
    let (n, k) = (x.rows, x.cols);
    if k == 0 || n < k {
        return Err(Error::Shape("ols needs n >= k >= 1"));
    }
    if y.len() != n {
        return Err(Error::Shape("response length differs from design rows"));
    }
    if let Some(bad) = x.data.iter().chain(y).find(|v| !v.is_finite()) {
        return Err(Error::NonFinite { at: *bad });
    }

    let (us, v) = jacobi_svd(x);
    let sigma: Vec<f64> = us.iter().map(|c| libm::sqrt(dot(c, c))).collect();
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = (n.max(k) as f64) * f64::EPSILON * sigma_max;
    let kept: Vec<bool> = sigma.iter().map(|&s| s > cutoff && s > 0.0).collect();
    let rank = kept.iter().filter(|&&b| b).count();

    let mut coefficients = vec![0.0; k];
    for j in (0..k).filter(|&j| kept[j]) {
        let w = dot(&us[j], y) / (sigma[j] * sigma[j]);
        for (c, vij) in coefficients.iter_mut().zip(&v[j]) {
            *c += w * vij;
        }
    }

    let residuals: Vec<f64> = (0..n)
        .map(|i| y[i] - dot(x.row(i), &coefficients))
        .collect();
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    let mean = y.iter().sum::<f64>() / n as f64;
    let sst: f64 = y.iter().map(|v| (v - mean) * (v - mean)).sum();
    let r_squared = if sst > 0.0 {
        (1.0 - ssr / sst).clamp(0.0, 1.0)
    } else if ssr <= f64::EPSILON * y.iter().map(|v| v * v).sum::<f64>() {
        1.0
    } else {
        0.0
    };

    let dof = n - rank;
    let sigma2 = if dof > 0 {
        ssr / dof as f64
    } else {
        f64::INFINITY
    };
    let null_loading = libm::sqrt(f64::EPSILON);
    let standard_errors = (0..k)
        .map(|i| {
            let mut var = 0.0;
            for j in 0..k {
                if kept[j] {
                    var += v[j][i] * v[j][i] / (sigma[j] * sigma[j]);
                } else if v[j][i].abs() > null_loading {
                    return f64::INFINITY;
                }
            }
            if var == 0.0 {
                0.0
            } else {
                libm::sqrt(sigma2 * var)
            }
        })
        .collect();

    let sigma_min = sigma.iter().copied().fold(f64::INFINITY, f64::min);
    let ratio = sigma_max / sigma_min;
    let condition_number = if rank < k {
        if ratio.is_finite() {
            ratio.max(RANK_DEFICIENT_CONDITION)
        } else {
            RANK_DEFICIENT_CONDITION
        }
    } else {
        ratio.max(1.0)
    };

    Ok(LeastSquaresFit {
        coefficients,
        standard_errors,
        r_squared,
        condition_number,
        rank,
        residuals,
    })
}
