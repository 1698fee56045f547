use crate::error::{check, Error, Result};

/// Stopping rule for iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_iter: 200,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        check(abs_tol > 0.0, "abs_tol", abs_tol)?;
        check(rel_tol > 0.0, "rel_tol", rel_tol)?;
        check(max_iter >= 1, "max_iter", max_iter as f64)?;
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// Bisect until the bracket cannot shrink any further in `f64`.
    pub fn machine() -> Self {
        Tolerance {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol: 4.0 * f64::EPSILON,
            max_iter: 2100,
        }
    }
}

fn eval<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

/// Finds a root of `f` on `[lo, hi]` by bisection.
///
/// Returns as soon as `|f(x)| <= abs_tol`, the bracket width drops below
/// `rel_tol * |x|`, or the bracket collapses onto adjacent floats.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, tol: &Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::NoSignChange { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = eval(&mut f, lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = eval(&mut f, hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_sign_negative() == f_hi.is_sign_negative() {
        return Err(Error::NoSignChange { lo, hi });
    }

    for _ in 0..tol.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        let f_mid = eval(&mut f, mid)?;
        if f_mid.abs() <= tol.abs_tol
            || hi - lo <= tol.rel_tol * mid.abs()
            || mid <= lo
            || mid >= hi
        {
            return Ok(mid);
        }
        if f_mid.is_sign_negative() == f_lo.is_sign_negative() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        iterations: tol.max_iter,
    })
}
