use crate::error::{check, Error, Result};

/// Step used when the caller has no better choice: `max(1e-6, 1e-6 * |x|)`.
pub fn default_step(x: f64) -> f64 {
    f64::max(1e-6, 1e-6 * x.abs())
}

/// Central difference `(f(x + h) - f(x - h)) / (2h)`.
pub fn finite_diff<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    check(h > 0.0 && h.is_finite(), "h", h)?;
    let up = f(x + h);
    if !up.is_finite() {
        return Err(Error::NonFinite { at: x + h });
    }
    let down = f(x - h);
    if !down.is_finite() {
        return Err(Error::NonFinite { at: x - h });
    }
    Ok((up - down) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let d = finite_diff(|x| x * x, 1.0, 1e-5).unwrap();
        assert!((d - 2.0).abs() < 1e-8);
    }

    #[test]
    fn constant() {
        assert_eq!(finite_diff(|_| 7.5, 3.0, 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        assert!(finite_diff(|x| x, 0.0, 0.0).is_err());
        assert!(matches!(
            finite_diff(libm::log, 0.0, 1e-6),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn step_floor() {
        assert_eq!(default_step(0.05), 1e-6);
        assert_eq!(default_step(1e3), 1e-3);
    }
}
