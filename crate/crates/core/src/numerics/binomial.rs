use crate::error::{check, Result};

/// Smallest `k` with `P[Binomial(n, p) <= k] >= level`.
///
/// The CDF is summed term by term from `k = 0`. Terms are generated in log
/// space by the ratio recurrence, so `(1 - p)^n` may underflow without
/// losing the upper tail.
pub fn binomial_quantile(n: u64, p: f64, level: f64) -> Result<u64> {
    check((0.0..=1.0).contains(&p), "p", p)?;
    check(level > 0.0 && level < 1.0, "level", level)?;
    if n == 0 || p == 0.0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(n);
    }

    let nf = n as f64;
    let log_odds = libm::log(p) - libm::log1p(-p);
    let mut log_pmf = nf * libm::log1p(-p);
    let mut cdf = libm::exp(log_pmf);
    let mut k = 0u64;
    while cdf < level && k < n {
        let kf = k as f64;
        log_pmf += libm::log((nf - kf) / (kf + 1.0)) + log_odds;
        cdf += libm::exp(log_pmf);
        k += 1;
    }
    Ok(k)
}
