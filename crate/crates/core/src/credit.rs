//! One-period defaultable bond priced against a risk-free bond.
//!
//! A risk-neutral lender is indifferent when expected gross returns agree:
//! `(1 + r̃)(1 - πλ) = 1 + r_f`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DefaultRisk {
    pi: f64,
    lambda: f64,
}

impl DefaultRisk {
    /// Default probability `pi` and loss given default `lambda`, both in `[0, 1]`.
    pub fn new(pi: f64, lambda: f64) -> Result<Self> {
        check((0.0..=1.0).contains(&pi), "pi", pi)?;
        check((0.0..=1.0).contains(&lambda), "lambda", lambda)?;
        Ok(DefaultRisk { pi, lambda })
    }

    pub fn none() -> Self {
        DefaultRisk {
            pi: 0.0,
            lambda: 0.0,
        }
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Expected loss per unit promised, `πλ`.
    pub fn expected_loss(&self) -> f64 {
        self.pi * self.lambda
    }
}

/// Extra premium a lender demands on top of expected loss, e.g. for bearing
/// variance. The risk-neutral case is [`NoAdjustment`].
pub trait PremiumAdjustment {
    fn premium(&self, r_f: f64, risk: &DefaultRisk) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoAdjustment;

impl PremiumAdjustment for NoAdjustment {
    fn premium(&self, _r_f: f64, _risk: &DefaultRisk) -> f64 {
        0.0
    }
}

/// `r̃ = (1 + r_f) / (1 - πλ) - 1`, evaluated as
/// `r_f + (1 + r_f) πλ / (1 - πλ)` so that zero expected loss returns `r_f`
/// exactly.
pub fn risky_rate_exact(r_f: f64, risk: &DefaultRisk) -> Result<f64> {
    check(r_f > -1.0 && r_f.is_finite(), "r_f", r_f)?;
    let loss = risk.expected_loss();
    if loss >= 1.0 {
        return Err(Error::Unpriceable {
            expected_loss: loss,
        });
    }
    Ok(r_f + (1.0 + r_f) * loss / (1.0 - loss))
}

/// Exact risky rate plus an additive adjustment.
pub fn risky_rate_adjusted<A: PremiumAdjustment>(
    r_f: f64,
    risk: &DefaultRisk,
    adjustment: &A,
) -> Result<f64> {
    Ok(risky_rate_exact(r_f, risk)? + adjustment.premium(r_f, risk))
}

/// First-order spread `πλ`.
pub fn risk_premium_first_order(risk: &DefaultRisk) -> f64 {
    risk.expected_loss()
}

/// `(1 - π)(1 + r̃) + π(1 + r̃)(1 - λ) = (1 + r̃)(1 - πλ)`.
pub fn expected_gross_return(r_tilde: f64, risk: &DefaultRisk) -> f64 {
    (1.0 + r_tilde) * (1.0 - risk.expected_loss())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Sample standard deviation of one draw divided by `√n`.
    pub std_error: f64,
    pub draws: u64,
    pub defaults: u64,
}

/// Mean realised gross return over `n` seeded default draws.
///
/// Each draw pays `1 + r̃`, or `(1 + r̃)(1 - λ)` on default. Since there
/// are only two outcomes the mean is computed from the default count, which
/// makes the degenerate cases exact.
pub fn simulate_default_returns(
    r_tilde: f64,
    risk: &DefaultRisk,
    n: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    check(n >= 1, "n", n as f64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let defaults = (0..n).filter(|_| rng.random::<f64>() < risk.pi).count() as u64;

    let gross = 1.0 + r_tilde;
    let share = defaults as f64 / n as f64;
    let mean = gross * (1.0 - risk.lambda * share);
    let std_error = if n > 1 {
        let var = gross * gross * risk.lambda * risk.lambda * share * (1.0 - share) * n as f64
            / (n - 1) as f64;
        libm::sqrt(var / n as f64)
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_error,
        draws: n,
        defaults,
    })
}
