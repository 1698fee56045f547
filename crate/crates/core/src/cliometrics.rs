//! Synthetic bank panels and the identification of the encumbrance premium.
//!
//! Each bank-period draws default probability `π`, loss given default `λ` and
//! a redemption intensity `q` uniformly from configured ranges. The observed
//! spread over the risk-free rate is `πλ + φ + noise`. Regressing it on
//! `(1, πλ, redemption proxy)` recovers `κ` only when the proxy moves
//! independently of default loss:
//!
//! * [`Regime::FreeBanking`]: proxy `r*(L)/L` from a binomial reserve rule
//!   with intensity `q`, priced at `κ`.
//! * [`Regime::FiatNoRedemption`]: the same proxy is recorded but priced at
//!   zero (`κ` forced to 0).
//! * [`Regime::FiatBackstopCollinear`]: the proxy is a fixed multiple of
//!   default loss, so the design matrix is rank deficient.
//!
//! Every row has its own generator, seeded from `(seed, bank_id, period)`, so
//! the panel does not depend on generation order.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bank::{encumbrance_premium, required_reserve, ReserveRule, DEFAULT_FAILURE_TOLERANCE};
use crate::credit::DefaultRisk;
use crate::error::{check, Error, Result};
use crate::numerics::{ols_fit, LeastSquaresFit, Matrix};

/// Designs at or above this condition number are declared unidentified.
pub const IDENTIFICATION_CONDITION_LIMIT: f64 = 1e8;

/// Proxy-to-default-loss ratio under [`Regime::FiatBackstopCollinear`].
pub const BACKSTOP_PROXY_SCALE: f64 = 5.0;

pub const DEFAULT_LOAN_SIZE: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Regime {
    FreeBanking,
    FiatNoRedemption,
    FiatBackstopCollinear,
}

impl Regime {
    pub const ALL: [Regime; 3] = [
        Regime::FreeBanking,
        Regime::FiatNoRedemption,
        Regime::FiatBackstopCollinear,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Regime::FreeBanking => "free_banking",
            Regime::FiatNoRedemption => "fiat_no_redemption",
            Regime::FiatBackstopCollinear => "fiat_backstop_collinear",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownRegime;

impl fmt::Display for UnknownRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown regime tag")
    }
}

impl FromStr for Regime {
    type Err = UnknownRegime;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or(UnknownRegime)
    }
}

#[cfg(feature = "serde")]
fn default_loan_size() -> f64 {
    DEFAULT_LOAN_SIZE
}

#[cfg(feature = "serde")]
fn default_failure_tolerance() -> f64 {
    DEFAULT_FAILURE_TOLERANCE
}

#[cfg(feature = "serde")]
fn default_note_unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegimeConfig {
    pub regime: Regime,
    pub n_banks: u32,
    pub n_periods: u32,
    pub r_f: f64,
    pub kappa_true: f64,
    pub pi_range: [f64; 2],
    pub lambda_range: [f64; 2],
    pub q_range: [f64; 2],
    pub noise_sd: f64,
    pub seed: u64,
    #[cfg_attr(feature = "serde", serde(default = "default_loan_size"))]
    pub loan_size: f64,
    #[cfg_attr(feature = "serde", serde(default = "default_failure_tolerance"))]
    pub failure_tolerance: f64,
    #[cfg_attr(feature = "serde", serde(default = "default_note_unit"))]
    pub note_unit: f64,
}

impl RegimeConfig {
    /// 50 banks × 100 periods, `κ = 0.05`, noise sd 0.002.
    pub fn preset(regime: Regime, seed: u64) -> Self {
        RegimeConfig {
            regime,
            n_banks: 50,
            n_periods: 100,
            r_f: 0.03,
            kappa_true: 0.05,
            pi_range: [0.005, 0.05],
            lambda_range: [0.2, 0.8],
            q_range: [0.02, 0.2],
            noise_sd: 0.002,
            seed,
            loan_size: DEFAULT_LOAN_SIZE,
            failure_tolerance: DEFAULT_FAILURE_TOLERANCE,
            note_unit: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let rows = self.n_banks as u64 * self.n_periods as u64;
        check(rows >= 10, "n_banks * n_periods", rows as f64)?;
        check(self.r_f > -1.0 && self.r_f.is_finite(), "r_f", self.r_f)?;
        check(
            self.kappa_true >= 0.0 && self.kappa_true.is_finite(),
            "kappa_true",
            self.kappa_true,
        )?;
        for (name, [lo, hi]) in [
            ("pi_range", self.pi_range),
            ("lambda_range", self.lambda_range),
            ("q_range", self.q_range),
        ] {
            check(
                lo >= 0.0 && lo <= hi && hi <= 1.0,
                name,
                if lo >= 0.0 { hi } else { lo },
            )?;
        }
        let worst = self.pi_range[1] * self.lambda_range[1];
        check(worst < 1.0, "pi_range[1] * lambda_range[1]", worst)?;
        check(
            self.noise_sd >= 0.0 && self.noise_sd.is_finite(),
            "noise_sd",
            self.noise_sd,
        )?;
        check(
            self.loan_size > 0.0 && self.loan_size.is_finite(),
            "loan_size",
            self.loan_size,
        )?;
        // validates failure_tolerance and note_unit
        ReserveRule::binomial(0.0, self.failure_tolerance, self.note_unit)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelRow {
    pub bank_id: u32,
    pub period: u32,
    /// Lending rate minus `r_f`, plus observation noise.
    pub observed_spread: f64,
    /// `πλ`.
    pub default_loss: f64,
    /// `r*(L) / L`.
    pub redemption_proxy: f64,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelDataset {
    pub rows: Vec<PanelRow>,
    pub config: RegimeConfig,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentificationReport {
    pub kappa_hat: f64,
    pub kappa_se: f64,
    pub default_coef: f64,
    pub condition_number: f64,
    pub identified: bool,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the generator for one bank-period:
/// `splitmix(splitmix(splitmix(seed) ^ bank_id) ^ period)`.
pub fn row_seed(seed: u64, bank_id: u32, period: u32) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ bank_id as u64) ^ period as u64)
}

fn uniform(rng: &mut ChaCha8Rng, [lo, hi]: [f64; 2]) -> f64 {
    let u: f64 = rng.random();
    lo + (hi - lo) * u
}

fn generate_row(config: &RegimeConfig, bank_id: u32, period: u32) -> Result<PanelRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(row_seed(config.seed, bank_id, period));
    // Draw order is fixed so all regimes see the same fundamentals and noise.
    let pi = uniform(&mut rng, config.pi_range);
    let lambda = uniform(&mut rng, config.lambda_range);
    let q = uniform(&mut rng, config.q_range);
    let z: f64 = rng.sample(StandardNormal);

    let default_loss = DefaultRisk::new(pi, lambda)?.expected_loss();
    let loan = config.loan_size;
    let rule = ReserveRule::binomial(q, config.failure_tolerance, config.note_unit)?;
    let (redemption_proxy, phi) = match config.regime {
        Regime::FreeBanking => (
            required_reserve(&rule, loan)? / loan,
            encumbrance_premium(config.kappa_true, &rule, loan)?,
        ),
        Regime::FiatNoRedemption => (
            required_reserve(&rule, loan)? / loan,
            encumbrance_premium(0.0, &rule, loan)?,
        ),
        Regime::FiatBackstopCollinear => {
            let proxy = BACKSTOP_PROXY_SCALE * default_loss;
            (proxy, config.kappa_true * proxy)
        }
    };
    Ok(PanelRow {
        bank_id,
        period,
        observed_spread: default_loss + phi + config.noise_sd * z,
        default_loss,
        redemption_proxy,
        regime: config.regime,
    })
}

/// Builds the `n_banks × n_periods` panel, bank-major.
pub fn generate_panel(config: &RegimeConfig) -> Result<PanelDataset> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.n_banks as usize * config.n_periods as usize);
    for bank_id in 0..config.n_banks {
        for period in 0..config.n_periods {
            rows.push(generate_row(config, bank_id, period)?);
        }
    }
    Ok(PanelDataset {
        rows,
        config: config.clone(),
    })
}

/// Pooled least squares of the spread on `(1, default_loss, redemption_proxy)`.
pub fn fit_panel(rows: &[PanelRow]) -> Result<LeastSquaresFit> {
    if rows.is_empty() {
        return Err(Error::Shape("empty panel"));
    }
    let mut design = Vec::with_capacity(rows.len() * 3);
    let mut response = Vec::with_capacity(rows.len());
    for row in rows {
        design.extend_from_slice(&[1.0, row.default_loss, row.redemption_proxy]);
        response.push(row.observed_spread);
    }
    let x = Matrix::from_row_major(rows.len(), 3, design)?;
    ols_fit(&x, &response)
}

pub fn report_from_fit(fit: &LeastSquaresFit) -> IdentificationReport {
    let kappa_se = fit.standard_errors[2];
    IdentificationReport {
        kappa_hat: fit.coefficients[2],
        kappa_se,
        default_coef: fit.coefficients[1],
        condition_number: fit.condition_number,
        identified: fit.condition_number < IDENTIFICATION_CONDITION_LIMIT && kappa_se.is_finite(),
    }
}

pub fn estimate_rows(rows: &[PanelRow]) -> Result<IdentificationReport> {
    Ok(report_from_fit(&fit_panel(rows)?))
}

pub fn estimate(dataset: &PanelDataset) -> Result<IdentificationReport> {
    estimate_rows(&dataset.rows)
}

pub fn run_experiment(config: &RegimeConfig) -> Result<IdentificationReport> {
    estimate(&generate_panel(config)?)
}

/// Sample Pearson correlation; `None` if either series is constant.
pub fn correlation(a: &[f64], b: &[f64]) -> Option<f64> {
    let n = a.len().min(b.len());
    if n < 2 {
        return None;
    }
    let mean_a = a[..n].iter().sum::<f64>() / n as f64;
    let mean_b = b[..n].iter().sum::<f64>() / n as f64;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a[..n].iter().zip(&b[..n]) {
        let (dx, dy) = (x - mean_a, y - mean_b);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        None
    } else {
        Some(sab / libm::sqrt(saa * sbb))
    }
}
