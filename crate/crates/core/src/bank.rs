//! A bank that lends by issuing its own notes, redeemable on demand.
//!
//! Against a loan `L` it issues notes `N = L` and must hold a redemption
//! reserve `r*(L)`. Holding that reserve costs `κ` per unit per loan period,
//! so competitive pricing adds the encumbrance premium
//! `φ = κ r*(L) / L` to the two usual components:
//!
//! ```text
//! r̃_bank = r_f + πλ + φ
//! ```
//!
//! Nothing here takes preferences as input: `φ` depends only on `κ`, the
//! reserve rule and the loan size.

use crate::credit::{risk_premium_first_order, DefaultRisk};
use crate::error::{check, Result};
use crate::numerics::binomial_quantile;

/// Failure tolerance used when a configuration does not give one.
pub const DEFAULT_FAILURE_TOLERANCE: f64 = 0.01;

/// `φ` at or below this is treated as absent.
pub const TWO_TERM_THRESHOLD: f64 = 1e-12;

/// Required redemption reserve as a function of notes outstanding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReserveRule {
    /// `r*(L) = ratio · L`.
    Linear { ratio: f64 },
    /// Every note unit is presented independently with probability
    /// `presentation_prob`; the reserve covers total presentations with
    /// probability at least `1 - failure_tolerance`.
    BinomialQuantile {
        presentation_prob: f64,
        failure_tolerance: f64,
        note_unit: f64,
    },
}

impl ReserveRule {
    pub fn linear(ratio: f64) -> Result<Self> {
        check(ratio >= 0.0 && ratio.is_finite(), "ratio", ratio)?;
        Ok(ReserveRule::Linear { ratio })
    }

    pub fn binomial(
        presentation_prob: f64,
        failure_tolerance: f64,
        note_unit: f64,
    ) -> Result<Self> {
        check(
            (0.0..=1.0).contains(&presentation_prob),
            "presentation_prob",
            presentation_prob,
        )?;
        check(
            failure_tolerance > 0.0 && failure_tolerance < 1.0,
            "failure_tolerance",
            failure_tolerance,
        )?;
        check(
            note_unit > 0.0 && note_unit.is_finite(),
            "note_unit",
            note_unit,
        )?;
        Ok(ReserveRule::BinomialQuantile {
            presentation_prob,
            failure_tolerance,
            note_unit,
        })
    }
}

/// `r*(L)`.
pub fn required_reserve(rule: &ReserveRule, loan: f64) -> Result<f64> {
    check(loan >= 0.0 && loan.is_finite(), "loan", loan)?;
    match *rule {
        ReserveRule::Linear { ratio } => Ok(ratio * loan),
        ReserveRule::BinomialQuantile {
            presentation_prob,
            failure_tolerance,
            note_unit,
        } => {
            let notes = libm::floor(loan / note_unit) as u64;
            let k = binomial_quantile(notes, presentation_prob, 1.0 - failure_tolerance)?;
            Ok(note_unit * k as f64)
        }
    }
}

/// `φ = κ r*(L) / L`.
pub fn encumbrance_premium(kappa: f64, rule: &ReserveRule, loan: f64) -> Result<f64> {
    check(kappa >= 0.0 && kappa.is_finite(), "kappa", kappa)?;
    check(loan > 0.0 && loan.is_finite(), "loan", loan)?;
    Ok(kappa * required_reserve(rule, loan)? / loan)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BankParams {
    kappa: f64,
    loan_size: f64,
    risk: DefaultRisk,
    rule: ReserveRule,
}

impl BankParams {
    pub fn new(kappa: f64, loan_size: f64, risk: DefaultRisk, rule: ReserveRule) -> Result<Self> {
        check(kappa >= 0.0 && kappa.is_finite(), "kappa", kappa)?;
        check(
            loan_size > 0.0 && loan_size.is_finite(),
            "loan_size",
            loan_size,
        )?;
        Ok(BankParams {
            kappa,
            loan_size,
            risk,
            rule,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn loan_size(&self) -> f64 {
        self.loan_size
    }

    pub fn risk(&self) -> &DefaultRisk {
        &self.risk
    }

    pub fn rule(&self) -> &ReserveRule {
        &self.rule
    }

    pub fn phi(&self) -> Result<f64> {
        encumbrance_premium(self.kappa, &self.rule, self.loan_size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeTermDecomposition {
    pub time_preference: f64,
    pub risk_premium: f64,
    pub phi: f64,
    pub total: f64,
}

impl ThreeTermDecomposition {
    pub fn new(time_preference: f64, risk_premium: f64, phi: f64) -> Self {
        ThreeTermDecomposition {
            time_preference,
            risk_premium,
            phi,
            total: time_preference + risk_premium + phi,
        }
    }
}

/// Competitive lending rate of a note-issuing bank, additive in its parts.
/// The risk premium is the first-order `πλ`.
pub fn lending_rate(r_f: f64, params: &BankParams) -> Result<ThreeTermDecomposition> {
    check(r_f > -1.0 && r_f.is_finite(), "r_f", r_f)?;
    Ok(ThreeTermDecomposition::new(
        r_f,
        risk_premium_first_order(&params.risk),
        params.phi()?,
    ))
}

/// True when `φ` vanishes and the lending rate reduces to `r_f + πλ`.
pub fn two_term_limit_check(_r_f: f64, params: &BankParams) -> bool {
    params.phi().is_ok_and(|phi| phi <= TWO_TERM_THRESHOLD)
}
