//! Two-period consumption and saving.
//!
//! An agent with income `(m1, m2)` borrows or lends at rate `r` and maximises
//! `u(c1) + β u(c2)` subject to `c1 + c2 / (1 + r) = m1 + m2 / (1 + r)`.
//! The optimum is found by bisection on the Euler residual; the closed form
//! for constant-IES utility is kept alongside as a cross-check.

use crate::error::{check, Error, Result};
use crate::numerics::{default_step, find_root, finite_diff, Tolerance};

/// Step for derivatives with respect to the interest rate.
pub const RATE_STEP: f64 = 1e-6;

/// Per-period utility `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum UtilityFamily {
    /// `u(c) = ln c`.
    Log,
    /// `u'(c) = c^(-1/σ)`, where `σ` is the intertemporal elasticity of
    /// substitution. `σ = 1` is the log case.
    ConstantIes { sigma: f64 },
}

impl UtilityFamily {
    pub fn constant_ies(sigma: f64) -> Result<Self> {
        check(sigma > 0.0 && sigma.is_finite(), "sigma", sigma)?;
        Ok(UtilityFamily::ConstantIes { sigma })
    }

    /// Intertemporal elasticity of substitution.
    pub fn ies(&self) -> f64 {
        match *self {
            UtilityFamily::Log => 1.0,
            UtilityFamily::ConstantIes { sigma } => sigma,
        }
    }

    pub fn utility(&self, c: f64) -> f64 {
        let sigma = self.ies();
        if sigma == 1.0 {
            libm::log(c)
        } else {
            let exponent = 1.0 - 1.0 / sigma;
            libm::pow(c, exponent) / exponent
        }
    }

    pub fn marginal(&self, c: f64) -> f64 {
        match *self {
            UtilityFamily::Log => 1.0 / c,
            UtilityFamily::ConstantIes { sigma } => libm::pow(c, -1.0 / sigma),
        }
    }

    fn ln_marginal(&self, c: f64) -> f64 {
        -libm::log(c) / self.ies()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preferences {
    rho: f64,
    beta: f64,
    utility: UtilityFamily,
}

impl Preferences {
    /// Preferences with time-preference rate `rho >= 0`; `β = 1 / (1 + ρ)`.
    pub fn new(rho: f64, utility: UtilityFamily) -> Result<Self> {
        check(rho >= 0.0 && rho.is_finite(), "rho", rho)?;
        if let UtilityFamily::ConstantIes { sigma } = utility {
            check(sigma > 0.0 && sigma.is_finite(), "sigma", sigma)?;
        }
        Ok(Preferences {
            rho,
            beta: 1.0 / (1.0 + rho),
            utility,
        })
    }

    pub fn log(rho: f64) -> Result<Self> {
        Self::new(rho, UtilityFamily::Log)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn utility(&self) -> UtilityFamily {
        self.utility
    }

    /// Lifetime utility `u(c1) + β u(c2)`.
    pub fn lifetime_utility(&self, c1: f64, c2: f64) -> f64 {
        self.utility.utility(c1) + self.beta * self.utility.utility(c2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endowment {
    m1: f64,
    m2: f64,
}

impl Endowment {
    pub fn new(m1: f64, m2: f64) -> Result<Self> {
        check(m1 >= 0.0 && m1.is_finite(), "m1", m1)?;
        check(m2 >= 0.0 && m2.is_finite(), "m2", m2)?;
        if m1 + m2 <= 0.0 {
            return Err(Error::Infeasible("endowment is zero in both periods"));
        }
        Ok(Endowment { m1, m2 })
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Allocation {
    pub c1: f64,
    pub c2: f64,
    /// `m1 - c1`; negative for a borrower.
    pub savings: f64,
}

/// Terms of `∂c1/∂r = substitution + income`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlutskyDecomposition {
    pub total: f64,
    /// Compensated (utility-constant) response of `c1`.
    pub substitution: f64,
    /// `(m1 - c1) ∂c1/∂m`, with `m` wealth in period-2 units.
    pub income: f64,
}

/// Present value of the endowment, `m1 + m2 / (1 + r)`.
pub fn wealth(endow: &Endowment, r: f64) -> f64 {
    endow.m1 + endow.m2 / (1.0 + r)
}

fn check_rate(r: f64) -> Result<()> {
    check(r > -1.0 && r.is_finite(), "r", r)
}

/// Constant-IES closed form: `c2 = [β(1+r)]^σ c1`, so
/// `c1 = W / (1 + [β(1+r)]^σ / (1+r))`.
pub fn closed_form_c1(prefs: &Preferences, wealth: f64, r: f64) -> f64 {
    let growth = libm::pow(prefs.beta * (1.0 + r), prefs.utility.ies());
    wealth / (1.0 + growth / (1.0 + r))
}

/// Optimal `c1` for lifetime wealth `wealth` (present value) at rate `r`.
pub fn optimal_c1(prefs: &Preferences, wealth: f64, r: f64) -> Result<f64> {
    check_rate(r)?;
    if !(wealth > 0.0 && wealth.is_finite()) {
        return Err(Error::Infeasible("lifetime wealth must be positive"));
    }
    let gross = 1.0 + r;
    let ln_discount = libm::log(prefs.beta * gross);
    let u = prefs.utility;
    // ln u'(c1) - ln[β(1+r)u'(c2)]: decreasing in c1, same root as the Euler residual.
    let residual = |c1: f64| {
        let c2 = gross * (wealth - c1);
        u.ln_marginal(c1) - ln_discount - u.ln_marginal(c2)
    };
    let lo = 1e-12 * wealth;
    let hi = wealth - 1e-12 * wealth;
    find_root(residual, lo, hi, &Tolerance::machine())
}

/// Utility attained by an optimising agent with the given wealth and rate.
pub fn indirect_utility(prefs: &Preferences, wealth: f64, r: f64) -> Result<f64> {
    let c1 = optimal_c1(prefs, wealth, r)?;
    Ok(prefs.lifetime_utility(c1, (1.0 + r) * (wealth - c1)))
}

/// Solves the consumption-saving problem at rate `r`.
pub fn solve_consumption(prefs: &Preferences, endow: &Endowment, r: f64) -> Result<Allocation> {
    check_rate(r)?;
    let w = wealth(endow, r);
    let c1 = optimal_c1(prefs, w, r)?;
    Ok(Allocation {
        c1,
        c2: (1.0 + r) * (w - c1),
        savings: endow.m1 - c1,
    })
}

/// Runs `f` inside a central difference, carrying its first error out.
fn diff_fallible<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut first_err = None;
    let d = finite_diff(
        |t| match f(t) {
            Ok(v) => v,
            Err(e) => {
                first_err.get_or_insert(e);
                f64::NAN
            }
        },
        x,
        h,
    );
    match first_err {
        Some(e) => Err(e),
        None => d,
    }
}

/// Wealth that restores utility `target` at rate `r`.
fn compensating_wealth(prefs: &Preferences, target: f64, r: f64, guess: f64) -> Result<f64> {
    let gap = |w: f64| indirect_utility(prefs, w, r).map_or(f64::NAN, |v| v - target);
    let (mut lo, mut hi) = (0.5 * guess, 2.0 * guess);
    let mut tries = 0;
    while gap(lo) > 0.0 || gap(hi) < 0.0 {
        lo *= 0.5;
        hi *= 2.0;
        tries += 1;
        if tries > 60 {
            return Err(Error::NoConvergence { iterations: tries });
        }
    }
    find_root(gap, lo, hi, &Tolerance::machine())
}

/// Decomposes `∂c1/∂r` into substitution and income effects.
///
/// The compensated demand at a perturbed rate is obtained by re-solving with
/// the lump-sum wealth that restores the original optimal utility. The income
/// term uses wealth in period-2 units, `∂c1/∂m = (∂c1/∂W) / (1 + r)`, which is
/// the form for which `total = substitution + income` holds.
pub fn slutsky_decompose(
    prefs: &Preferences,
    endow: &Endowment,
    r: f64,
) -> Result<SlutskyDecomposition> {
    check_rate(r)?;
    check_rate(r - RATE_STEP)?;
    let base = solve_consumption(prefs, endow, r)?;
    let w0 = wealth(endow, r);
    let u0 = prefs.lifetime_utility(base.c1, base.c2);

    let total = diff_fallible(
        |rate| optimal_c1(prefs, wealth(endow, rate), rate),
        r,
        RATE_STEP,
    )?;
    let substitution = diff_fallible(
        |rate| {
            let w = compensating_wealth(prefs, u0, rate, w0)?;
            optimal_c1(prefs, w, rate)
        },
        r,
        RATE_STEP,
    )?;
    let dc1_dw = diff_fallible(|w| optimal_c1(prefs, w, r), w0, default_step(w0))?;
    let income = base.savings * dc1_dw / (1.0 + r);

    Ok(SlutskyDecomposition {
        total,
        substitution,
        income,
    })
}

/// `∂s/∂r`, the slope of period-1 saving in the interest rate.
pub fn savings_response(prefs: &Preferences, endow: &Endowment, r: f64) -> Result<f64> {
    check_rate(r)?;
    let total = diff_fallible(
        |rate| optimal_c1(prefs, wealth(endow, rate), rate),
        r,
        RATE_STEP,
    )?;
    Ok(-total)
}
