//! Saving split between cash (zero return) and bonds (gross return `1 + r`).
//!
//! Constraints: `c1 + M + B = m1`, `c2 = m2 + M + (1 + r)B`, `M, B >= 0`.
//! With multipliers `μ` on `M >= 0` and `ν` on `B >= 0`:
//!
//! ```text
//! μ = u'(c1) - β u'(c2)        >= 0, zero if M > 0
//! ν = u'(c1) - β(1+r) u'(c2)   >= 0, zero if B > 0
//! ```
//!
//! Both equalities together force `r = 0`, so for `r > 0` cash is never held.
//! At `r = 0` the split is indeterminate and all saving goes to bonds.
//! There is no borrowing instrument: an agent who would like to borrow ends
//! at the corner `M = B = 0` with `ν > 0`.

use crate::consumer::{solve_consumption, Endowment, Preferences};
use crate::error::{check, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortfolioAllocation {
    pub c1: f64,
    pub c2: f64,
    pub cash: f64,
    pub bonds: f64,
    pub kkt_mu: f64,
    pub kkt_nu: f64,
}

/// True iff bonds strictly dominate cash.
pub fn cash_dominated(r: f64) -> bool {
    r > 0.0
}

pub fn solve_portfolio(
    prefs: &Preferences,
    endow: &Endowment,
    r: f64,
) -> Result<PortfolioAllocation> {
    check(r >= 0.0 && r.is_finite(), "r", r)?;
    if endow.m1() <= 0.0 {
        return Err(Error::Infeasible(
            "no period-1 income to save and no borrowing instrument",
        ));
    }
    let unconstrained = solve_consumption(prefs, endow, r)?;
    let u = prefs.utility();
    let beta = prefs.beta();

    if unconstrained.savings > 0.0 {
        let bonds = unconstrained.savings;
        let c1 = unconstrained.c1;
        let c2 = endow.m2() + (1.0 + r) * bonds;
        // The Euler equality holds on the bond margin, so ν = 0; μ = β r u'(c2).
        let kkt_mu = if cash_dominated(r) {
            (u.marginal(c1) - beta * u.marginal(c2)).max(0.0)
        } else {
            0.0
        };
        Ok(PortfolioAllocation {
            c1,
            c2,
            cash: 0.0,
            bonds,
            kkt_mu,
            kkt_nu: 0.0,
        })
    } else {
        let (c1, c2) = (endow.m1(), endow.m2());
        Ok(PortfolioAllocation {
            c1,
            c2,
            cash: 0.0,
            bonds: 0.0,
            kkt_mu: (u.marginal(c1) - beta * u.marginal(c2)).max(0.0),
            kkt_nu: (u.marginal(c1) - beta * (1.0 + r) * u.marginal(c2)).max(0.0),
        })
    }
}
