//! Numerical kernels shared by the models: bracketing root finder, central
//! differences, binomial quantiles and least squares with a condition-number
//! diagnostic.
//!
//! Everything here is a pure function of its inputs.

mod binomial;
mod diff;
mod ols;
mod root;

pub use binomial::binomial_quantile;
pub use diff::{default_step, finite_diff};
pub use ols::{ols_fit, LeastSquaresFit, Matrix, RANK_DEFICIENT_CONDITION};
pub use root::{find_root, Tolerance};
