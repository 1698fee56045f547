use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The root-finding bracket has no sign change.
    NoSignChange { lo: f64, hi: f64 },
    /// An iterative method ran out of iterations.
    NoConvergence { iterations: usize },
    /// A function evaluated to NaN or infinity.
    NonFinite { at: f64 },
    /// A parameter is outside its domain.
    InvalidParameter { name: &'static str, value: f64 },
    /// Lifetime wealth is not positive, or saving requires a missing instrument.
    Infeasible(&'static str),
    /// Expected loss is total (`pi * lambda >= 1`), so no finite rate exists.
    Unpriceable { expected_loss: f64 },
    /// An input shape or dimension is inconsistent.
    Shape(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoSignChange { lo, hi } => {
                write!(f, "no sign change on the bracket [{lo}, {hi}]")
            }
            Error::NoConvergence { iterations } => {
                write!(f, "no convergence after {iterations} iterations")
            }
            Error::NonFinite { at } => write!(f, "function is not finite at {at}"),
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid value {value} for parameter `{name}`")
            }
            Error::Infeasible(why) => write!(f, "infeasible problem: {why}"),
            Error::Unpriceable { expected_loss } => write!(
                f,
                "unpriceable: expected loss pi*lambda = {expected_loss} leaves nothing to repay"
            ),
            Error::Shape(why) => write!(f, "inconsistent dimensions: {why}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check(cond: bool, name: &'static str, value: f64) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}
