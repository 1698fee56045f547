//! Models of interest-rate formation.
//!
//! The crate covers four layers that build on each other:
//!
//! * [`consumer`]: two-period consumption and saving, with a numerical
//!   Slutsky decomposition of the savings response to the interest rate.
//! * [`portfolio`]: the cash/bond split of period-1 saving and its KKT
//!   conditions.
//! * [`credit`]: pricing a one-period defaultable bond against a risk-free one.
//! * [`bank`]: a note-issuing bank whose lending rate carries a third
//!   component, the encumbrance premium on its redemption reserve.
//!
//! [`cliometrics`] generates synthetic bank panels under different monetary
//! regimes and checks whether that premium can be separated from the default
//! premium by least squares. [`numerics`] holds the shared kernels.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bank;
pub mod cliometrics;
pub mod consumer;
pub mod credit;
mod error;
pub mod numerics;
pub mod portfolio;

pub use error::{Error, Result};
