//! Exact and floating-point probability on finite and countable spaces.
//!
//! * [`combinatorics`]: exact counts, Stirling's and Wallis' formulas.
//! * [`finite_space`]: events, conditioning, Bayes, independence.
//! * [`distributions`]: the usual discrete and continuous laws.
//! * [`moments`]: expectations, variances, the classical inequalities.
//! * [`couples`]: joint laws of pairs and convolution.
//! * [`limits`]: numeric checks of the binomial limit theorems.
//! * [`fixtures`]: worked examples used across the crate.
//! * [`cli`]: the `probkit` command line.

// `!(x > 0.0)` is the NaN-rejecting form used throughout parameter checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod combinatorics;
pub mod couples;
pub mod distributions;
pub mod error;
pub mod exact;
pub mod finite_space;
pub mod fixtures;
pub mod limits;
pub mod moments;

pub use couples::JointLaw;
pub use distributions::{Law, Rng};
pub use error::{Error, Result};
pub use exact::Prob;
pub use finite_space::{Event, FiniteProbabilitySpace};
pub use moments::FiniteRv;
