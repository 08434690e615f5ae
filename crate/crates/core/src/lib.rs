//! Running-maximum integral representations: exact calculus for continuous
//! bounded-variation functions and numerical experiments showing where
//! fractional Brownian motion departs from it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bv;
pub mod error;
pub mod experiments;
pub mod fbm;
pub mod fraccalc;
pub mod io;
pub mod path;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use path::SampledPath;
