//! Exact computer algebra for hypergeometric BKP tau-functions.

pub mod cli;
pub mod error;
pub mod gseries;
pub mod hirota;
pub mod partition;
pub mod qschur;
pub mod wops;
pub mod rational;
pub mod spectral;
pub mod tau;

pub use error::{Error, Result};
pub use gseries::{Alphabet, GradedSeries, Mono, MiwaShifted};
pub use partition::StrictPartition;
pub use rational::Rational;
