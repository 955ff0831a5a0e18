//! Exact extended formulations for binary switching constraints on
//! equidistant grids, with brute-force referees and hardness reductions.

pub mod caps;
pub mod cli;
pub mod error;
pub mod formulations;
pub mod instance;
pub mod oracle;
pub mod rational;
pub mod ratlp;
pub mod reductions;
pub mod report;
pub mod stepfn;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
