//! Exact solvers for leader commitment with outcome-conditional payments.
//!
//! A leader (player 1) commits to a strategy and to nonnegative payments to
//! the other players, who then best-respond. The library computes optimal
//! commitments across several interaction models (pure/mixed two-player,
//! three-player sequential, signaling with action recommendations, Bayesian
//! type spaces), all in exact rational arithmetic, alongside ground-truth
//! oracles (Nash enumeration, grid search) and generators for the
//! combinatorial reductions used to stress the solvers.

pub mod cli;
pub mod error;
pub mod game;
pub mod gen;
pub mod io;
mod linalg;
pub mod lp;
pub mod oracle;
pub mod rational;
pub mod reductions;
pub mod report;
pub mod solvers;

pub use error::{Error, Result};
pub use rational::Rational;
