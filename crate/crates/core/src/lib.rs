//! Hyperexponential solutions of fully integrable systems of linear
//! differential and difference equations over multivariate rational
//! function fields, and with them the one-dimensional submodules of
//! Laurent-Ore modules.

pub mod config;
pub mod delta;
pub mod display;
pub mod error;
pub mod io;
pub mod linalg;
pub mod ratfunc;
pub mod scalar;
pub mod solver;
pub mod system;

pub use config::SolverConfig;
pub use error::{Error, Result};
pub use ratfunc::{Poly, RatFunc, Vars, Q};
