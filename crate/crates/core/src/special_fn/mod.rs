//! Scalar special functions and one-dimensional solvers.
//!
//! Everything here is self-contained f64 arithmetic: the principal branch of
//! the Lambert W function, the exponential integral `Ei` for positive
//! arguments, golden-section maximization and a Brent-style root finder.

mod expint;
mod lambert;
mod solve;

pub use expint::{expint_ei, expint_ei_terms, EULER_GAMMA};
pub use lambert::{lambert_w0, INV_E};
pub use solve::{find_root_bracketed, maximize_bracketed, Bracket, SolverReport, DEFAULT_TOL};
