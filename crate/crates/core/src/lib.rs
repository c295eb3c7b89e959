//! Sharp growth constants for the Weierstrass primary factors
//!
//! ```text
//! E_0(z) = 1 - z,    E_n(z) = (1 - z) exp(z + z^2/2 + ... + z^n/n)
//! ```
//!
//! The central quantity is `C(n, alpha)`, the smallest constant with
//! `|E_n(z)| <= exp(C(n, alpha) |z|^(n + alpha))` for every complex `z`.
//! From it follow the determinant constants `Gamma_p`, the limit `1/x0`,
//! and a family of explicit upper bounds, all of which are exposed here
//! together with brute-force validators.

// `!(x > 0.0)` is used on purpose so that NaN lands in the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod bounds;
pub mod cli;
pub mod constants;
mod error;
pub mod oracle;
pub mod primary_factor;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
