//! Construction, evaluation and classification of the solution families of
//! the functional equation
//!
//! ```text
//! f(x^2 R) = k / (2 x R) * f(x)
//! ```
//!
//! on either side of the fixed point `1/R` of the squaring map.
//!
//! The crate is split into the exact evaluators ([`params`], [`periodic`],
//! [`coords`], [`solution`]) and [`analysis`], which turns the regime results
//! for monotonicity, continuity and smoothness at `1/R` into executable checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod coords;
pub mod error;
pub mod params;
pub mod periodic;
pub mod solution;

pub use coords::{offset_to_s, s_to_offset, s_to_x, x_to_s, Branch, S_MAX, S_MIN};
pub use error::{Error, Result};
pub use params::{derive_c, EquationParams};
pub use periodic::PeriodicMap;
pub use solution::{eval_phi, reconstruct_p, reconstruct_p_on, BranchSolution};
