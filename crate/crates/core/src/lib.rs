//! Fractional powers of the singular Bessel operator B_ν = D² + (ν/x)D on the
//! semiaxis: kernels, operators, Mellin symbols and identity checks.

// `!(x > 0.0)` is how domain checks reject NaN; reference values keep all their digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod corpus;
pub mod error;
pub mod function;
pub mod jet;
pub mod kernels;
pub mod mellin;
pub mod operators;
mod par;
pub mod quad;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use function::{Decay, Support, TestFunction};
pub use quad::{Estimate, QuadSpec};
