//! Zeros of simple non-degenerate integer linear recurrences over ℤ, with
//! independently checkable certificates.

pub mod algebra;
pub mod certs;
pub mod error;
pub mod lrs;
pub mod numfield;
pub mod padic;
pub mod solver;

pub use error::{Error, Result};
