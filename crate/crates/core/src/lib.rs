//! Numerical calculus for free (noncommutative) functions.
//!
//! The crate evaluates and differentiates free power series on tuples of
//! complex matrices, certifies matrix monotonicity through localizing
//! matrices of coefficients, analyses derivative maps with Choi matrices,
//! evaluates Nevanlinna structured-resolvent representations and Herglotz
//! models, and works with Szegő kernels of the free coefficient Hardy space.

pub mod error;
pub mod hardy;
pub mod herglotz;
pub mod matcore;
pub mod monotone;
pub mod nevanlinna;
pub mod series;
pub mod wire;
pub mod words;

pub use error::{Error, Result};
pub use matcore::{CMat, CVec, MatrixTuple, PsdReport, C64};
pub use series::FreeSeries;
pub use words::{Word, WordOrder};
