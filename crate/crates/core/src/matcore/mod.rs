//! Dense complex matrix substrate: tuple algebra, Hermitian/PSD utilities,
//! Cayley transforms and seeded random generators.

mod linalg;
mod sample;
mod tuple;

pub use linalg::*;
pub use sample::{sample, Sample, SampleKind, Sampler};
pub use tuple::{cayley, direct_sum, CayleyDirection, MatrixTuple};

/// Complex scalar.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVec = nalgebra::DVector<C64>;

/// Default relative PSD tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Inversions with a larger condition number are refused.
pub const MAX_CONDITION: f64 = 1e12;
/// Relative asymmetry accepted by Hermitian eigensolves.
pub const HERMITIAN_TOL: f64 = 1e-10;
