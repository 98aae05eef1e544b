//! Monotonicity certification through localizing matrices of coefficients,
//! Hamburger-model factorization, Choi–Kraus analysis of the derivative map
//! and sampled monotonicity tests.

mod choi;
mod hamburger;
mod localizing;
mod sampled;

pub use choi::{choi_at, ChoiCoordinate, ChoiReport};
pub use hamburger::{hamburger_factor, sample_pairs, HamburgerModel};
pub use localizing::{
    certify_monotone, localizing_matrix, CertificateWire, LetterCertificate, LetterWire, LocalizingCertificate, Verdict,
    WitnessWire,
};
pub use sampled::{check_monotone_pair, sample_monotone_test, MonotoneTestReport, PairCheck};

use crate::series::FreeSeries;

/// Radius of the self-adjoint ball used for sampling points of `f`: half the
/// geometric convergence radius `r/d` when a decay rate is known, else `1/(2d)`.
pub fn sampling_radius(f: &FreeSeries) -> f64 {
    let d = f.d() as f64;
    match f.decay_rate() {
        Some(r) => 0.5 * r / d,
        None => 0.5 / d,
    }
}
