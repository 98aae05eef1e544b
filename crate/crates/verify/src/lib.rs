//! Reference fixtures with known closed forms, shared by the acceptance
//! suite.

use freepick::matcore::{c64, identity, real_diag};
use freepick::nevanlinna::RepresentationSpec;
use freepick::{CMat, CVec, FreeSeries};

/// `1/(2 − x) = Σ 2^{-(n+1)} x^n`, truncated at `degree`.
pub fn resolvent(degree: usize) -> FreeSeries {
    let coeffs: Vec<f64> = (0..=degree).map(|n| 0.5f64.powi(n as i32 + 1)).collect();
    FreeSeries::univariate(&coeffs, Some(2.0)).expect("valid coefficients")
}

/// `(2 − 0.6 x₁ − 0.4 x₂)^{-1}`, with `c_I = 2^{-(|I|+1)} Π y_{letters}`.
pub fn two_letter_resolvent(degree: usize) -> FreeSeries {
    FreeSeries::from_fn(2, degree, true, Some(2.0), |w| {
        let mut c = 0.5f64.powi(w.len() as i32 + 1);
        for &l in w.letters() {
            c *= if l == 1 { 0.6 } else { 0.4 };
        }
        c64(c, 0.0)
    })
    .expect("valid coefficients")
}

pub fn cube() -> FreeSeries {
    FreeSeries::univariate(&[0.0, 0.0, 0.0, 1.0], None).expect("valid coefficients")
}

fn real_vec(xs: &[f64]) -> CVec {
    CVec::from_iterator(xs.len(), xs.iter().map(|&x| c64(x, 0.0)))
}

/// `A = diag(1, 2, 3)`, `Y = (diag(.2, .5, .7), I − Y₁)`, `v = (1, 1, 1)/√3`,
/// with constant term `a` (kind 1 when `a = 0`, else kind 2).
pub fn diagonal_spec(a: f64) -> RepresentationSpec {
    let y1 = real_diag(&[0.2, 0.5, 0.7]);
    let y2 = identity(3) - &y1;
    let r = 1.0 / 3f64.sqrt();
    let kind = if a == 0.0 { 1 } else { 2 };
    RepresentationSpec::new(kind, a, real_diag(&[1.0, 2.0, 3.0]), vec![y1, y2], real_vec(&[r, r, r]))
        .expect("valid decomposition")
}

/// Kind 4 on `C ⊕ C²` with rotated projections and `v₁ = 0.8`.
pub fn type4_spec() -> RepresentationSpec {
    let h = 0.5;
    let p1 = CMat::from_row_slice(3, 3, &[h, h, 0.0, h, h, 0.0, 0.0, 0.0, 0.0].map(|x| c64(x, 0.0)));
    let p2 = identity(3) - &p1;
    RepresentationSpec::type4(0.5, 1, real_diag(&[1.0, -1.0]), vec![p1, p2], real_vec(&[0.8, 0.3, -0.2]))
        .expect("valid projections")
}

/// `1/(2 − z)` as a kind-1 scalar representation.
pub fn scalar_spec() -> RepresentationSpec {
    RepresentationSpec::new(1, 0.0, real_diag(&[2.0]), vec![identity(1)], real_vec(&[1.0])).expect("valid")
}
