use super::spec::{Decomposition, RepresentationSpec};
use crate::error::{Error, Result};
use crate::matcore::{block_diag, c64, identity, inverse_checked, kron, CMat, MatrixTuple};

/// `δ_Y(Z) = Σ_i Y_i ⊗ Z_i`, of size `mn×mn`. Kind 4 uses the projections.
pub fn delta_y(spec: &RepresentationSpec, z: &MatrixTuple) -> Result<CMat> {
    let parts = spec.decomposition().parts();
    if z.d() != parts.len() {
        return Err(Error::AlphabetMismatch {
            expected: parts.len(),
            found: z.d(),
        });
    }
    let mn = spec.m() * z.n();
    let mut out = CMat::zeros(mn, mn);
    for (y, zi) in parts.iter().zip(z.iter()) {
        out += kron(y, zi);
    }
    Ok(out)
}

/// Evaluates `h(Z) = a·I + (v* ⊗ I) M(Z) (v ⊗ I)` with the structured
/// resolvent of the spec's kind. `Z` must lie in `Π^d`.
pub fn eval_representation(spec: &RepresentationSpec, z: &MatrixTuple) -> Result<CMat> {
    if !z.in_upper_half_plane()? {
        return Err(Error::OutsideDomain("every Im Z_i must be positive definite".into()));
    }
    let n = z.n();
    let m = spec.m();
    let id_n = identity(n);
    let delta = delta_y(spec, z)?;
    let middle = match (spec.kind(), spec.decomposition()) {
        (1 | 2, Decomposition::Positive(_)) => {
            inverse_checked(&(kron(spec.a_op(), &id_n) - &delta), None)?
        }
        (3, Decomposition::Positive(_)) => {
            let i_m = identity(m);
            let ai = kron(spec.a_op(), &id_n);
            let shift = &i_m - spec.a_op() * c64(0.0, 1.0);
            let left = kron(&shift, &id_n);
            let right = kron(&inverse_checked(&shift, None)?, &id_n);
            let res = inverse_checked(&(&ai - &delta), None)?;
            left * res * (identity(m * n) + &delta * &ai) * right
        }
        (4, Decomposition::Orthogonal(_)) => {
            let dn = spec.dim_n();
            let dk = m - dn;
            let i_k = identity(dk);
            let shift = &i_k - spec.a_op() * c64(0.0, 1.0);
            let e = block_diag(&[&(identity(dn) * c64(0.0, -1.0)), &shift]);
            let e_inv = block_diag(&[&(identity(dn) * c64(0.0, 1.0)), &inverse_checked(&shift, None)?]);
            let f = block_diag(&[&identity(dn), spec.a_op()]);
            let q = block_diag(&[&CMat::zeros(dn, dn), &i_k]);
            let fi = kron(&f, &id_n);
            let qi = kron(&q, &id_n);
            let res = inverse_checked(&(&fi - &delta * &qi), None)?;
            kron(&e, &id_n) * res * (&delta * &fi + qi) * kron(&e_inv, &id_n)
        }
        _ => unreachable!("spec constructors pair kinds with decompositions"),
    };
    let vi = kron(&CMat::from_column_slice(m, 1, spec.v().as_slice()), &id_n);
    let h = vi.adjoint() * middle * vi + id_n * c64(spec.a(), 0.0);
    Ok(h)
}
