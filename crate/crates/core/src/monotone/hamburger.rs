use super::localizing::{certify_monotone, Verdict};
use crate::error::{Error, Result};
use crate::matcore::{psd_sqrt, rel_diff, CMat, MatrixTuple, Sampler, HERMITIAN_TOL};
use crate::series::{derivative, DerivativeMethod, FreeSeries};
use crate::words::{monomials, WordOrder};

/// Degree-`L` Hamburger model: one PSD square root `F_k = M_k^{1/2}` per
/// letter, reproducing
/// `Df(X)[H] = Σ_k m_X* (F_k ⊗ I)(I ⊗ H_k)(F_k ⊗ I) m_X` on self-adjoint `X`.
#[derive(Debug, Clone)]
pub struct HamburgerModel {
    pub d: usize,
    pub degree: usize,
    pub order: WordOrder,
    pub factors: Vec<CMat>,
}

/// Factors every localizing matrix after certifying it. A refuted letter is
/// reported as `NotPsd` with its eigenvalue.
pub fn hamburger_factor(f: &FreeSeries, max_len: usize, tol: f64) -> Result<HamburgerModel> {
    let cert = certify_monotone(f, max_len, tol)?;
    if let Verdict::Refuted { k, min_eig, .. } = cert.verdict {
        return Err(Error::NotPsd { k, min_eig });
    }
    let factors = cert
        .letters
        .iter()
        .map(|l| {
            psd_sqrt(&l.matrix, tol).map_err(|e| match e {
                Error::NotPsd { min_eig, .. } => Error::NotPsd { k: l.k, min_eig },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HamburgerModel {
        d: f.d(),
        degree: max_len,
        order: WordOrder::new(f.d(), max_len)?,
        factors,
    })
}

impl HamburgerModel {
    /// The model derivative at a self-adjoint point.
    pub fn derivative(&self, x: &MatrixTuple, h: &MatrixTuple) -> Result<CMat> {
        if x.d() != self.d || h.d() != self.d {
            return Err(Error::AlphabetMismatch {
                expected: self.d,
                found: if x.d() != self.d { x.d() } else { h.d() },
            });
        }
        x.check_same_shape(h)?;
        if !x.is_self_adjoint(HERMITIAN_TOL * (1.0 + x.max_norm())) {
            return Err(Error::OutsideDomain("the Hamburger model needs a self-adjoint point".into()));
        }
        let n = x.n();
        let mono = monomials(x, &self.order)?;
        let mut out = CMat::zeros(n, n);
        for (k, f) in self.factors.iter().enumerate() {
            let hk = h.get(k);
            for row in 0..self.order.len() {
                // G_row = Σ_J F[row, J] X^J
                let mut g = CMat::zeros(n, n);
                for (col, m) in mono.iter().enumerate() {
                    let c = f[(row, col)];
                    if c.norm() > 0.0 {
                        g += m * c;
                    }
                }
                out += g.adjoint() * hk * &g;
            }
        }
        Ok(out)
    }

    /// Largest relative gap between the model derivative and the block
    /// derivative of `f` over the given `(X, H)` pairs.
    pub fn reconstruction_residual(&self, f: &FreeSeries, pairs: &[(MatrixTuple, MatrixTuple)]) -> Result<f64> {
        let mut worst = 0.0f64;
        for (x, h) in pairs {
            let model = self.derivative(x, h)?;
            let exact = derivative(f, x, h, DerivativeMethod::Block)?;
            worst = worst.max(rel_diff(&model, &exact));
        }
        Ok(worst)
    }
}

/// Self-adjoint points of norm at most `radius` paired with Hermitian
/// directions, for checking reconstructions.
pub fn sample_pairs(d: usize, n: usize, radius: f64, count: usize, seed: u64) -> Vec<(MatrixTuple, MatrixTuple)> {
    let mut s = Sampler::new(seed);
    (0..count)
        .map(|_| {
            let x = s.hermitian_ball(n, d, radius);
            let h = s.hermitian_tuple(n, d);
            (x, h)
        })
        .collect()
}
