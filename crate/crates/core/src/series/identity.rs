use serde::Serialize;

use super::derivative::{derivative, DerivativeMethod};
use super::eval::eval_value;
use super::FreeSeries;
use crate::error::{Error, Result};
use crate::matcore::{c64, commutator, direct_sum, kron, spectral_norm, CMat, MatrixTuple};

/// A derivative identity that every free function satisfies.
#[derive(Debug, Clone)]
pub enum IdentityCase {
    /// `Df(X)[[iA, X]] = [iA, f(X)]` for Hermitian `A`.
    Commutator { a: CMat },
    /// `Df(X ⊕ Y)[[[0, X−Y], [X−Y, 0]]] = [[0, f(X)−f(Y)], [f(X)−f(Y), 0]]`.
    DirectSumDerivative { y: MatrixTuple },
    /// `Df(X ⊗ I)[A ⊗ B] = Df(X)[A] ⊗ B`.
    TensorDerivative { a: MatrixTuple, b: CMat },
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityCheck {
    pub pass: bool,
    /// Operator norm of LHS − RHS.
    pub residual: f64,
    pub rhs_norm: f64,
}

fn antidiag(block: &CMat) -> CMat {
    let n = block.nrows();
    let mut out = CMat::zeros(2 * n, 2 * n);
    out.view_mut((0, n), (n, n)).copy_from(block);
    out.view_mut((n, 0), (n, n)).copy_from(block);
    out
}

pub fn check_identity(f: &FreeSeries, case: &IdentityCase, x: &MatrixTuple, tol: f64) -> Result<IdentityCheck> {
    let method = DerivativeMethod::Block;
    let (lhs, rhs) = match case {
        IdentityCase::Commutator { a } => {
            if a.nrows() != x.n() || a.ncols() != x.n() {
                return Err(Error::DimensionMismatch(format!(
                    "commutator generator is {}x{}, level is {}",
                    a.nrows(),
                    a.ncols(),
                    x.n()
                )));
            }
            let ia = a * c64(0.0, 1.0);
            let dir = x.map(|xi| commutator(&ia, xi));
            let lhs = derivative(f, x, &dir, method)?;
            (lhs, commutator(&ia, &eval_value(f, x)?))
        }
        IdentityCase::DirectSumDerivative { y } => {
            x.check_same_shape(y)?;
            let sum = direct_sum(x, y)?;
            let dir = MatrixTuple::new(x.iter().zip(y.iter()).map(|(a, b)| antidiag(&(a - b))).collect())?;
            let lhs = derivative(f, &sum, &dir, method)?;
            (lhs, antidiag(&(eval_value(f, x)? - eval_value(f, y)?)))
        }
        IdentityCase::TensorDerivative { a, b } => {
            x.check_same_shape(a)?;
            if b.nrows() != b.ncols() {
                return Err(Error::NotSquare {
                    rows: b.nrows(),
                    cols: b.ncols(),
                });
            }
            let big_x = x.tensor_identity(b.nrows());
            let big_a = a.map(|ai| kron(ai, b));
            let lhs = derivative(f, &big_x, &big_a, method)?;
            (lhs, kron(&derivative(f, x, a, method)?, b))
        }
    };
    let residual = spectral_norm(&(&lhs - &rhs));
    let rhs_norm = spectral_norm(&rhs);
    Ok(IdentityCheck {
        pass: residual <= tol * (1.0 + rhs_norm),
        residual,
        rhs_norm,
    })
}
