use serde::Serialize;

use crate::error::Result;
use crate::matcore::{block_diag, direct_sum, spectral_norm, CMat, MatrixTuple, Sampler};

/// Where axiom trials draw their points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Self-adjoint tuples with coordinate norms at most `radius`.
    Hermitian { radius: f64 },
    /// Strict contractions (norm ≤ 0.9).
    Contraction,
    /// The free poly-upper-half-plane, `Im Z_i ⪰ 0.05`.
    UpperHalfPlane,
}

impl Domain {
    pub fn sample(&self, s: &mut Sampler, n: usize, d: usize) -> MatrixTuple {
        match *self {
            Domain::Hermitian { radius } => s.hermitian_ball(n, d, radius),
            Domain::Contraction => s.contraction_tuple(n, d),
            Domain::UpperHalfPlane => s.pi_point(n, d),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub trials: usize,
    pub graded_failures: usize,
    pub max_direct_sum_residual: f64,
    pub max_similarity_residual: f64,
    pub failures: Vec<TrialFailure>,
    pub tol: f64,
    pub pass: bool,
}

/// Fuzzes a black-box evaluator against the free-function axioms:
/// gradedness, direct sums and unitary similarity. Residuals are relative,
/// `‖LHS − RHS‖ / (1 + ‖RHS‖)`. Evaluator errors are recorded per trial.
pub fn axiom_verify<F>(f: F, d: usize, domain: Domain, trials: usize, seed: u64, tol: f64) -> AxiomReport
where
    F: Fn(&MatrixTuple) -> Result<CMat>,
{
    let mut s = Sampler::new(seed);
    let mut report = AxiomReport {
        trials,
        graded_failures: 0,
        max_direct_sum_residual: 0.0,
        max_similarity_residual: 0.0,
        failures: Vec::new(),
        tol,
        pass: true,
    };
    for trial in 0..trials {
        let n1 = 1 + s.index(3);
        let n2 = 1 + s.index(3);
        let x = domain.sample(&mut s, n1, d);
        let y = domain.sample(&mut s, n2, d);
        let u = s.haar_unitary(n1);
        match run_trial(&f, &x, &y, &u) {
            Ok((graded, ds, sim)) => {
                if !graded {
                    report.graded_failures += 1;
                    continue;
                }
                report.max_direct_sum_residual = report.max_direct_sum_residual.max(ds);
                report.max_similarity_residual = report.max_similarity_residual.max(sim);
            }
            Err(e) => report.failures.push(TrialFailure {
                trial,
                message: e.to_string(),
            }),
        }
    }
    report.pass = report.graded_failures == 0
        && report.failures.is_empty()
        && report.max_direct_sum_residual <= tol
        && report.max_similarity_residual <= tol;
    report
}

fn relative(lhs: &CMat, rhs: &CMat) -> f64 {
    spectral_norm(&(lhs - rhs)) / (1.0 + spectral_norm(rhs))
}

fn run_trial<F>(f: &F, x: &MatrixTuple, y: &MatrixTuple, u: &CMat) -> Result<(bool, f64, f64)>
where
    F: Fn(&MatrixTuple) -> Result<CMat>,
{
    let fx = f(x)?;
    let fy = f(y)?;
    let sum = direct_sum(x, y)?;
    let fs = f(&sum)?;
    let conj = f(&x.unitary_conjugate(u)?)?;
    let graded = [(&fx, x.n()), (&fy, y.n()), (&fs, sum.n()), (&conj, x.n())]
        .iter()
        .all(|(m, n)| m.nrows() == *n && m.ncols() == *n);
    if !graded {
        return Ok((false, 0.0, 0.0));
    }
    let ds = relative(&fs, &block_diag(&[&fx, &fy]));
    let sim = relative(&conj, &(u.adjoint() * &fx * u));
    Ok((graded, ds, sim))
}
