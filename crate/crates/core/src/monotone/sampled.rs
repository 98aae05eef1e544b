use serde::Serialize;

use super::sampling_radius;
use crate::error::{Error, Result};
use crate::matcore::{c64, psd_min_eig, CMat, MatrixTuple, PsdReport, Sampler, HERMITIAN_TOL};
use crate::series::{derivative, eval_series, DerivativeMethod, FreeSeries};

/// Outcome of comparing `f(X)` and `f(Y)` for one pair.
#[derive(Debug, Clone)]
pub struct PairCheck {
    /// Whether `Y − X` is PSD coordinatewise.
    pub ordered: bool,
    pub difference: CMat,
    pub report: PsdReport,
    /// `Y ⪰ X` but `f(Y) − f(X)` is not PSD.
    pub violation: bool,
}

/// Checks `f(Y) − f(X) ⪰ 0` for a pair of self-adjoint points.
pub fn check_monotone_pair(f: &FreeSeries, x: &MatrixTuple, y: &MatrixTuple, tol: f64) -> Result<PairCheck> {
    x.check_same_shape(y)?;
    for p in [x, y] {
        if !p.is_self_adjoint(HERMITIAN_TOL * (1.0 + p.max_norm())) {
            return Err(Error::OutsideDomain("monotonicity is tested at self-adjoint points".into()));
        }
    }
    let mut ordered = true;
    for (a, b) in x.iter().zip(y.iter()) {
        ordered &= psd_min_eig(&(b - a), tol)?.is_psd;
    }
    let difference = eval_series(f, y)?.value - eval_series(f, x)?.value;
    let report = psd_min_eig(&difference, tol)?;
    Ok(PairCheck {
        ordered,
        violation: ordered && !report.is_psd,
        difference,
        report,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneTestReport {
    pub trials: usize,
    pub n: usize,
    pub radius: f64,
    /// Trials where `f(X + εP) − f(X)` or `Df(X)[P]` failed positivity.
    pub violations: usize,
    pub difference_violations: usize,
    pub derivative_violations: usize,
    /// Smallest eigenvalue seen across both tests.
    pub worst_min_eig: f64,
}

impl MonotoneTestReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

/// Randomized monotonicity test: self-adjoint `X` in half the sampling
/// radius, PSD direction `P`, and the checks `f(X + εP) ⪰ f(X)` and
/// `Df(X)[P] ⪰ 0`.
pub fn sample_monotone_test(f: &FreeSeries, n: usize, trials: usize, seed: u64, tol: f64) -> Result<MonotoneTestReport> {
    let radius = sampling_radius(f);
    let d = f.d();
    let mut s = Sampler::new(seed);
    let mut report = MonotoneTestReport {
        trials,
        n,
        radius,
        violations: 0,
        difference_violations: 0,
        derivative_violations: 0,
        worst_min_eig: f64::INFINITY,
    };
    for _ in 0..trials {
        let x = s.hermitian_ball(n, d, 0.5 * radius);
        let p = s.psd_direction(n, d);
        let eps = s.uniform(0.05, 1.0) * 0.5 * radius / p.max_norm().max(1e-300);
        let y = x.axpy(c64(eps, 0.0), &p)?;
        let pair = check_monotone_pair(f, &x, &y, tol)?;
        let deriv = derivative(f, &x, &p, DerivativeMethod::Block)?;
        let dr = psd_min_eig(&deriv, tol)?;
        report.worst_min_eig = report.worst_min_eig.min(pair.report.min_eig).min(dr.min_eig);
        let diff_bad = !pair.report.is_psd;
        let der_bad = !dr.is_psd;
        report.difference_violations += diff_bad as usize;
        report.derivative_violations += der_bad as usize;
        report.violations += (diff_bad || der_bad) as usize;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::from_real_rows;

    #[test]
    fn resolvent_passes() {
        let coeffs: Vec<f64> = (0..=40).map(|n| 0.5f64.powi(n + 1)).collect();
        let f = FreeSeries::univariate(&coeffs, Some(2.0)).unwrap();
        let rep = sample_monotone_test(&f, 3, 50, 1, 1e-9).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn square_fails_somewhere() {
        let f = FreeSeries::univariate(&[0.0, 0.0, 1.0], None).unwrap();
        let rep = sample_monotone_test(&f, 2, 200, 2, 1e-9).unwrap();
        assert!(rep.violations > 0);
    }

    #[test]
    fn classic_square_counterexample() {
        // X ⪯ Y without X² ⪯ Y².
        let f = FreeSeries::univariate(&[0.0, 0.0, 1.0], None).unwrap();
        let x = MatrixTuple::new(vec![from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]])]).unwrap();
        let y = MatrixTuple::new(vec![from_real_rows(&[&[2.0, 1.0], &[1.0, 1.0]])]).unwrap();
        let pair = check_monotone_pair(&f, &x, &y, 1e-9).unwrap();
        assert!(pair.ordered);
        assert!(pair.violation);
    }
}
