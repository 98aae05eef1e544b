use crate::error::{Error, Result};
use crate::matcore::{
    c64, frobenius_norm, hermitian_eigen, kron, CMat, MatrixTuple, PsdReport, C64, HERMITIAN_TOL,
};
use crate::series::{derivative, eval_series, DerivativeMethod, FreeSeries};

/// Choi analysis of `H ↦ Df(X)[H e_k]` for one coordinate `k`.
#[derive(Debug, Clone)]
pub struct ChoiCoordinate {
    pub k: usize,
    /// `Σ_{p,q} E_pq ⊗ D_k(E_pq)`.
    pub choi: CMat,
    pub report: PsdReport,
    /// Operators with `D_k(H) = Σ_j V_j* H V_j`; empty when the Choi matrix
    /// is not PSD.
    pub kraus: Vec<CMat>,
    /// Largest Frobenius gap between the Kraus reconstruction and `D_k` on
    /// matrix units; `None` when no decomposition was built.
    pub reconstruction_residual: Option<f64>,
}

impl ChoiCoordinate {
    pub fn completely_positive(&self) -> bool {
        self.report.is_psd
    }
}

#[derive(Debug, Clone)]
pub struct ChoiReport {
    pub n: usize,
    pub coordinates: Vec<ChoiCoordinate>,
}

impl ChoiReport {
    pub fn all_completely_positive(&self) -> bool {
        self.coordinates.iter().all(ChoiCoordinate::completely_positive)
    }

    /// Most negative Choi eigenvalue across coordinates.
    pub fn min_eig(&self) -> f64 {
        self.coordinates
            .iter()
            .map(|c| c.report.min_eig)
            .fold(f64::INFINITY, f64::min)
    }
}

fn unit(n: usize, p: usize, q: usize) -> CMat {
    let mut e = CMat::zeros(n, n);
    e[(p, q)] = c64(1.0, 0.0);
    e
}

/// Choi matrices of the coordinate derivative maps at a self-adjoint point,
/// with Kraus operators read off the spectral decomposition when positive.
/// Eigenvalues below `tol·trace` are dropped from the decomposition.
pub fn choi_at(f: &FreeSeries, x: &MatrixTuple, tol: f64) -> Result<ChoiReport> {
    if !x.is_self_adjoint(HERMITIAN_TOL * (1.0 + x.max_norm())) {
        return Err(Error::OutsideDomain("Choi analysis needs a self-adjoint point".into()));
    }
    if f.decay_rate().is_some() && !eval_series(f, x)?.tail_bound.is_finite() {
        return Err(Error::OutsideDomain("point lies outside the convergence region of the series".into()));
    }
    let n = x.n();
    let d = f.d();
    let mut coordinates = Vec::with_capacity(d);
    for k in 0..d {
        let mut images = Vec::with_capacity(n * n);
        let mut choi = CMat::zeros(n * n, n * n);
        for p in 0..n {
            for q in 0..n {
                let mut dir: Vec<CMat> = vec![CMat::zeros(n, n); d];
                dir[k] = unit(n, p, q);
                let h = MatrixTuple::new(dir)?;
                let img = derivative(f, x, &h, DerivativeMethod::Block)?;
                choi += kron(&unit(n, p, q), &img);
                images.push(img);
            }
        }
        let eig = hermitian_eigen(&choi)?;
        let report = PsdReport::from_eigen(&eig, tol);
        let (kraus, reconstruction_residual) = if report.is_psd {
            let trace: f64 = eig.values.iter().filter(|v| **v > 0.0).sum();
            let cutoff = tol * trace;
            let mut kraus = Vec::new();
            for (j, &lam) in eig.values.iter().enumerate() {
                if lam <= cutoff {
                    continue;
                }
                let w = eig.vector(j) * C64::new(lam.sqrt(), 0.0);
                // Column p of K is block p of √λ·w; D(H) = Σ K H K*.
                let big_k = CMat::from_fn(n, n, |r, p| w[p * n + r]);
                kraus.push(big_k.adjoint());
            }
            let mut worst = 0.0f64;
            for p in 0..n {
                for q in 0..n {
                    let e = unit(n, p, q);
                    let mut acc = CMat::zeros(n, n);
                    for v in &kraus {
                        acc += v.adjoint() * &e * v;
                    }
                    worst = worst.max(frobenius_norm(&(acc - &images[p * n + q])));
                }
            }
            (kraus, Some(worst))
        } else {
            (Vec::new(), None)
        };
        coordinates.push(ChoiCoordinate {
            k: k + 1,
            choi,
            report,
            kraus,
            reconstruction_residual,
        });
    }
    Ok(ChoiReport { n, coordinates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{identity, real_diag, Sampler};

    fn geometric(degree: usize) -> FreeSeries {
        let coeffs: Vec<f64> = (0..=degree).map(|n| 0.5f64.powi(n as i32 + 1)).collect();
        FreeSeries::univariate(&coeffs, Some(2.0)).unwrap()
    }

    #[test]
    fn identity_function_has_single_kraus() {
        let f = FreeSeries::univariate(&[0.0, 1.0], None).unwrap();
        let x = Sampler::new(3).hermitian_tuple(3, 1);
        let rep = choi_at(&f, &x, 1e-9).unwrap();
        let c = &rep.coordinates[0];
        assert!(c.completely_positive());
        assert_eq!(c.kraus.len(), 1);
        let v = &c.kraus[0];
        // V = e^{iθ} I
        let phase = v[(0, 0)];
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        assert!(frobenius_norm(&(v - identity(3) * phase)) < 1e-12);
        assert!(c.reconstruction_residual.unwrap() < 1e-12);
    }

    #[test]
    fn scalar_point_resolvent() {
        // At X = 0.5·I the derivative of 1/(2 − x) is H / 1.5².
        let f = geometric(60);
        let x = MatrixTuple::new(vec![identity(2).scale(0.5)]).unwrap();
        let rep = choi_at(&f, &x, 1e-9).unwrap();
        let c = &rep.coordinates[0];
        assert_eq!(c.kraus.len(), 1);
        let v = &c.kraus[0];
        let vv = v.adjoint() * v;
        assert!(frobenius_norm(&(vv - identity(2) / c64(2.25, 0.0))) < 1e-12);
    }

    #[test]
    fn resolvent_is_completely_positive() {
        let f = geometric(40);
        for seed in 0..5 {
            let x = Sampler::new(seed).hermitian_ball(3, 1, 0.5);
            let rep = choi_at(&f, &x, 1e-9).unwrap();
            assert!(rep.all_completely_positive());
            assert!(rep.coordinates[0].reconstruction_residual.unwrap() < 1e-8);
        }
    }

    #[test]
    fn cube_is_not_completely_positive() {
        let f = FreeSeries::univariate(&[0.0, 0.0, 0.0, 1.0], None).unwrap();
        let x = MatrixTuple::new(vec![real_diag(&[0.3, 0.3 * 2f64.sqrt()])]).unwrap();
        let rep = choi_at(&f, &x, 1e-9).unwrap();
        assert!(rep.min_eig() < -1e-3, "{}", rep.min_eig());
        assert!(rep.coordinates[0].kraus.is_empty());
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let f = geometric(5);
        let x = MatrixTuple::scalars(&[c64(0.0, 0.1)]);
        assert!(matches!(choi_at(&f, &x, 1e-9), Err(Error::OutsideDomain(_))));
        let far = MatrixTuple::scalars(&[c64(3.0, 0.0)]);
        assert!(matches!(choi_at(&f, &far, 1e-9), Err(Error::OutsideDomain(_))));
    }
}
