//! The free coefficient Hardy space at a point: Szegő kernels, their Gram
//! matrix, the projection onto the kernel span and minimum-norm
//! interpolation.
//!
//! Coefficient vectors are indexed by words of length `≤ L` in graded-lex
//! order, with inner product `⟨f, g⟩ = Σ f_I conj(g_I)`. Kernel `k^{ij}` is
//! stored as column `i·n + j` of `K`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{c64, hermitian_eigen, CMat, CVec, MatrixTuple, C64};
use crate::series::{eval_series, FreeSeries};
use crate::wire::{complex_to_wire, matrix_to_wire, WireComplex, WireMatrix};
use crate::words::{monomials, Word, WordOrder};

/// Gram eigenvalues below this fraction of the largest are treated as zero.
pub const PINV_THRESHOLD: f64 = 1e-12;
/// Absolute slack on the consistency of an interpolation target.
pub const CONSISTENCY_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SzegoFrame {
    pub x: MatrixTuple,
    pub degree: usize,
    pub order: WordOrder,
    /// `count(L) × n²`, column `i·n + j` is `k^{ij}`.
    pub kernels: CMat,
    /// `K*K`.
    pub gram: CMat,
    pub rank: usize,
}

/// Eigenvalue-thresholded pseudo-inverse of a Hermitian PSD matrix and its
/// numerical rank.
fn psd_pinv(g: &CMat) -> Result<(CMat, usize)> {
    let eig = hermitian_eigen(g)?;
    let cutoff = PINV_THRESHOLD * eig.max().max(0.0);
    let n = g.nrows();
    let mut out = CMat::zeros(n, n);
    let mut rank = 0;
    for (i, &lam) in eig.values.iter().enumerate() {
        if lam > cutoff && lam > 0.0 {
            let v = eig.vector(i);
            out += (&v * v.adjoint()) * c64(1.0 / lam, 0.0);
            rank += 1;
        }
    }
    Ok((out, rank))
}

pub fn szego_kernels(x: &MatrixTuple, max_len: usize) -> Result<SzegoFrame> {
    let order = WordOrder::new(x.d(), max_len)?;
    let mono = monomials(x, &order)?;
    let n = x.n();
    let kernels = CMat::from_fn(order.len(), n * n, |w, col| mono[w][(col / n, col % n)].conj());
    let gram = kernels.adjoint() * &kernels;
    let (_, rank) = psd_pinv(&gram)?;
    Ok(SzegoFrame {
        x: x.clone(),
        degree: max_len,
        order,
        kernels,
        gram,
        rank,
    })
}

impl SzegoFrame {
    pub fn kernel(&self, i: usize, j: usize) -> CVec {
        self.kernels.column(i * self.x.n() + j).into_owned()
    }

    /// Coefficients of `f` laid out over this frame's word order.
    pub fn coefficients(&self, f: &FreeSeries) -> Result<CVec> {
        if f.d() != self.x.d() {
            return Err(Error::AlphabetMismatch {
                expected: self.x.d(),
                found: f.d(),
            });
        }
        if f.degree() > self.degree {
            return Err(Error::InvalidSeries(format!(
                "series degree {} exceeds frame degree {}",
                f.degree(),
                self.degree
            )));
        }
        let mut v = CVec::zeros(self.order.len());
        for (w, &c) in f.terms() {
            let idx = self.order.index_of(w).expect("degree checked above");
            v[idx] = c;
        }
        Ok(v)
    }

    /// The series with the given coefficient vector.
    pub fn series(&self, coeffs: &CVec) -> Result<FreeSeries> {
        let terms = self
            .order
            .words()
            .iter()
            .zip(coeffs.iter())
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(w, &c)| (w.clone(), c));
        FreeSeries::new(self.x.d(), self.degree, false, None, terms)
    }

    /// `⟨f, k^{ij}⟩` for every `(i, j)`, as an `n×n` matrix.
    pub fn pair(&self, coeffs: &CVec) -> CMat {
        let n = self.x.n();
        let t = self.kernels.adjoint() * coeffs;
        CMat::from_fn(n, n, |i, j| t[i * n + j])
    }

    /// Orthogonal projection `K G^+ K*` onto the kernel span.
    pub fn projection(&self) -> Result<CMat> {
        let (pinv, _) = psd_pinv(&self.gram)?;
        Ok(&self.kernels * pinv * self.kernels.adjoint())
    }

    pub fn to_wire(&self) -> FrameWire {
        let n = self.x.n();
        let kernels = (0..n * n)
            .map(|col| KernelWire {
                i: col / n + 1,
                j: col % n + 1,
                entries: self
                    .order
                    .words()
                    .iter()
                    .enumerate()
                    .filter(|(w, _)| self.kernels[(*w, col)].norm() > 0.0)
                    .map(|(w, word)| KernelEntry {
                        word: word.clone(),
                        value: complex_to_wire(self.kernels[(w, col)]),
                    })
                    .collect(),
            })
            .collect();
        FrameWire {
            n,
            d: self.x.d(),
            degree: self.degree,
            rank: self.rank,
            kernels,
            gram: matrix_to_wire(&self.gram),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelEntry {
    pub word: Word,
    pub value: WireComplex,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelWire {
    pub i: usize,
    pub j: usize,
    pub entries: Vec<KernelEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameWire {
    pub n: usize,
    pub d: usize,
    pub degree: usize,
    pub rank: usize,
    pub kernels: Vec<KernelWire>,
    pub gram: WireMatrix,
}

/// Largest `|⟨f, k^{ij}⟩ − f(X)_{ij}|`.
pub fn reproduce_check(frame: &SzegoFrame, f: &FreeSeries) -> Result<f64> {
    let coeffs = frame.coefficients(f)?;
    let value = eval_series(f, &frame.x)?.value;
    let paired = frame.pair(&coeffs);
    Ok((paired - value).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

pub fn gram_projection(frame: &SzegoFrame) -> Result<CMat> {
    frame.projection()
}

#[derive(Debug, Clone)]
pub struct Interpolant {
    pub series: FreeSeries,
    pub coeffs: CVec,
    /// Kernel weights `μ = G^+ t`, one per `(i, j)`.
    pub mu: CVec,
    /// `‖G G^+ t − t‖`.
    pub consistency_residual: f64,
    /// `‖f(X) − target‖_F` over the truncated coefficients.
    pub residual: f64,
    pub norm: f64,
}

/// The minimum-norm coefficient series with `f(X) = target`, found in the
/// kernel span through the Gram pseudo-inverse. Targets outside the range of
/// evaluation fail with the normal-equation residual.
pub fn min_norm_interpolate(x: &MatrixTuple, target: &CMat, max_len: usize) -> Result<Interpolant> {
    let n = x.n();
    if target.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!("target must be {n}x{n}")));
    }
    let frame = szego_kernels(x, max_len)?;
    let t = CVec::from_fn(n * n, |a, _| target[(a / n, a % n)]);
    let (pinv, _) = psd_pinv(&frame.gram)?;
    let mu = &pinv * &t;
    let consistency_residual = (&frame.gram * &mu - &t).norm();
    if !(consistency_residual <= CONSISTENCY_TOL * (1.0 + t.norm())) {
        return Err(Error::Infeasible {
            residual: consistency_residual,
        });
    }
    let coeffs = &frame.kernels * &mu;
    let series = frame.series(&coeffs)?;
    let value = frame.pair(&coeffs);
    let residual = (value - target).norm();
    Ok(Interpolant {
        norm: coeffs.norm(),
        series,
        coeffs,
        mu,
        consistency_residual,
        residual,
    })
}

/// `⟨f, g⟩ = Σ f_I conj(g_I)`.
pub fn inner(f: &CVec, g: &CVec) -> C64 {
    f.iter().zip(g.iter()).map(|(a, b)| a * b.conj()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{frobenius_norm, from_real_rows, identity, Sampler};

    const LAMBDA: f64 = 0.4;

    fn random_series(d: usize, degree: usize, s: &mut Sampler) -> FreeSeries {
        let order = WordOrder::new(d, degree).unwrap();
        let terms: Vec<_> = order.words().iter().map(|w| (w.clone(), c64(s.normal(), s.normal()))).collect();
        FreeSeries::new(d, degree, false, None, terms).unwrap()
    }

    fn jordan() -> MatrixTuple {
        MatrixTuple::new(vec![from_real_rows(&[&[LAMBDA, LAMBDA], &[0.0, LAMBDA]])]).unwrap()
    }

    #[test]
    fn jordan_kernels() {
        let frame = szego_kernels(&jordan(), 60).unwrap();
        assert!(frame.kernel(1, 0).iter().all(|z| z.norm() == 0.0));
        let k11 = frame.kernel(0, 0);
        for (p, z) in k11.iter().enumerate().take(10) {
            assert!((z.re - LAMBDA.powi(p as i32)).abs() < 1e-15);
        }
        assert_eq!(frame.kernel(0, 0), frame.kernel(1, 1));
        assert_eq!(frame.rank, 2);
    }

    #[test]
    fn jordan_gram_closed_forms() {
        // Σ x^n, Σ n x^n and Σ n² x^n with x = |λ|².
        let frame = szego_kernels(&jordan(), 60).unwrap();
        let x = LAMBDA * LAMBDA;
        let g = &frame.gram;
        assert!((g[(0, 0)].re - 1.0 / (1.0 - x)).abs() < 1e-10);
        assert!((g[(0, 1)].re - x / (1.0 - x).powi(2)).abs() < 1e-10);
        assert!((g[(1, 1)].re - x * (1.0 + x) / (1.0 - x).powi(3)).abs() < 1e-10);
    }

    #[test]
    fn jordan_interpolation() {
        // f(λ) = 2, f'(λ) = 3.
        let (a, b) = (2.0, 3.0);
        let target = from_real_rows(&[&[a, LAMBDA * b], &[0.0, a]]);
        let it = min_norm_interpolate(&jordan(), &target, 60).unwrap();
        assert!(it.residual < 1e-8);
        let f = |z: f64| -> (f64, f64) {
            let mut v = 0.0;
            let mut dv = 0.0;
            for (p, c) in it.coeffs.iter().enumerate() {
                v += c.re * z.powi(p as i32);
                if p > 0 {
                    dv += p as f64 * c.re * z.powi(p as i32 - 1);
                }
            }
            (v, dv)
        };
        let (v, dv) = f(LAMBDA);
        assert!((v - a).abs() < 1e-8 && (dv - b).abs() < 1e-8);
        // Weights on (k¹¹, k¹²) solve the 2×2 Gram system.
        let x = LAMBDA * LAMBDA;
        let (g11, g12, g22) = (1.0 / (1.0 - x), x / (1.0 - x).powi(2), x * (1.0 + x) / (1.0 - x).powi(3));
        let det = g11 * g22 - g12 * g12;
        let mu1 = (g22 * a - g12 * LAMBDA * b) / det;
        let mu2 = (-g12 * a + g11 * LAMBDA * b) / det;
        let mu11 = it.mu[0] + it.mu[3];
        assert!((mu11.re - mu1).abs() < 1e-8, "{mu11} vs {mu1}");
        assert!((it.mu[1].re - mu2).abs() < 1e-8);
    }

    #[test]
    fn inconsistent_target_rejected() {
        let target = from_real_rows(&[&[2.0, 1.2], &[0.5, 2.0]]);
        assert!(matches!(min_norm_interpolate(&jordan(), &target, 60), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn zero_point_has_rank_one() {
        let frame = szego_kernels(&MatrixTuple::zeros(2, 3), 3).unwrap();
        assert_eq!(frame.rank, 1);
        let p = gram_projection(&frame).unwrap();
        assert!((p[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(frobenius_norm(&p) - 1.0 < 1e-12);
    }

    #[test]
    fn projection_idempotent_and_hermitian() {
        let x = Sampler::new(2).gaussian_tuple(2, 2);
        let frame = szego_kernels(&x, 4).unwrap();
        let p = gram_projection(&frame).unwrap();
        assert!(frobenius_norm(&(&p * &p - &p)) < 1e-10);
        assert!(frobenius_norm(&(&p - p.adjoint())) < 1e-10);
        assert!(frame.rank <= 4);
    }

    #[test]
    fn reproducing_property() {
        let mut s = Sampler::new(3);
        let x = s.gaussian_tuple(3, 2);
        let f = random_series(2, 4, &mut s);
        let frame = szego_kernels(&x, 4).unwrap();
        let fx = eval_series(&f, &x).unwrap().value;
        assert!(reproduce_check(&frame, &f).unwrap() <= 1e-12 * (1.0 + frobenius_norm(&fx)));
        let id = FreeSeries::univariate(&[0.0, 1.0], None).unwrap();
        let y = s.gaussian_tuple(2, 1);
        assert!(reproduce_check(&szego_kernels(&y, 1).unwrap(), &id).unwrap() < 1e-15);
        assert!(reproduce_check(&szego_kernels(&y, 0).unwrap(), &id).is_err());
    }

    #[test]
    fn minimum_norm_and_orthogonality() {
        let mut s = Sampler::new(4);
        let x = s.gaussian_tuple(2, 2);
        let f0 = random_series(2, 3, &mut s);
        let target = eval_series(&f0, &x).unwrap().value;
        let it = min_norm_interpolate(&x, &target, 3).unwrap();
        let frame = szego_kernels(&x, 3).unwrap();
        let c0 = frame.coefficients(&f0).unwrap();
        assert!(it.norm <= c0.norm() + 1e-12);
        assert!(it.residual < 1e-8);
        let p = frame.projection().unwrap();
        assert!((&p * &it.coeffs - &it.coeffs).norm() < 1e-10);
        // Anything vanishing at X is orthogonal to the interpolant.
        let id = identity(frame.order.len());
        for _ in 0..5 {
            let c = CVec::from_fn(frame.order.len(), |_, _| c64(s.normal(), s.normal()));
            let g = (&id - &p) * c;
            assert!(frame.pair(&g).norm() < 1e-9);
            assert!(inner(&it.coeffs, &g).norm() < 1e-10);
        }
    }

    #[test]
    fn frame_export_lists_nonzero_entries() {
        let frame = szego_kernels(&jordan(), 3).unwrap();
        let wire = serde_json::to_value(frame.to_wire()).unwrap();
        assert_eq!(wire["kernels"][2]["entries"].as_array().unwrap().len(), 0);
        assert_eq!(wire["kernels"][0]["entries"].as_array().unwrap().len(), 4);
        assert_eq!(wire["kernels"][1]["entries"][0]["word"], serde_json::json!([1]));
    }
}
