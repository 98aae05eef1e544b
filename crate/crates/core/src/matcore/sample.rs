use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linalg::{c64, identity, spectral_norm};
use super::{CMat, CVec, MatrixTuple};

/// Seeded generator for test points. All randomness in the crate flows
/// through this type.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.random_range(0..upper)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Entries i.i.d. standard complex Gaussian (`E|z|² = 1`).
    pub fn gaussian(&mut self, rows: usize, cols: usize) -> CMat {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        CMat::from_fn(rows, cols, |_, _| c64(s * self.normal(), s * self.normal()))
    }

    pub fn gaussian_vector(&mut self, n: usize) -> CVec {
        let g = self.gaussian(n, 1);
        g.column(0).into_owned()
    }

    pub fn unit_vector(&mut self, n: usize) -> CVec {
        loop {
            let v = self.gaussian_vector(n);
            let norm = v.norm();
            if norm > 1e-8 {
                return v.unscale(norm);
            }
        }
    }

    /// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
    pub fn haar_unitary(&mut self, n: usize) -> CMat {
        let g = self.gaussian(n, n);
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        q
    }

    /// Gaussian Hermitian matrix with entries of order `1/√n`.
    pub fn hermitian(&mut self, n: usize) -> CMat {
        let g = self.gaussian(n, n);
        (&g + g.adjoint()).scale(0.5 / (n as f64).sqrt())
    }

    /// `B B*/n` for Gaussian `B`.
    pub fn psd(&mut self, n: usize) -> CMat {
        let b = self.gaussian(n, n);
        (&b * b.adjoint()).scale(1.0 / n as f64)
    }

    /// Strict contraction with norm drawn uniformly from `[0.05, 0.9]`.
    pub fn contraction(&mut self, n: usize) -> CMat {
        let g = self.gaussian(n, n);
        let target = self.uniform(0.05, 0.9);
        let norm = spectral_norm(&g).max(1e-300);
        g.scale(target / norm)
    }

    pub fn hermitian_tuple(&mut self, n: usize, d: usize) -> MatrixTuple {
        tuple((0..d).map(|_| self.hermitian(n)).collect())
    }

    /// Hermitian tuple rescaled so every coordinate has norm at most `radius`.
    pub fn hermitian_ball(&mut self, n: usize, d: usize, radius: f64) -> MatrixTuple {
        let mats = (0..d)
            .map(|_| {
                let h = self.hermitian(n);
                let target = self.uniform(0.1, 1.0) * radius;
                let norm = spectral_norm(&h).max(1e-300);
                h.scale(target / norm)
            })
            .collect();
        tuple(mats)
    }

    /// `Z_i = S_i + i(0.05·I + B_i B_i*)`, so `Im Z_i ⪰ 0.05·I`.
    pub fn pi_point(&mut self, n: usize, d: usize) -> MatrixTuple {
        let mats = (0..d)
            .map(|_| {
                let s = self.hermitian(n);
                let pos = identity(n).scale(0.05) + self.psd(n);
                s + pos * c64(0.0, 1.0)
            })
            .collect();
        tuple(mats)
    }

    pub fn psd_direction(&mut self, n: usize, d: usize) -> MatrixTuple {
        tuple((0..d).map(|_| self.psd(n)).collect())
    }

    pub fn contraction_tuple(&mut self, n: usize, d: usize) -> MatrixTuple {
        tuple((0..d).map(|_| self.contraction(n)).collect())
    }

    pub fn gaussian_tuple(&mut self, n: usize, d: usize) -> MatrixTuple {
        tuple((0..d).map(|_| self.gaussian(n, n).unscale((n as f64).sqrt())).collect())
    }
}

fn tuple(mats: Vec<CMat>) -> MatrixTuple {
    MatrixTuple::new(mats).expect("sampler produces square finite matrices of a common size")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    HaarUnitary,
    HermitianTuple,
    PiPoint,
    PsdDirection,
    ContractionTuple,
}

#[derive(Debug, Clone)]
pub enum Sample {
    Matrix(CMat),
    Tuple(MatrixTuple),
}

/// One-shot deterministic sample of the requested kind.
pub fn sample(kind: SampleKind, n: usize, d: usize, seed: u64) -> Sample {
    let mut s = Sampler::new(seed);
    let (n, d) = (n.max(1), d.max(1));
    match kind {
        SampleKind::HaarUnitary => Sample::Matrix(s.haar_unitary(n)),
        SampleKind::HermitianTuple => Sample::Tuple(s.hermitian_tuple(n, d)),
        SampleKind::PiPoint => Sample::Tuple(s.pi_point(n, d)),
        SampleKind::PsdDirection => Sample::Tuple(s.psd_direction(n, d)),
        SampleKind::ContractionTuple => Sample::Tuple(s.contraction_tuple(n, d)),
    }
}
