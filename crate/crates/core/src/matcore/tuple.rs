use super::linalg::{block_diag, check_finite, check_square, identity, imag_part, inverse_checked, spectral_norm, c64};
use super::{CMat, C64};
use crate::error::{Error, Result};

/// A `d`-tuple of `n×n` complex matrices, the point at which free functions
/// are evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    n: usize,
    mats: Vec<CMat>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<CMat>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::DimensionMismatch("tuple must have d >= 1 coordinates".into()));
        }
        let n = check_square(&mats[0])?;
        for (i, m) in mats.iter().enumerate() {
            if check_square(m)? != n {
                return Err(Error::DimensionMismatch(format!(
                    "coordinate {} is {}x{}, expected {n}x{n}",
                    i + 1,
                    m.nrows(),
                    m.ncols()
                )));
            }
            check_finite(m)?;
        }
        Ok(MatrixTuple { n, mats })
    }

    /// The scalar (level one) tuple `(z_1, …, z_d)`.
    pub fn scalars(values: &[C64]) -> Self {
        MatrixTuple {
            n: 1,
            mats: values.iter().map(|&z| CMat::from_element(1, 1, z)).collect(),
        }
    }

    pub fn zeros(d: usize, n: usize) -> Self {
        MatrixTuple {
            n,
            mats: vec![CMat::zeros(n, n); d],
        }
    }

    /// A single-coordinate tuple.
    pub fn single(m: CMat) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize) -> &CMat {
        &self.mats[i]
    }

    pub fn mats(&self) -> &[CMat] {
        &self.mats
    }

    pub fn into_mats(self) -> Vec<CMat> {
        self.mats
    }

    pub fn iter(&self) -> impl Iterator<Item = &CMat> {
        self.mats.iter()
    }

    /// Applies `f` coordinate-wise; `f` must return square matrices of a
    /// common size.
    pub fn map(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        let mats: Vec<CMat> = self.mats.iter().map(f).collect();
        MatrixTuple {
            n: mats[0].nrows(),
            mats,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(MatrixTuple {
            n: self.n,
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.d() != other.d() || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "tuples of shape (d={}, n={}) and (d={}, n={})",
                self.d(),
                self.n,
                other.d(),
                other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|m| m * s)
    }

    /// `X + t·H`.
    pub fn axpy(&self, t: C64, h: &Self) -> Result<Self> {
        self.zip_with(h, |a, b| a + b * t)
    }

    /// Coordinate-wise adjoint tuple.
    pub fn adjoint(&self) -> Self {
        self.map(|m| m.adjoint())
    }

    /// `U* X U` coordinate-wise.
    pub fn unitary_conjugate(&self, u: &CMat) -> Result<Self> {
        if u.nrows() != self.n || u.ncols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "conjugating unitary is {}x{}, level is {}",
                u.nrows(),
                u.ncols(),
                self.n
            )));
        }
        let ua = u.adjoint();
        Ok(self.map(|m| &ua * m * u))
    }

    /// `X ⊗ I_k` coordinate-wise.
    pub fn tensor_identity(&self, k: usize) -> Self {
        let id = identity(k);
        self.map(|m| m.kronecker(&id))
    }

    /// Largest coordinate operator norm.
    pub fn max_norm(&self) -> f64 {
        self.mats.iter().map(spectral_norm).fold(0.0, f64::max)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.mats
            .iter()
            .all(|m| super::linalg::max_asymmetry(m) <= tol * (1.0 + super::linalg::frobenius_norm(m)))
    }

    /// Smallest eigenvalue over all coordinates of `Im X_i`.
    pub fn min_imag_eig(&self) -> Result<f64> {
        let mut worst = f64::INFINITY;
        for m in &self.mats {
            let eig = super::linalg::hermitian_eigen(&imag_part(m)?)?;
            worst = worst.min(eig.min());
        }
        Ok(worst)
    }

    /// Membership in the free poly-upper-half-plane: every `Im X_i ≻ 0`.
    pub fn in_upper_half_plane(&self) -> Result<bool> {
        Ok(self.min_imag_eig()? > 0.0)
    }
}

/// Coordinate-wise block-diagonal tuple `X ⊕ Y`.
pub fn direct_sum(x: &MatrixTuple, y: &MatrixTuple) -> Result<MatrixTuple> {
    if x.d() != y.d() {
        return Err(Error::DimensionMismatch(format!(
            "direct sum of tuples with d = {} and d = {}",
            x.d(),
            y.d()
        )));
    }
    Ok(MatrixTuple {
        n: x.n + y.n,
        mats: x.mats.iter().zip(&y.mats).map(|(a, b)| block_diag(&[a, b])).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CayleyDirection {
    /// `Z = i(I − X)^{-1}(I + X)`.
    DiskToHalf,
    /// `X = (Z − iI)(Z + iI)^{-1}`.
    HalfToDisk,
}

impl std::str::FromStr for CayleyDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disk2half" | "disk_to_half" => Ok(CayleyDirection::DiskToHalf),
            "half2disk" | "half_to_disk" => Ok(CayleyDirection::HalfToDisk),
            other => Err(Error::schema("direction", format!("unknown Cayley direction {other:?}"))),
        }
    }
}

/// Coordinate-wise Cayley transform between the free polydisk and the free
/// poly-upper-half-plane.
pub fn cayley(p: &MatrixTuple, direction: CayleyDirection) -> Result<MatrixTuple> {
    let n = p.n();
    let id = identity(n);
    let i = c64(0.0, 1.0);
    let mut out = Vec::with_capacity(p.d());
    for (k, m) in p.iter().enumerate() {
        let z = match direction {
            CayleyDirection::DiskToHalf => {
                let inv = inverse_checked(&(&id - m), Some(k))?;
                inv * (&id + m) * i
            }
            CayleyDirection::HalfToDisk => {
                let inv = inverse_checked(&(m + &id * i), Some(k))?;
                (m - &id * i) * inv
            }
        };
        out.push(z);
    }
    MatrixTuple::new(out)
}
