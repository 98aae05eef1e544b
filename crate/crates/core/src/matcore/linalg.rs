use serde::Serialize;

use super::{CMat, CVec, C64, HERMITIAN_TOL, MAX_CONDITION};
use crate::error::{Error, Result};

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    CMat::zeros(rows, cols)
}

/// Builds a matrix from real row-major rows.
pub fn from_real_rows(rows: &[&[f64]]) -> CMat {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    CMat::from_fn(r, c, |i, j| c64(rows[i][j], 0.0))
}

pub fn real_diag(values: &[f64]) -> CMat {
    let n = values.len();
    CMat::from_fn(n, n, |i, j| if i == j { c64(values[i], 0.0) } else { C64::default() })
}

pub fn check_square(m: &CMat) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub fn check_finite(m: &CMat) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// `(M + M*)/2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// `Re M = (M + M*)/2`.
pub fn real_part(m: &CMat) -> Result<CMat> {
    check_square(m)?;
    Ok(hermitian_part(m))
}

/// `Im M = (M - M*)/(2i)`, exactly Hermitian.
pub fn imag_part(m: &CMat) -> Result<CMat> {
    check_square(m)?;
    let raw = (m - m.adjoint()) * c64(0.0, -0.5);
    Ok(hermitian_part(&raw))
}

pub fn frobenius_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Operator (spectral) norm.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

pub fn max_asymmetry(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Relative difference `‖a − b‖_F / max(‖a‖_F, ‖b‖_F)`, zero when both vanish.
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    let scale = frobenius_norm(a).max(frobenius_norm(b));
    if scale == 0.0 {
        return 0.0;
    }
    frobenius_norm(&(a - b)) / scale
}

/// Eigenvalues (ascending) and unit eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, idx: usize) -> CVec {
        self.vectors.column(idx).into_owned()
    }
}

/// Hermitian eigendecomposition of `(H + H*)/2`. Rejects inputs whose
/// asymmetry exceeds `1e-10·‖H‖`.
pub fn hermitian_eigen(h: &CMat) -> Result<HermitianEigen> {
    check_square(h)?;
    let asym = max_asymmetry(h);
    if asym > HERMITIAN_TOL * frobenius_norm(h) {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    Ok(eigh(&hermitian_part(h)))
}

fn eigh(h: &CMat) -> HermitianEigen {
    let n = h.nrows();
    if n == 0 {
        return HermitianEigen {
            values: vec![],
            vectors: CMat::zeros(0, 0),
        };
    }
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// Result of a PSD test under the relative convention
/// `min_eig ≥ −tol·(1 + ‖H‖₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdReport {
    pub min_eig: f64,
    pub is_psd: bool,
    pub tol_used: f64,
}

impl PsdReport {
    pub fn from_eigen(eig: &HermitianEigen, tol: f64) -> Self {
        let norm = eig.min().abs().max(eig.max().abs());
        let min_eig = eig.min();
        PsdReport {
            min_eig,
            is_psd: min_eig >= -tol * (1.0 + norm),
            tol_used: tol,
        }
    }
}

pub fn psd_min_eig(h: &CMat, tol: f64) -> Result<PsdReport> {
    let eig = hermitian_eigen(h)?;
    Ok(PsdReport::from_eigen(&eig, tol))
}

/// Ratio of extreme singular values; `+∞` for singular input.
pub fn condition_number(m: &CMat) -> f64 {
    if m.is_empty() {
        return 1.0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Inverse, refused when the condition number exceeds [`MAX_CONDITION`].
pub fn inverse_checked(m: &CMat, coordinate: Option<usize>) -> Result<CMat> {
    check_square(m)?;
    let condition = condition_number(m);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::Singular {
            coordinate,
            condition,
        });
    }
    m.clone().try_inverse().ok_or(Error::Singular {
        coordinate,
        condition,
    })
}

/// Kronecker product, block `(p, q)` of the result is `a[p, q]·b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn block_diag(blocks: &[&CMat]) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), (b.nrows(), b.ncols())).copy_from(*b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// PSD square root. Eigenvalues in `[−tol·(1+‖H‖), 0)` are clipped to zero;
/// anything more negative is an error carrying the offending eigenvalue.
pub fn psd_sqrt(h: &CMat, tol: f64) -> Result<CMat> {
    let eig = hermitian_eigen(h)?;
    let report = PsdReport::from_eigen(&eig, tol);
    if !report.is_psd {
        return Err(Error::NotPsd {
            k: 0,
            min_eig: report.min_eig,
        });
    }
    let n = h.nrows();
    let mut out = CMat::zeros(n, n);
    for (i, &lam) in eig.values.iter().enumerate() {
        if lam <= 0.0 {
            continue;
        }
        let v = eig.vector(i);
        out += (&v * v.adjoint()).scale(lam.sqrt());
    }
    Ok(out)
}

/// `M*M − I` measured in operator norm.
pub fn isometry_defect(m: &CMat) -> f64 {
    spectral_norm(&(m.adjoint() * m - identity(m.ncols())))
}
