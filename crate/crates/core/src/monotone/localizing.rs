use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{frobenius_norm, hermitian_eigen, max_asymmetry, CMat, CVec, PsdReport};
use crate::series::{localizing_entries, FreeSeries};
use crate::wire::{vector_to_wire, WireVector};
use crate::words::WordOrder;

/// Hermitian defect tolerated in a localizing matrix of a real free series.
const LOCALIZING_HERMITIAN_TOL: f64 = 1e-12;

/// The truncated `x_k`-localizing matrix `(c_{I* x_k J})_{I,J}` with rows and
/// columns indexed by words of length `≤ L` in graded-lex order.
/// Coefficients beyond the series degree are zero.
pub fn localizing_matrix(f: &FreeSeries, k: usize, max_len: usize) -> Result<CMat> {
    if k == 0 || k > f.d() {
        return Err(Error::InvalidWord {
            word: vec![k],
            reason: format!("letter outside 1..={}", f.d()),
        });
    }
    let order = WordOrder::new(f.d(), max_len)?;
    let mut m = CMat::zeros(order.len(), order.len());
    for e in localizing_entries(f, k, max_len) {
        let i = order.index_of(&e.row).expect("row length bounded by max_len");
        let j = order.index_of(&e.col).expect("column length bounded by max_len");
        m[(i, j)] = e.value;
    }
    Ok(m)
}

#[derive(Debug, Clone)]
pub struct LetterCertificate {
    pub k: usize,
    pub matrix: CMat,
    pub report: PsdReport,
    /// Unit eigenvector for the smallest eigenvalue.
    pub min_vector: CVec,
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Every localizing matrix is PSD at this degree. This is a degree-`L`
    /// certificate for the truncated series, not a proof about the full
    /// function.
    CertifiedPsd,
    /// Some `M_k` has `u* M_k u = min_eig < −tol` for the unit vector `u`.
    Refuted { k: usize, vector: CVec, min_eig: f64 },
}

#[derive(Debug, Clone)]
pub struct LocalizingCertificate {
    pub d: usize,
    pub degree: usize,
    /// Highest coefficient degree the matrices read, `2L + 1`.
    pub coefficient_horizon: usize,
    pub series_degree: usize,
    pub letters: Vec<LetterCertificate>,
    pub verdict: Verdict,
}

impl LocalizingCertificate {
    /// True when the matrices read coefficients beyond the series degree
    /// (those entries are zero).
    pub fn truncated(&self) -> bool {
        self.coefficient_horizon > self.series_degree
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedPsd
    }

    pub fn to_wire(&self) -> CertificateWire {
        let (verdict, witness) = match &self.verdict {
            Verdict::CertifiedPsd => ("certified_psd", None),
            Verdict::Refuted { k, vector, .. } => (
                "refuted",
                Some(WitnessWire {
                    k: *k,
                    vector: vector_to_wire(vector),
                }),
            ),
        };
        CertificateWire {
            degree: self.degree,
            letters: self
                .letters
                .iter()
                .map(|l| LetterWire {
                    k: l.k,
                    min_eig: l.report.min_eig,
                    psd: l.report.is_psd,
                })
                .collect(),
            verdict: verdict.to_string(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LetterWire {
    pub k: usize,
    pub min_eig: f64,
    pub psd: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessWire {
    pub k: usize,
    pub vector: WireVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateWire {
    pub degree: usize,
    pub letters: Vec<LetterWire>,
    pub verdict: String,
    pub witness: Option<WitnessWire>,
}

/// Builds every `M_k` at degree `L` and tests it for positivity. A refutation
/// is decisive for the truncated series; a certification is a degree-`L`
/// necessary-condition check.
pub fn certify_monotone(f: &FreeSeries, max_len: usize, tol: f64) -> Result<LocalizingCertificate> {
    if !f.real_free() {
        return Err(Error::InvalidSeries("monotonicity certificates need a real_free series".into()));
    }
    let f = f.clone().validated()?;
    let mut letters = Vec::with_capacity(f.d());
    for k in 1..=f.d() {
        let m = localizing_matrix(&f, k, max_len)?;
        let asym = max_asymmetry(&m);
        if asym > LOCALIZING_HERMITIAN_TOL * frobenius_norm(&m) {
            return Err(Error::NotHermitian { asymmetry: asym });
        }
        let eig = hermitian_eigen(&m)?;
        letters.push(LetterCertificate {
            k,
            report: PsdReport::from_eigen(&eig, tol),
            min_vector: eig.vector(0),
            eigenvalues: eig.values.clone(),
            matrix: m,
        });
    }
    let worst = letters
        .iter()
        .filter(|l| !l.report.is_psd)
        .min_by(|a, b| a.report.min_eig.total_cmp(&b.report.min_eig));
    let verdict = match worst {
        None => Verdict::CertifiedPsd,
        Some(l) => Verdict::Refuted {
            k: l.k,
            vector: l.min_vector.clone(),
            min_eig: l.report.min_eig,
        },
    };
    Ok(LocalizingCertificate {
        d: f.d(),
        degree: max_len,
        coefficient_horizon: 2 * max_len + 1,
        series_degree: f.degree(),
        letters,
        verdict,
    })
}
