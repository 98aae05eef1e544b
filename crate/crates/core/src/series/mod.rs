//! Truncated free power series `f(X) = Σ_{|I| ≤ L} c_I X^I`.

mod axioms;
mod derivative;
mod eval;
mod identity;

pub use axioms::{axiom_verify, AxiomReport, Domain, TrialFailure};
pub use derivative::{derivative, localizing_entries, DerivativeMethod, LocalizingEntry};
pub use eval::{eval_series, monomial_vector, EvalResult};
pub use identity::{check_identity, IdentityCase, IdentityCheck};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{c64, C64};
use crate::words::{Word, WordOrder, DEFAULT_WORD_BUDGET};

/// Symmetry defect tolerated before `c_{I*} ≠ conj(c_I)` is reported.
const SYMMETRY_TOL: f64 = 1e-12;

/// A free power series truncated at degree `L`. The truncation *is* the
/// object: every claim about it is made at finite degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeSeries {
    d: usize,
    degree: usize,
    real_free: bool,
    decay_rate: Option<f64>,
    coeffs: BTreeMap<Word, C64>,
}

impl FreeSeries {
    /// Structural construction: words must use letters `1..=d` and have
    /// length `≤ degree`; coefficients must be finite; duplicates are errors.
    /// Symmetry and decay claims are checked by [`FreeSeries::validate`].
    pub fn new(
        d: usize,
        degree: usize,
        real_free: bool,
        decay_rate: Option<f64>,
        terms: impl IntoIterator<Item = (Word, C64)>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSeries("alphabet size d must be >= 1".into()));
        }
        if let Some(r) = decay_rate {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidSeries(format!("decay rate {r} must be positive")));
            }
        }
        let mut coeffs = BTreeMap::new();
        for (w, c) in terms {
            w.check_alphabet(d)?;
            if w.len() > degree {
                return Err(Error::InvalidWord {
                    word: w.letters().to_vec(),
                    reason: format!("length {} exceeds degree {degree}", w.len()),
                });
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidSeries(format!("non-finite coefficient at {w}")));
            }
            if coeffs.contains_key(&w) {
                return Err(Error::DuplicateWord(w.letters().to_vec()));
            }
            coeffs.insert(w, c);
        }
        Ok(FreeSeries {
            d,
            degree,
            real_free,
            decay_rate,
            coeffs,
        })
    }

    /// Dense construction from a coefficient rule over all words of length
    /// `≤ degree`; zero coefficients are not stored.
    pub fn from_fn(
        d: usize,
        degree: usize,
        real_free: bool,
        decay_rate: Option<f64>,
        rule: impl Fn(&Word) -> C64,
    ) -> Result<Self> {
        let order = WordOrder::new(d, degree)?;
        let terms = order
            .words()
            .iter()
            .map(|w| (w.clone(), rule(w)))
            .filter(|(_, c)| *c != C64::default())
            .collect::<Vec<_>>();
        Self::new(d, degree, real_free, decay_rate, terms)
    }

    /// One-variable real polynomial `Σ a_n x^n`.
    pub fn univariate(coeffs: &[f64], decay_rate: Option<f64>) -> Result<Self> {
        let degree = coeffs.len().saturating_sub(1);
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0.0)
            .map(|(n, &a)| (Word::new(vec![1; n]), c64(a, 0.0)));
        Self::new(1, degree, true, decay_rate, terms)
    }

    pub fn zero(d: usize) -> Self {
        FreeSeries {
            d,
            degree: 0,
            real_free: true,
            decay_rate: None,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn real_free(&self) -> bool {
        self.real_free
    }

    pub fn decay_rate(&self) -> Option<f64> {
        self.decay_rate
    }

    pub fn coeff(&self, w: &Word) -> C64 {
        self.coeffs.get(w).copied().unwrap_or_default()
    }

    /// Stored terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `s·f` for real `s` (keeps the real-free property).
    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c *= s;
        }
        if s.abs() > 1.0 {
            out.decay_rate = None;
        }
        out
    }

    /// ℓ² norm of the coefficient sequence (the free Hardy space norm).
    pub fn coefficient_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub(crate) fn check_budget(&self) -> Result<()> {
        if self.coeffs.len() > DEFAULT_WORD_BUDGET {
            return Err(Error::BudgetExceeded {
                count: self.coeffs.len(),
                budget: DEFAULT_WORD_BUDGET,
            });
        }
        Ok(())
    }

    /// Symmetry and decay diagnostics.
    pub fn validate(&self) -> Diagnostics {
        let mut diag = Diagnostics::default();
        if self.real_free {
            for (w, &c) in &self.coeffs {
                let star = w.involute();
                // each unordered pair {I, I*} reported once, from its smaller member
                if star < *w && self.coeffs.contains_key(&star) {
                    continue;
                }
                let defect = (self.coeff(&star) - c.conj()).norm();
                if defect > SYMMETRY_TOL * (1.0 + c.norm()) {
                    diag.symmetry_violations.push(SymmetryViolation {
                        word: w.clone(),
                        defect,
                    });
                }
            }
        }
        if let Some(r) = self.decay_rate {
            for (w, c) in &self.coeffs {
                let bound = r.powi(-(w.len() as i32));
                if c.norm() > bound * (1.0 + 1e-12) {
                    diag.decay_violations.push(DecayViolation {
                        word: w.clone(),
                        modulus: c.norm(),
                        bound,
                    });
                }
            }
        }
        diag
    }

    /// Returns `self` if [`FreeSeries::validate`] reports nothing.
    pub fn validated(self) -> Result<Self> {
        let diag = self.validate();
        if let Some(v) = diag.symmetry_violations.first() {
            return Err(Error::InvalidSeries(format!(
                "real_free symmetry c_(I*) = conj(c_I) violated at {} (defect {:e})",
                v.word, v.defect
            )));
        }
        if let Some(v) = diag.decay_violations.first() {
            return Err(Error::InvalidSeries(format!(
                "decay bound violated at {}: |c| = {:e} > {:e}",
                v.word, v.modulus, v.bound
            )));
        }
        Ok(self)
    }

    pub fn to_wire(&self) -> SeriesWire {
        SeriesWire {
            d: self.d,
            degree: self.degree,
            real_free: self.real_free,
            decay_rate: self.decay_rate,
            terms: self
                .coeffs
                .iter()
                .map(|(w, c)| TermWire {
                    word: w.letters().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    /// Parses the series JSON schema and enforces every invariant.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let wire: SeriesWire = serde_json::from_str(s).map_err(|e| Error::schema("$", e.to_string()))?;
        wire.into_series()?.validated()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryViolation {
    pub word: Word,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayViolation {
    pub word: Word,
    pub modulus: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub symmetry_violations: Vec<SymmetryViolation>,
    pub decay_violations: Vec<DecayViolation>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.symmetry_violations.is_empty() && self.decay_violations.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermWire {
    pub word: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesWire {
    pub d: usize,
    pub degree: usize,
    pub real_free: bool,
    pub decay_rate: Option<f64>,
    pub terms: Vec<TermWire>,
}

impl SeriesWire {
    pub fn into_series(self) -> Result<FreeSeries> {
        let d = self.d;
        let degree = self.degree;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.into_iter().enumerate() {
            let path = format!("$.terms[{i}]");
            let w = Word::checked(t.word, d).map_err(|e| Error::schema(&path, e.to_string()))?;
            if w.len() > degree {
                return Err(Error::schema(path, format!("word length {} exceeds degree {degree}", w.len())));
            }
            terms.push((w, c64(t.re, t.im)));
        }
        FreeSeries::new(d, degree, self.real_free, self.decay_rate, terms).map_err(|e| match e {
            Error::DuplicateWord(w) => Error::schema("$.terms", format!("duplicate word {w:?}")),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn identity_series_is_valid() {
        let f = FreeSeries::new(1, 1, true, None, [(Word::empty(), c64(0.0, 0.0)), (w(&[1]), c64(1.0, 0.0))]).unwrap();
        assert!(f.validate().is_valid());
    }

    #[test]
    fn symmetry_violation_reported() {
        let f = FreeSeries::new(2, 2, true, None, [(w(&[1, 2]), c64(1.0, 0.0)), (w(&[2, 1]), c64(0.0, 0.0))]).unwrap();
        let diag = f.validate();
        assert_eq!(diag.symmetry_violations.len(), 1);
        assert_eq!(diag.symmetry_violations[0].word, w(&[1, 2]));
        assert!(f.validated().is_err());
        // missing partner counts as zero
        let f = FreeSeries::new(2, 2, true, None, [(w(&[2, 1]), c64(1.0, 0.0))]).unwrap();
        assert_eq!(f.validate().symmetry_violations[0].word, w(&[2, 1]));
        // palindromes need real coefficients
        let f = FreeSeries::new(2, 3, true, None, [(w(&[1, 2, 1]), c64(0.0, 1.0))]).unwrap();
        assert_eq!(f.validate().symmetry_violations.len(), 1);
    }

    #[test]
    fn decay_claim_checked() {
        let coeffs: Vec<f64> = (0..20).map(|n| 0.5f64.powi(n + 1)).collect();
        assert!(FreeSeries::univariate(&coeffs, Some(2.0)).unwrap().validate().is_valid());
        let diag = FreeSeries::univariate(&coeffs, Some(3.0)).unwrap().validate();
        assert!(!diag.decay_violations.is_empty());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            FreeSeries::new(2, 2, false, None, [(w(&[3]), c64(1.0, 0.0))]),
            Err(Error::InvalidWord { .. })
        ));
        assert!(matches!(
            FreeSeries::new(1, 1, false, None, [(w(&[1, 1]), c64(1.0, 0.0))]),
            Err(Error::InvalidWord { .. })
        ));
        assert!(matches!(
            FreeSeries::new(1, 1, false, None, [(w(&[1]), c64(1.0, 0.0)), (w(&[1]), c64(2.0, 0.0))]),
            Err(Error::DuplicateWord(_))
        ));
    }

    #[test]
    fn json_duplicate_word_is_schema_error() {
        let text = r#"{"d":1,"degree":3,"real_free":true,"decay_rate":null,
            "terms":[{"word":[1,1,1],"re":1,"im":0},{"word":[1,1,1],"re":1,"im":0}]}"#;
        assert!(matches!(FreeSeries::from_json_str(text), Err(Error::Schema { .. })));
        let text = r#"{"d":1,"degree":3,"real_free":true,"decay_rate":null,
            "terms":[{"word":[1,1,1],"re":1,"im":0}]}"#;
        let f = FreeSeries::from_json_str(text).unwrap();
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coeff(&w(&[1, 1, 1])), c64(1.0, 0.0));
        let back = serde_json::to_string(&f.to_wire()).unwrap();
        assert_eq!(FreeSeries::from_json_str(&back).unwrap(), f);
    }
}
