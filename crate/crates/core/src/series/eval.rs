use super::FreeSeries;
use crate::error::{Error, Result};
use crate::matcore::{CMat, MatrixTuple};
use crate::words::{monomials, MonomialCache, WordOrder};

#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: CMat,
    /// Operator-norm bound on the omitted tail; `+∞` when no geometric bound
    /// is available.
    pub tail_bound: f64,
}

pub(crate) fn check_alphabet(f: &FreeSeries, x: &MatrixTuple) -> Result<()> {
    if f.d() != x.d() {
        return Err(Error::AlphabetMismatch {
            expected: f.d(),
            found: x.d(),
        });
    }
    Ok(())
}

/// Tail `Σ_{n > L} q^n` with `q = d·ρ/r`, valid when `|c_I| ≤ r^{-|I|}`.
pub(crate) fn tail_bound(f: &FreeSeries, rho: f64) -> f64 {
    match f.decay_rate() {
        Some(r) => {
            let q = f.d() as f64 * rho / r;
            if q < 1.0 {
                q.powi(f.degree() as i32 + 1) / (1.0 - q)
            } else {
                f64::INFINITY
            }
        }
        None => f64::INFINITY,
    }
}

/// Sum of the stored terms only; shared by every evaluation path.
pub(crate) fn eval_value(f: &FreeSeries, x: &MatrixTuple) -> Result<CMat> {
    check_alphabet(f, x)?;
    f.check_budget()?;
    let mut cache = MonomialCache::new(x);
    let mut acc = CMat::zeros(x.n(), x.n());
    for (w, &c) in f.terms() {
        acc += cache.get(w)? * c;
    }
    Ok(acc)
}

pub fn eval_series(f: &FreeSeries, x: &MatrixTuple) -> Result<EvalResult> {
    let value = eval_value(f, x)?;
    Ok(EvalResult {
        value,
        tail_bound: tail_bound(f, x.max_norm()),
    })
}

/// The stacked column `m_X = (X^I)_I`, block row `I` in graded-lex order.
pub fn monomial_vector(x: &MatrixTuple, max_degree: usize) -> Result<CMat> {
    let order = WordOrder::new(x.d(), max_degree)?;
    let n = x.n();
    let blocks = monomials(x, &order)?;
    let mut out = CMat::zeros(order.len() * n, n);
    for (i, b) in blocks.iter().enumerate() {
        out.view_mut((i * n, 0), (n, n)).copy_from(b);
    }
    Ok(out)
}
