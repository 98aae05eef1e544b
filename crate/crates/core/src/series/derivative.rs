use super::eval::{check_alphabet, eval_value};
use super::FreeSeries;
use crate::error::{Error, Result};
use crate::matcore::{c64, frobenius_norm, CMat, MatrixTuple, C64};
use crate::words::{MonomialCache, Word};

/// How to compute `Df(X)[H]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMethod {
    /// Upper-right corner of `f` at the block tuple `[[X_i, H_i], [0, X_i]]`.
    Block,
    /// `Σ_k Σ_{I,J} (c_{I* x_k J}) X^{I*} H_k X^J` through the localizing
    /// matrices of coefficients.
    Localizing,
    /// Central difference `(f(X + tH) − f(X − tH)) / 2t`, optionally with
    /// one Richardson extrapolation step.
    FiniteDifference { step: f64, richardson: bool },
}

impl DerivativeMethod {
    pub const DEFAULT_STEP: f64 = 1e-5;

    pub fn fd() -> Self {
        DerivativeMethod::FiniteDifference {
            step: Self::DEFAULT_STEP,
            richardson: false,
        }
    }
}

impl std::str::FromStr for DerivativeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "block" => Ok(DerivativeMethod::Block),
            "localizing" => Ok(DerivativeMethod::Localizing),
            "fd" => Ok(DerivativeMethod::fd()),
            other => Err(Error::schema("method", format!("unknown derivative method {other:?}"))),
        }
    }
}

/// A nonzero entry `(I, J) ↦ c_{I* x_k J}` of the `x_k`-localizing matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizingEntry {
    pub row: Word,
    pub col: Word,
    pub value: C64,
}

/// Nonzero entries of the `x_k`-localizing matrix restricted to rows and
/// columns of length `≤ max_len`. Each stored term `K = A x_k B` contributes
/// the entry `(A*, B)`.
pub fn localizing_entries(f: &FreeSeries, k: usize, max_len: usize) -> Vec<LocalizingEntry> {
    let mut out = Vec::new();
    for (w, &c) in f.terms() {
        let letters = w.letters();
        for (p, &l) in letters.iter().enumerate() {
            if l != k {
                continue;
            }
            let row = Word::new(letters[..p].iter().rev().copied().collect());
            let col = Word::new(letters[p + 1..].to_vec());
            if row.len() <= max_len && col.len() <= max_len {
                out.push(LocalizingEntry { row, col, value: c });
            }
        }
    }
    out
}

pub fn derivative(f: &FreeSeries, x: &MatrixTuple, h: &MatrixTuple, method: DerivativeMethod) -> Result<CMat> {
    check_alphabet(f, x)?;
    x.check_same_shape(h)?;
    match method {
        DerivativeMethod::Block => block(f, x, h),
        DerivativeMethod::Localizing => localizing(f, x, h),
        DerivativeMethod::FiniteDifference { step, richardson } => {
            let d1 = central_difference(f, x, h, step)?;
            if richardson {
                let d2 = central_difference(f, x, h, step / 2.0)?;
                Ok((d2 * c64(4.0, 0.0) - d1) / c64(3.0, 0.0))
            } else {
                Ok(d1)
            }
        }
    }
}

fn block(f: &FreeSeries, x: &MatrixTuple, h: &MatrixTuple) -> Result<CMat> {
    let n = x.n();
    let mats = x
        .iter()
        .zip(h.iter())
        .map(|(xi, hi)| {
            let mut b = CMat::zeros(2 * n, 2 * n);
            b.view_mut((0, 0), (n, n)).copy_from(xi);
            b.view_mut((n, n), (n, n)).copy_from(xi);
            b.view_mut((0, n), (n, n)).copy_from(hi);
            b
        })
        .collect();
    let big = eval_value(f, &MatrixTuple::new(mats)?)?;
    Ok(big.view((0, n), (n, n)).into_owned())
}

fn localizing(f: &FreeSeries, x: &MatrixTuple, h: &MatrixTuple) -> Result<CMat> {
    let n = x.n();
    let max_len = f.degree().saturating_sub(1);
    let mut cache = MonomialCache::new(x);
    let mut acc = CMat::zeros(n, n);
    for k in 1..=f.d() {
        let hk = h.get(k - 1);
        for e in localizing_entries(f, k, max_len) {
            // X^{I*} coincides with (X^I)* on self-adjoint tuples
            let left = cache.get(&e.row.involute())?.clone();
            let right = cache.get(&e.col)?;
            acc += left * hk * right * e.value;
        }
    }
    Ok(acc)
}

fn central_difference(f: &FreeSeries, x: &MatrixTuple, h: &MatrixTuple, step: f64) -> Result<CMat> {
    let scale_x = x.iter().map(frobenius_norm).fold(0.0, f64::max);
    let scale_h = h.iter().map(frobenius_norm).fold(0.0, f64::max);
    if !(step > 0.0) || (scale_h > 0.0 && step * scale_h <= f64::EPSILON * (1.0 + scale_x)) {
        return Err(Error::StepUnderflow { step });
    }
    let plus = eval_value(f, &x.axpy(c64(step, 0.0), h)?)?;
    let minus = eval_value(f, &x.axpy(c64(-step, 0.0), h)?)?;
    Ok((plus - minus) / c64(2.0 * step, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{max_asymmetry, rel_diff, Sampler};

    fn random_series(s: &mut Sampler, d: usize, degree: usize, real_free: bool) -> FreeSeries {
        let order = crate::words::WordOrder::new(d, degree).unwrap();
        let mut terms = std::collections::BTreeMap::new();
        for w in order.words() {
            if terms.contains_key(w) {
                continue;
            }
            let c = c64(s.normal(), if real_free { 0.0 } else { s.normal() });
            if real_free {
                let star = w.involute();
                let im = if star == *w { 0.0 } else { s.normal() };
                terms.insert(w.clone(), c64(c.re, im));
                if star != *w {
                    terms.insert(star, c64(c.re, -im));
                }
            } else {
                terms.insert(w.clone(), c);
            }
        }
        FreeSeries::new(d, degree, real_free, None, terms).unwrap()
    }

    #[test]
    fn square_product_rule() {
        let f = FreeSeries::univariate(&[0.0, 0.0, 1.0], None).unwrap();
        let mut s = Sampler::new(5);
        let x = s.gaussian_tuple(3, 1);
        let h = s.gaussian_tuple(3, 1);
        let expect = x.get(0) * h.get(0) + h.get(0) * x.get(0);
        for m in [DerivativeMethod::Block, DerivativeMethod::Localizing] {
            assert!(rel_diff(&derivative(&f, &x, &h, m).unwrap(), &expect) < 1e-14);
        }
        assert!(rel_diff(&derivative(&f, &x, &h, DerivativeMethod::fd()).unwrap(), &expect) < 1e-9);
    }

    #[test]
    fn jordan_block_corner_is_lambda_times_derivative() {
        // f = 1 + 2x − x² + 0.5x³ at [[λ, λ], [0, λ]]
        let a = [1.0, 2.0, -1.0, 0.5];
        let f = FreeSeries::univariate(&a, None).unwrap();
        let lam = 0.7;
        let j = MatrixTuple::single(crate::matcore::from_real_rows(&[&[lam, lam], &[0.0, lam]])).unwrap();
        let v = eval_value(&f, &j).unwrap();
        let fprime = 2.0 - 2.0 * lam + 1.5 * lam * lam;
        assert!((v[(0, 1)] - c64(lam * fprime, 0.0)).norm() < 1e-14);
        assert!(v[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn three_methods_agree_on_random_series() {
        let mut s = Sampler::new(77);
        for _ in 0..5 {
            let f = random_series(&mut s, 2, 5, false);
            let x = s.gaussian_tuple(3, 2).scale(c64(0.5, 0.0));
            let h = s.gaussian_tuple(3, 2);
            let b = derivative(&f, &x, &h, DerivativeMethod::Block).unwrap();
            let l = derivative(&f, &x, &h, DerivativeMethod::Localizing).unwrap();
            let fd = derivative(&f, &x, &h, DerivativeMethod::fd()).unwrap();
            assert!(rel_diff(&b, &l) < 1e-12);
            assert!(rel_diff(&b, &fd) < 1e-6);
        }
    }

    #[test]
    fn richardson_improves_fd() {
        let mut s = Sampler::new(78);
        let f = random_series(&mut s, 1, 6, false);
        let x = s.gaussian_tuple(2, 1);
        let h = s.gaussian_tuple(2, 1);
        let exact = derivative(&f, &x, &h, DerivativeMethod::Block).unwrap();
        let coarse = DerivativeMethod::FiniteDifference { step: 1e-2, richardson: false };
        let refined = DerivativeMethod::FiniteDifference { step: 1e-2, richardson: true };
        let e1 = rel_diff(&derivative(&f, &x, &h, coarse).unwrap(), &exact);
        let e2 = rel_diff(&derivative(&f, &x, &h, refined).unwrap(), &exact);
        assert!(e2 < e1 * 1e-2, "{e1} vs {e2}");
    }

    #[test]
    fn linear_in_direction_and_self_adjoint() {
        let mut s = Sampler::new(79);
        let f = random_series(&mut s, 2, 4, true);
        assert!(f.validate().is_valid());
        let x = s.hermitian_tuple(3, 2);
        let h1 = s.hermitian_tuple(3, 2);
        let h2 = s.hermitian_tuple(3, 2);
        let (a, b) = (0.7, -1.3);
        let combo = h1.scale(c64(a, 0.0)).add(&h2.scale(c64(b, 0.0))).unwrap();
        for m in [DerivativeMethod::Block, DerivativeMethod::Localizing] {
            let lhs = derivative(&f, &x, &combo, m).unwrap();
            let rhs = derivative(&f, &x, &h1, m).unwrap() * c64(a, 0.0) + derivative(&f, &x, &h2, m).unwrap() * c64(b, 0.0);
            assert!(rel_diff(&lhs, &rhs) < 1e-10);
            assert!(max_asymmetry(&lhs) < 1e-10 * (1.0 + frobenius_norm(&lhs)));
        }
    }

    #[test]
    fn zero_step_is_an_error() {
        let f = FreeSeries::univariate(&[0.0, 1.0], None).unwrap();
        let x = MatrixTuple::scalars(&[c64(1.0, 0.0)]);
        let m = DerivativeMethod::FiniteDifference { step: 1e-300, richardson: false };
        assert!(matches!(derivative(&f, &x, &x, m), Err(Error::StepUnderflow { .. })));
    }

    #[test]
    fn localizing_entries_of_cube() {
        let f = FreeSeries::univariate(&[0.0, 0.0, 0.0, 1.0], None).unwrap();
        let e = localizing_entries(&f, 1, 2);
        let pairs: Vec<(usize, usize)> = e.iter().map(|e| (e.row.len(), e.col.len())).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 1), (2, 0)]);
    }
}
