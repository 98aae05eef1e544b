//! Words in the free monoid on `d` letters, in a fixed graded-lexicographic
//! order, and their evaluation at matrix tuples.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{identity, CMat, MatrixTuple};

/// Default cap on the number of words a single enumeration may produce.
pub const DEFAULT_WORD_BUDGET: usize = 100_000;

/// A word `x_{l_1} x_{l_2} ⋯ x_{l_k}`, letters stored 1-based. The empty
/// word is the identity.
///
/// Ordering is graded: shorter words first, lexicographic within a length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// Word over `d` letters, rejecting letters outside `1..=d`.
    pub fn checked(letters: Vec<usize>, d: usize) -> Result<Self> {
        let w = Word(letters);
        w.check_alphabet(d)?;
        Ok(w)
    }

    pub fn letter(k: usize) -> Self {
        Word(vec![k])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_alphabet(&self, d: usize) -> Result<()> {
        if let Some(&bad) = self.0.iter().find(|&&l| l == 0 || l > d) {
            return Err(Error::InvalidWord {
                word: self.0.clone(),
                reason: format!("letter {bad} outside 1..={d}"),
            });
        }
        Ok(())
    }

    /// The involution `w ↦ w*`: letters reversed.
    pub fn involute(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `I* x_k J`, the index pattern of localizing matrices.
    pub fn localizing(row: &Word, k: usize, col: &Word) -> Self {
        let mut v: Vec<usize> = row.0.iter().rev().copied().collect();
        v.push(k);
        v.extend_from_slice(&col.0);
        Word(v)
    }

    /// Number of occurrences of `k`.
    pub fn count(&self, k: usize) -> usize {
        self.0.iter().filter(|&&l| l == k).count()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

pub fn involute(w: &Word) -> Word {
    w.involute()
}

/// Number of words of length at most `max_degree` over `d` letters.
pub fn word_count(d: usize, max_degree: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=max_degree {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(d)?;
    }
    Some(total)
}

/// All words of length `≤ L` in graded-lex order. Position 0 is the empty
/// word. Indices are computed arithmetically, so the order is reproducible.
#[derive(Debug, Clone)]
pub struct WordOrder {
    d: usize,
    max_degree: usize,
    words: Vec<Word>,
    offsets: Vec<usize>,
}

impl WordOrder {
    pub fn new(d: usize, max_degree: usize) -> Result<Self> {
        Self::with_budget(d, max_degree, DEFAULT_WORD_BUDGET)
    }

    pub fn with_budget(d: usize, max_degree: usize, budget: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::DimensionMismatch("alphabet size d must be >= 1".into()));
        }
        let count = word_count(d, max_degree).unwrap_or(usize::MAX);
        if count > budget {
            return Err(Error::BudgetExceeded { count, budget });
        }
        let mut words = Vec::with_capacity(count);
        let mut offsets = Vec::with_capacity(max_degree + 2);
        words.push(Word::empty());
        offsets.push(0);
        let mut prev_start = 0;
        for _ in 1..=max_degree {
            let start = words.len();
            offsets.push(start);
            for i in prev_start..start {
                for k in 1..=d {
                    let mut v = words[i].0.clone();
                    v.push(k);
                    words.push(Word(v));
                }
            }
            prev_start = start;
        }
        offsets.push(words.len());
        Ok(WordOrder {
            d,
            max_degree,
            words,
            offsets,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, idx: usize) -> &Word {
        &self.words[idx]
    }

    /// Position of `w`, or `None` if it is too long or uses other letters.
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        if w.len() > self.max_degree || w.check_alphabet(self.d).is_err() {
            return None;
        }
        let within = w.0.iter().fold(0usize, |acc, &l| acc * self.d + (l - 1));
        Some(self.offsets[w.len()] + within)
    }
}

pub fn enumerate_words(d: usize, max_degree: usize) -> Result<WordOrder> {
    WordOrder::new(d, max_degree)
}

fn check_tuple(x: &MatrixTuple, w: &Word) -> Result<()> {
    w.check_alphabet(x.d()).map_err(|_| Error::AlphabetMismatch {
        expected: x.d(),
        found: w.letters().iter().copied().max().unwrap_or(0),
    })
}

/// `X^w`, with `X^e = I` and `X^{x_k w} = X_k X^w`.
pub fn eval_word(x: &MatrixTuple, w: &Word) -> Result<CMat> {
    check_tuple(x, w)?;
    let mut acc = identity(x.n());
    for &l in w.letters().iter().rev() {
        acc = x.get(l - 1) * acc;
    }
    Ok(acc)
}

/// Memoized monomial values at a fixed tuple. Each `X^w` is built as
/// `X_{w_1} · X^{w_2⋯w_k}`, reusing cached suffixes.
pub struct MonomialCache<'a> {
    x: &'a MatrixTuple,
    cache: HashMap<Vec<usize>, CMat>,
}

impl<'a> MonomialCache<'a> {
    pub fn new(x: &'a MatrixTuple) -> Self {
        MonomialCache {
            x,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, w: &Word) -> Result<&CMat> {
        check_tuple(self.x, w)?;
        self.fill(w.letters());
        Ok(&self.cache[w.letters()])
    }

    fn fill(&mut self, letters: &[usize]) {
        if self.cache.contains_key(letters) {
            return;
        }
        let value = match letters.split_first() {
            None => identity(self.x.n()),
            Some((&head, tail)) => {
                self.fill(tail);
                self.x.get(head - 1) * &self.cache[tail]
            }
        };
        self.cache.insert(letters.to_vec(), value);
    }
}

/// All monomials over a word order, indexed by position.
pub fn monomials(x: &MatrixTuple, order: &WordOrder) -> Result<Vec<CMat>> {
    if x.d() != order.d() {
        return Err(Error::AlphabetMismatch {
            expected: order.d(),
            found: x.d(),
        });
    }
    let d = order.d();
    let mut out: Vec<CMat> = Vec::with_capacity(order.len());
    out.push(identity(x.n()));
    // Word at position p > 0 in layer ℓ is (parent word of length ℓ-1) + letter;
    // building X^w = X^{parent} X_k walks the same arithmetic layout.
    for p in 1..order.len() {
        let parent = (p - 1) / d;
        let letter = (p - 1) % d;
        let value = &out[parent] * x.get(letter);
        out.push(value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{c64, direct_sum, frobenius_norm, Sampler};

    fn w(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn enumeration_counts() {
        let o = enumerate_words(1, 3).unwrap();
        assert_eq!(o.words(), &[w(&[]), w(&[1]), w(&[1, 1]), w(&[1, 1, 1])]);
        let o = enumerate_words(2, 2).unwrap();
        assert_eq!(o.len(), 7);
        assert_eq!(o.words()[3..], [w(&[1, 1]), w(&[1, 2]), w(&[2, 1]), w(&[2, 2])]);
        let o = enumerate_words(3, 0).unwrap();
        assert_eq!(o.words(), &[Word::empty()]);
        for d in 2..5 {
            for l in 0..5 {
                let o = enumerate_words(d, l).unwrap();
                assert_eq!(o.len(), (d.pow(l as u32 + 1) - 1) / (d - 1));
            }
        }
    }

    #[test]
    fn index_matches_position() {
        let o = enumerate_words(3, 4).unwrap();
        for (i, word) in o.words().iter().enumerate() {
            assert_eq!(o.index_of(word), Some(i));
        }
        assert_eq!(o.index_of(&w(&[1, 1, 1, 1, 1])), None);
        assert_eq!(o.index_of(&w(&[4])), None);
        let mut sorted = o.words().to_vec();
        sorted.sort();
        assert_eq!(sorted, o.words());
    }

    #[test]
    fn budget_exceeded_names_count() {
        match WordOrder::with_budget(2, 10, 1000) {
            Err(Error::BudgetExceeded { count, budget }) => {
                assert_eq!(count, 2047);
                assert_eq!(budget, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn involution() {
        assert_eq!(w(&[1, 2]).involute(), w(&[2, 1]));
        assert_eq!(Word::empty().involute(), Word::empty());
        assert_eq!(w(&[1, 2, 3]).involute(), w(&[3, 2, 1]));
        assert_eq!(w(&[1, 2, 3]).involute().involute(), w(&[1, 2, 3]));
    }

    #[test]
    fn eval_word_examples() {
        let mut s = Sampler::new(1);
        let x = s.gaussian_tuple(3, 2);
        let got = eval_word(&x, &w(&[1, 2, 1])).unwrap();
        let expect = x.get(0) * x.get(1) * x.get(0);
        assert!(frobenius_norm(&(got - expect)) < 1e-14);
        assert_eq!(eval_word(&x, &Word::empty()).unwrap(), identity(3));
        let half = MatrixTuple::scalars(&[c64(0.5, 0.0)]);
        assert!((eval_word(&half, &w(&[1, 1])).unwrap()[(0, 0)] - c64(0.25, 0.0)).norm() < 1e-16);
        assert!(matches!(eval_word(&half, &w(&[2])), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn monomials_and_cache_agree_with_direct_evaluation() {
        let mut s = Sampler::new(2);
        let x = s.gaussian_tuple(2, 3);
        let o = enumerate_words(3, 3).unwrap();
        let ms = monomials(&x, &o).unwrap();
        let mut cache = MonomialCache::new(&x);
        for (i, word) in o.words().iter().enumerate() {
            let direct = eval_word(&x, word).unwrap();
            assert!(frobenius_norm(&(&ms[i] - &direct)) < 1e-13);
            assert!(frobenius_norm(&(cache.get(word).unwrap() - &direct)) < 1e-13);
        }
    }

    #[test]
    fn adjoint_reverses_word() {
        let mut s = Sampler::new(3);
        let x = s.gaussian_tuple(3, 2);
        let word = w(&[1, 2, 2, 1, 2]);
        let lhs = eval_word(&x, &word).unwrap().adjoint();
        let rhs = eval_word(&x.adjoint(), &word.involute()).unwrap();
        assert!(frobenius_norm(&(lhs - rhs)) < 1e-13);
        // direct sums and unitary similarity
        let y = s.gaussian_tuple(2, 2);
        let sum = eval_word(&direct_sum(&x, &y).unwrap(), &word).unwrap();
        let blocks = crate::matcore::block_diag(&[&eval_word(&x, &word).unwrap(), &eval_word(&y, &word).unwrap()]);
        assert!(frobenius_norm(&(sum - blocks)) < 1e-13);
        let u = s.haar_unitary(3);
        let lhs = eval_word(&x.unitary_conjugate(&u).unwrap(), &word).unwrap();
        let rhs = u.adjoint() * eval_word(&x, &word).unwrap() * &u;
        assert!(frobenius_norm(&(lhs - rhs)) < 1e-12);
    }
}
