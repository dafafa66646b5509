use std::fmt;

use crate::braid::Permutation;
use crate::error::{Error, Result};

/// An Artin generator `σ_i` or its inverse; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub fn neg(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// A word in the Artin generators of `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= n) {
            return Err(Error::IndexOutOfRange { index: l.index, n });
        }
        Ok(BraidWord { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// `k > 0` stands for `σ_k`, `k < 0` for `σ_{|k|}^{-1}`.
    pub fn from_signed(n: usize, letters: &[i32]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&k| {
                if k > 0 {
                    Letter::pos(k as usize)
                } else {
                    Letter::neg(k.unsigned_abs() as usize)
                }
            })
            .collect();
        BraidWord::new(n, letters)
    }

    pub fn generator(n: usize, index: usize) -> Result<Self> {
        BraidWord::new(n, vec![Letter::pos(index)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Concatenation of several words of the same strand count.
    pub fn product<'a>(n: usize, words: impl IntoIterator<Item = &'a BraidWord>) -> Result<Self> {
        words
            .into_iter()
            .try_fold(BraidWord::identity(n), |acc, w| acc.concat(w))
    }

    /// Reversed word with every sign flipped.
    pub fn inverse(&self) -> Self {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// `by · self · by^{-1}`.
    pub fn conjugate_by(&self, by: &BraidWord) -> Result<Self> {
        by.concat(self)?.concat(&by.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    /// Exponent sum; the homomorphism `deg: B_n -> Z` with `deg(σ_i) = 1`.
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Image in `Sym_n` under `σ_i ↦ (i, i+1)`, as the composite
    /// `θ(l_1) ∘ θ(l_2) ∘ ... ∘ θ(l_k)` of functions on positions.
    pub fn theta(&self) -> Permutation {
        let mut p = Permutation::identity(self.n);
        for l in &self.letters {
            p.swap_positions(l.index - 1);
        }
        p
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, l) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", l.index)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}
