use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored 0-based.
///
/// Permutations compose as functions: `a.compose(&b)` is `a ∘ b`, i.e. `b` is
/// applied first. A positive braid word `σ_{i1} ... σ_{ik}` has permutation
/// `s_{i1} ∘ ... ∘ s_{ik}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "at most 255 strands are supported");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// The longest permutation `k ↦ n + 1 - k`, underlying the half twist Δ.
    pub fn half_twist(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).rev().collect(),
        }
    }

    /// The transposition `(i, i+1)`, 1-based.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.swap_positions(i - 1);
        p
    }

    /// Builds a permutation from its 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &k in images {
            if k == 0 || k > n || seen[k - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[k - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&k| (k - 1) as u8).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] as usize + 1
    }

    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&k| k as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    pub fn is_half_twist(&self) -> bool {
        let n = self.images.len();
        self.images.iter().enumerate().all(|(k, &v)| v as usize == n - 1 - k)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&k| self.images[k as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v as usize] = k as u8;
        }
        Permutation { images }
    }

    /// Number of inversions; the length of the permutation braid.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for p in 0..self.images.len() {
            for q in p + 1..self.images.len() {
                if self.images[p] > self.images[q] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right multiplication by `s_{p+1}` (0-based position `p`): `self ∘ s`.
    pub(crate) fn swap_positions(&mut self, p: usize) {
        self.images.swap(p, p + 1);
    }

    /// Left multiplication by `s_{v+1}` (0-based value `v`): `s ∘ self`.
    pub(crate) fn swap_values(&mut self, v: usize) {
        let (a, b) = (v as u8, v as u8 + 1);
        for x in self.images.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }

    /// The 1-based `i` such that the permutation braid can end with `σ_i`.
    pub fn finishing_set(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1))
            .filter(|&p| self.has_right_descent(p))
            .map(|p| p + 1)
            .collect()
    }

    /// The 1-based `i` such that the permutation braid can start with `σ_i`.
    pub fn starting_set(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1))
            .filter(|&v| self.has_left_descent(v))
            .map(|v| v + 1)
            .collect()
    }

    /// `ℓ(self ∘ s_{p+1}) < ℓ(self)`: the braid ends with `σ_{p+1}`.
    pub(crate) fn has_right_descent(&self, p: usize) -> bool {
        self.images[p] > self.images[p + 1]
    }

    /// `ℓ(s_{v+1} ∘ self) < ℓ(self)`: the braid starts with `σ_{v+1}`.
    pub(crate) fn has_left_descent(&self, v: usize) -> bool {
        let pos_a = self.images.iter().position(|&x| x as usize == v);
        let pos_b = self.images.iter().position(|&x| x as usize == v + 1);
        pos_a > pos_b
    }

    /// Conjugation by the half twist: `w0 ∘ self ∘ w0`.
    pub(crate) fn flip(&self) -> Permutation {
        let n = self.images.len() as u8;
        Permutation {
            images: self.images.iter().rev().map(|&v| n - 1 - v).collect(),
        }
    }

    /// A reduced word `i1 ... ik` (1-based) with `self = s_{i1} ∘ ... ∘ s_{ik}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut rev = Vec::with_capacity(p.length());
        'outer: loop {
            for i in 0..p.images.len().saturating_sub(1) {
                if p.has_right_descent(i) {
                    p.swap_positions(i);
                    rev.push(i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// Fixed-width decimal encoding of the 1-based images.
    pub(crate) fn encode(&self) -> String {
        self.images.iter().map(|&v| format!("{:02}", v + 1)).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images_one_based())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Permutation::transposition(3, 1);
        let b = Permutation::transposition(3, 2);
        let ab = a.compose(&b);
        assert_eq!(ab.images_one_based(), vec![2, 3, 1]);
        assert!(ab.compose(&ab.inverse()).is_identity());
    }

    #[test]
    fn half_twist_flip_and_length() {
        let w0 = Permutation::half_twist(4);
        assert_eq!(w0.length(), 6);
        assert!(w0.is_half_twist());
        let s1 = Permutation::transposition(4, 1);
        assert_eq!(s1.flip(), Permutation::transposition(4, 3));
        assert_eq!(w0.compose(&s1).compose(&w0), s1.flip());
    }

    #[test]
    fn descents_match_lengths() {
        let p = Permutation::from_images(&[3, 1, 4, 2]).unwrap();
        for i in 0..3 {
            let right = p.compose(&Permutation::transposition(4, i + 1));
            assert_eq!(p.has_right_descent(i), right.length() < p.length());
            let left = Permutation::transposition(4, i + 1).compose(&p);
            assert_eq!(p.has_left_descent(i), left.length() < p.length());
        }
    }

    #[test]
    fn reduced_word_multiplies_back() {
        let p = Permutation::from_images(&[4, 2, 3, 1]).unwrap();
        let word = p.reduced_word();
        assert_eq!(word.len(), p.length());
        let back = word.iter().fold(Permutation::identity(4), |acc, &i| {
            acc.compose(&Permutation::transposition(4, i))
        });
        assert_eq!(back, p);
    }
}
