//! Garside left normal form.
//!
//! Every braid is written uniquely as `Δ^inf · A_1 ··· A_m` where each `A_k` is a
//! permutation braid other than `1` and `Δ`, and every pair `(A_k, A_{k+1})` is
//! left-weighted: the starting set of `A_{k+1}` lies inside the finishing set of
//! `A_k`. Permutation braids are carried by their permutations.

use std::fmt;
use std::str::FromStr;

use crate::braid::{BraidWord, Letter, Permutation};
use crate::error::{Error, Result};

/// A braid in Garside left normal form. Record equality is group equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalBraid {
    n: usize,
    inf: i64,
    factors: Vec<Permutation>,
}

enum Piece {
    Delta(i64),
    Simple(Permutation),
}

impl CanonicalBraid {
    pub fn identity(n: usize) -> Self {
        CanonicalBraid {
            n,
            inf: 0,
            factors: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// The left normal form of the element represented by `w`.
    pub fn from_word(w: &BraidWord) -> Self {
        let n = w.n();
        let mut pieces = Vec::with_capacity(2 * w.len());
        for l in w.letters() {
            let s = Permutation::transposition(n, l.index);
            if l.inverse {
                // σ_i^{-1} = Δ^{-1} · (Δ σ_i^{-1})
                pieces.push(Piece::Delta(-1));
                pieces.push(Piece::Simple(Permutation::half_twist(n).compose(&s)));
            } else {
                pieces.push(Piece::Simple(s));
            }
        }
        assemble(n, pieces)
    }

    pub fn mul(&self, other: &CanonicalBraid) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &CanonicalBraid) -> Self {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        // Δ^k A · Δ^l B = Δ^{k+l} τ^l(A) B
        let twist = other.inf.rem_euclid(2) == 1;
        let mut factors: Vec<Permutation> = self
            .factors
            .iter()
            .map(|a| if twist { a.flip() } else { a.clone() })
            .collect();
        factors.extend(other.factors.iter().cloned());
        normalize(self.n, self.inf + other.inf, factors)
    }

    pub fn inverse(&self) -> Self {
        // (Δ^k A_1 ··· A_m)^{-1} = A_m^{-1} ··· A_1^{-1} Δ^{-k}, with
        // A^{-1} = Δ^{-1} · (Δ A^{-1}).
        let w0 = Permutation::half_twist(self.n);
        let mut pieces = Vec::with_capacity(2 * self.factors.len() + 1);
        for a in self.factors.iter().rev() {
            pieces.push(Piece::Delta(-1));
            pieces.push(Piece::Simple(w0.compose(&a.inverse())));
        }
        pieces.push(Piece::Delta(-self.inf));
        assemble(self.n, pieces)
    }

    /// `by · self · by^{-1}`.
    pub fn conjugate_by(&self, by: &CanonicalBraid) -> Result<Self> {
        by.mul(self)?.mul(&by.inverse())
    }

    /// Exponent sum; well defined on the group element.
    pub fn degree(&self) -> i64 {
        let delta_len = (self.n * self.n.saturating_sub(1) / 2) as i64;
        self.inf * delta_len + self.factors.iter().map(|p| p.length() as i64).sum::<i64>()
    }

    /// Image in `Sym_n`, with the same composition convention as [`BraidWord::theta`].
    pub fn permutation(&self) -> Permutation {
        let mut p = if self.inf.rem_euclid(2) == 1 {
            Permutation::half_twist(self.n)
        } else {
            Permutation::identity(self.n)
        };
        for f in &self.factors {
            p = p.compose(f);
        }
        p
    }

    /// A word representing this braid: `Δ^inf` followed by a reduced word of each factor.
    pub fn to_word(&self) -> BraidWord {
        let delta: Vec<usize> = Permutation::half_twist(self.n).reduced_word();
        let mut letters = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend(delta.iter().map(|&i| Letter::pos(i)));
            }
        } else {
            for _ in 0..-self.inf {
                letters.extend(delta.iter().rev().map(|&i| Letter::neg(i)));
            }
        }
        for f in &self.factors {
            letters.extend(f.reduced_word().into_iter().map(Letter::pos));
        }
        BraidWord::new(self.n, letters).expect("normal form letters are in range")
    }

    /// Canonical key `nn|±iiiiii|p1|p2|...` with fixed-width decimal fields.
    pub fn key(&self) -> String {
        let mut key = format!("{:02}|{:+07}", self.n, self.inf);
        for f in &self.factors {
            key.push('|');
            key.push_str(&f.encode());
        }
        key
    }

    /// Parses a key produced by [`CanonicalBraid::key`], checking every normal form invariant.
    pub fn from_key(key: &str) -> Result<Self> {
        let bad = || Error::MalformedKey(key.to_string());
        let mut fields = key.split('|');
        let n: usize = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let inf_field = fields.next().ok_or_else(bad)?;
        if !inf_field.starts_with(['+', '-']) {
            return Err(bad());
        }
        let inf: i64 = inf_field.parse().map_err(|_| bad())?;
        let mut factors = Vec::new();
        for field in fields {
            if field.len() != 2 * n || !field.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let images: Vec<usize> = (0..n).map(|k| field[2 * k..2 * k + 2].parse().unwrap()).collect();
            factors.push(Permutation::from_images(&images).map_err(|_| bad())?);
        }
        let candidate = CanonicalBraid { n, inf, factors };
        if !candidate.is_left_normal() || candidate.key() != key {
            return Err(bad());
        }
        Ok(candidate)
    }

    fn is_left_normal(&self) -> bool {
        if self.factors.iter().any(|f| f.n() != self.n) {
            return false;
        }
        if self.n <= 1 {
            return self.inf == 0 && self.factors.is_empty();
        }
        if self.factors.iter().any(|f| f.is_identity() || f.is_half_twist()) {
            return false;
        }
        self.factors
            .windows(2)
            .all(|pair| starting_within_finishing(&pair[0], &pair[1]))
    }
}

fn starting_within_finishing(a: &Permutation, b: &Permutation) -> bool {
    (0..a.n().saturating_sub(1)).all(|i| !b.has_left_descent(i) || a.has_right_descent(i))
}

/// Moves every power of Δ to the front, twisting the simple factors it passes.
fn assemble(n: usize, pieces: Vec<Piece>) -> CanonicalBraid {
    if n <= 1 {
        return CanonicalBraid::identity(n);
    }
    let mut shift = 0i64;
    let mut simples = Vec::with_capacity(pieces.len());
    for piece in pieces.into_iter().rev() {
        match piece {
            Piece::Delta(k) => shift += k,
            Piece::Simple(p) => simples.push(if shift.rem_euclid(2) == 1 { p.flip() } else { p }),
        }
    }
    simples.reverse();
    normalize(n, shift, simples)
}

/// Turns `Δ^inf · f_1 ··· f_m` (arbitrary permutation braids) into left normal form.
fn normalize(n: usize, mut inf: i64, mut factors: Vec<Permutation>) -> CanonicalBraid {
    if n <= 1 {
        return CanonicalBraid::identity(n);
    }
    loop {
        // drop trivial factors and pull every Δ factor to the front
        let mut cleaned = Vec::with_capacity(factors.len());
        let mut twist = false;
        for p in factors.into_iter().rev() {
            if p.is_identity() {
                continue;
            }
            if p.is_half_twist() {
                inf += 1;
                twist = !twist;
                continue;
            }
            cleaned.push(if twist { p.flip() } else { p });
        }
        cleaned.reverse();
        factors = cleaned;

        let mut changed = false;
        for j in (1..factors.len()).rev() {
            let (left, right) = factors.split_at_mut(j);
            changed |= left_weight(&mut left[j - 1], &mut right[0]);
        }
        if !changed {
            return CanonicalBraid { n, inf, factors };
        }
    }
}

/// Moves crossings from the head of `b` to the tail of `a` until the pair is
/// left-weighted. Returns whether anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let mut changed = false;
    'scan: loop {
        for i in 0..a.n() - 1 {
            if b.has_left_descent(i) && !a.has_right_descent(i) {
                a.swap_positions(i);
                b.swap_values(i);
                changed = true;
                continue 'scan;
            }
        }
        return changed;
    }
}

impl fmt::Display for CanonicalBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl fmt::Debug for CanonicalBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalBraid({})", self.key())
    }
}

impl FromStr for CanonicalBraid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CanonicalBraid::from_key(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(n: usize, w: &[i32]) -> CanonicalBraid {
        CanonicalBraid::from_word(&BraidWord::from_signed(n, w).unwrap())
    }

    #[test]
    fn braid_relation_gives_identical_forms() {
        assert_eq!(nf(3, &[1, 2, 1]), nf(3, &[2, 1, 2]));
        assert_eq!(nf(3, &[1, 2, 1]).inf(), 1);
        assert!(nf(3, &[1, 2, 1]).factors().is_empty());
    }

    #[test]
    fn empty_word_is_identity() {
        let id = nf(3, &[]);
        assert_eq!(id.inf(), 0);
        assert!(id.factors().is_empty());
    }

    #[test]
    fn inverse_generator_form() {
        let b = nf(3, &[-1]);
        assert_eq!(b.inf(), -1);
        assert_eq!(b.factors().len(), 1);
        // the permutation braid of σ1σ2
        assert_eq!(b.factors()[0], BraidWord::from_signed(3, &[1, 2]).unwrap().theta());
        assert_eq!(b.key(), "03|-000001|020301");
    }

    #[test]
    fn cancellation() {
        assert!(nf(4, &[1, -1, 3, 2, -2, -3]).is_identity());
    }

    #[test]
    fn degenerate_strand_counts() {
        assert!(nf(1, &[]).is_identity());
        let b = nf(2, &[1, 1, -1, 1]);
        assert_eq!(b.inf(), 2);
        assert!(b.factors().is_empty());
        assert_eq!(nf(2, &[-1, -1]).inf(), -2);
    }

    #[test]
    fn key_round_trip() {
        let b = nf(4, &[1, -2, 3, 3, -1, 2]);
        assert_eq!(CanonicalBraid::from_key(&b.key()).unwrap(), b);
        assert!(CanonicalBraid::from_key("03|+000000|010203").is_err());
        assert!(CanonicalBraid::from_key("03|+000000|0203").is_err());
        assert!(CanonicalBraid::from_key("garbage").is_err());
    }

    #[test]
    fn product_and_inverse() {
        let a = nf(4, &[1, -2, 3]);
        let b = nf(4, &[-3, 2, 2, 1]);
        let ab = nf(4, &[1, -2, 3, -3, 2, 2, 1]);
        assert_eq!(a.mul(&b).unwrap(), ab);
        assert!(a.mul(&a.inverse()).unwrap().is_identity());
        assert!(a.mul(&nf(3, &[])).is_err());
    }

    #[test]
    fn degree_and_permutation_survive_normalization() {
        let w = BraidWord::from_signed(4, &[1, -2, 3, -1, -1, 2]).unwrap();
        let b = CanonicalBraid::from_word(&w);
        assert_eq!(b.degree(), w.degree());
        assert_eq!(b.permutation(), w.theta());
    }
}
