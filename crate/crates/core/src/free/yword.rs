use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::{FreeLetter, FreeWord, HatWord};
use crate::ring::RingElement;

type FreeRing = RingElement<FreeWord>;

/// A conjugate `g x g^{-1}` of a generator, with `g` not ending in `x^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YLetter {
    conjugator: FreeWord,
    generator: usize,
}

impl YLetter {
    /// Normalizes the conjugator by stripping trailing powers of `x`.
    pub fn new(conjugator: FreeWord, generator: usize) -> Result<Self> {
        if generator >= conjugator.rank() {
            return Err(Error::GeneratorOutOfRange {
                generator,
                rank: conjugator.rank(),
            });
        }
        let keep = conjugator
            .letters()
            .iter()
            .rposition(|l| l.generator != generator)
            .map_or(0, |p| p + 1);
        let conjugator = FreeWord::new(conjugator.rank(), conjugator.letters()[..keep].iter().copied())?;
        Ok(YLetter { conjugator, generator })
    }

    pub fn conjugator(&self) -> &FreeWord {
        &self.conjugator
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    /// The group element `g x g^{-1}`.
    pub fn element(&self) -> FreeWord {
        let rank = self.conjugator.rank();
        let x = FreeWord::new(rank, [FreeLetter::gen(self.generator)]).unwrap();
        x.conjugate_by(&self.conjugator).unwrap()
    }
}

/// An element of the free monoid `F^+(Y)` on the conjugates of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YWord {
    rank: usize,
    factors: Vec<YLetter>,
}

impl YWord {
    pub fn new(rank: usize, factors: Vec<YLetter>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.conjugator.rank() != rank) {
            return Err(Error::ArityMismatch {
                left: rank,
                right: f.conjugator.rank(),
            });
        }
        Ok(YWord { rank, factors })
    }

    pub fn empty(rank: usize) -> Self {
        YWord {
            rank,
            factors: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[YLetter] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, y) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}; x{})", y.conjugator, y.generator)?;
        }
        write!(f, "]")
    }
}

/// `∏ (g x g^{-1} - 1)` in `Z[F(X)]`.
pub fn nu_free(w: &YWord) -> Result<FreeRing> {
    let mut acc = FreeRing::one(w.rank);
    for y in &w.factors {
        let factor = FreeRing::from_terms(w.rank, [(y.element(), 1), (FreeWord::identity(w.rank), -1)])?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Splits an element of `SG` (no `x̂^{-1}`) as `(Y-part, free part)`:
/// each `x̂` seen after the prefix `g` contributes the factor `g x g^{-1}`.
pub fn split_sg(h: &HatWord) -> Result<(YWord, FreeWord)> {
    if !h.is_in_sg() {
        return Err(Error::Precondition("word uses an inverse hatted letter".into()));
    }
    let rank = h.rank();
    let mut g = FreeWord::identity(rank);
    let mut factors = Vec::new();
    for b in h.blocks() {
        let x = FreeWord::generator(rank, b.generator)?;
        // x̂ and x commute, so the hats of a syllable all see the same prefix
        for _ in 0..b.hat_exp {
            factors.push(YLetter::new(g.clone(), b.generator)?);
        }
        g = g.mul(&x.pow(b.plain_exp))?;
    }
    Ok((YWord { rank, factors }, g))
}

/// Injectivity report for an enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct InjectivityReport {
    pub checked: u64,
    pub collisions: Vec<String>,
    pub elapsed_ms: u128,
}

fn reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::identity(rank)];
    let mut frontier = vec![FreeWord::identity(rank)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank {
                for inverse in [false, true] {
                    let l = FreeLetter::new(g, inverse);
                    if w.letters().last() == Some(&l.inverted()) {
                        continue;
                    }
                    let mut letters = w.letters().to_vec();
                    letters.push(l);
                    next.push(FreeWord::new(rank, letters).unwrap());
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every `Y` letter with conjugator length at most `max_conj_len`.
pub fn y_alphabet(rank: usize, max_conj_len: usize) -> Vec<YLetter> {
    let mut out = Vec::new();
    for g in reduced_words(rank, max_conj_len) {
        for x in 0..rank {
            if g.letters().last().is_some_and(|l| l.generator == x) {
                continue;
            }
            out.push(YLetter::new(g.clone(), x).unwrap());
        }
    }
    out
}

/// Enumerates every `YWord` within the bounds and reports distinct words with equal images.
pub fn verify_prop41_desk(rank: usize, max_conj_len: usize, max_word_len: usize) -> Result<InjectivityReport> {
    const LIMIT: u64 = 100_000;
    let start = Instant::now();
    let alphabet = y_alphabet(rank, max_conj_len);
    let a = alphabet.len() as u64;
    let mut count: u64 = 0;
    let mut layer: u64 = 1;
    for _ in 0..=max_word_len {
        count = count.saturating_add(layer);
        layer = layer.saturating_mul(a);
    }
    if count > LIMIT {
        return Err(Error::BudgetExceeded { count, limit: LIMIT });
    }

    let mut seen: HashMap<Vec<(String, i64)>, YWord> = HashMap::new();
    let mut collisions = Vec::new();
    let mut frontier = vec![YWord::empty(rank)];
    let mut checked = 0u64;
    for len in 0..=max_word_len {
        for w in &frontier {
            let image = nu_free(w)?.sorted_terms();
            checked += 1;
            if let Some(prev) = seen.get(&image) {
                collisions.push(format!("{prev} and {w}"));
            } else {
                seen.insert(image, w.clone());
            }
        }
        if len == max_word_len {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |y| {
                    let mut factors = w.factors.clone();
                    factors.push(y.clone());
                    YWord { rank, factors }
                })
            })
            .collect();
    }
    Ok(InjectivityReport {
        checked,
        collisions,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{hat_normal_form, HatLetter};

    fn fw(rank: usize, letters: &[i32]) -> FreeWord {
        FreeWord::from_signed(rank, letters).unwrap()
    }

    fn ring(rank: usize, terms: &[(&[i32], i64)]) -> FreeRing {
        FreeRing::from_terms(rank, terms.iter().map(|(w, c)| (fw(rank, w), *c))).unwrap()
    }

    #[test]
    fn conjugator_is_normalized() {
        let y = YLetter::new(fw(2, &[2, 1, 1]), 0).unwrap();
        assert_eq!(y.conjugator(), &fw(2, &[2]));
        assert_eq!(y.element(), fw(2, &[2, 1, -2]));
    }

    #[test]
    fn nu_examples() {
        let x = YWord::new(1, vec![YLetter::new(FreeWord::identity(1), 0).unwrap()]).unwrap();
        assert_eq!(nu_free(&x).unwrap(), ring(1, &[(&[1], 1), (&[], -1)]));
        assert_eq!(nu_free(&YWord::empty(2)).unwrap(), FreeRing::one(2));

        // [(y, x), (1, x)] -> yxy^{-1}x - yxy^{-1} - x + 1
        let w = YWord::new(
            2,
            vec![
                YLetter::new(fw(2, &[2]), 0).unwrap(),
                YLetter::new(FreeWord::identity(2), 0).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            nu_free(&w).unwrap(),
            ring(2, &[(&[2, 1, -2, 1], 1), (&[2, 1, -2], -1), (&[1], -1), (&[], 1)])
        );
    }

    #[test]
    fn sg_split_matches_expansion() {
        let letters = [
            HatLetter::Plain {
                generator: 1,
                inverse: false,
            },
            HatLetter::Hat {
                generator: 0,
                inverse: false,
            },
            HatLetter::Plain {
                generator: 0,
                inverse: true,
            },
            HatLetter::Hat {
                generator: 1,
                inverse: false,
            },
        ];
        let h = hat_normal_form(2, &letters).unwrap();
        let (y, g) = split_sg(&h).unwrap();
        assert_eq!(y.len(), 2);
        assert_eq!(g, fw(2, &[2, -1]));
        let direct = crate::free::magnus_expand(&h, 8).unwrap().to_ring().unwrap();
        assert_eq!(nu_free(&y).unwrap().mul_element(&g).unwrap(), direct);
    }

    #[test]
    fn rank_one_enumeration() {
        let report = verify_prop41_desk(1, 0, 2).unwrap();
        assert_eq!(report.checked, 3);
        assert!(report.collisions.is_empty());
    }

    #[test]
    fn small_enumerations_are_injective() {
        let report = verify_prop41_desk(2, 1, 1).unwrap();
        assert_eq!(report.checked, 7);
        assert!(report.collisions.is_empty());
        assert_eq!(verify_prop41_desk(0, 3, 0).unwrap().checked, 1);
        assert_eq!(verify_prop41_desk(2, 2, 0).unwrap().checked, 1);
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(verify_prop41_desk(3, 3, 4), Err(Error::BudgetExceeded { .. })));
    }
}
