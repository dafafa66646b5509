use std::fmt;

use crate::error::{Error, Result};

/// A generator of a free group or its inverse. Generators are numbered from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        FreeLetter { generator, inverse }
    }

    pub fn gen(generator: usize) -> Self {
        FreeLetter::new(generator, false)
    }

    pub fn inv(generator: usize) -> Self {
        FreeLetter::new(generator, true)
    }

    pub fn inverted(self) -> Self {
        FreeLetter::new(self.generator, !self.inverse)
    }

    fn cancels(self, other: FreeLetter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group `F(x0, ..., x_{rank-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<FreeLetter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, generator: usize) -> Result<Self> {
        FreeWord::new(rank, vec![FreeLetter::gen(generator)])
    }

    /// Builds a word from arbitrary letters, reducing it freely.
    pub fn new(rank: usize, letters: impl IntoIterator<Item = FreeLetter>) -> Result<Self> {
        let mut word = FreeWord::identity(rank);
        for l in letters {
            if l.generator >= rank {
                return Err(Error::GeneratorOutOfRange {
                    generator: l.generator,
                    rank,
                });
            }
            word.push(l);
        }
        Ok(word)
    }

    /// Signed-integer shorthand: `k > 0` is `x_{k-1}`, `k < 0` its inverse.
    pub fn from_signed(rank: usize, letters: &[i32]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &k in letters {
            if k == 0 {
                return Err(Error::GeneratorOutOfRange {
                    generator: usize::MAX,
                    rank,
                });
            }
            out.push(FreeLetter::new(k.unsigned_abs() as usize - 1, k < 0));
        }
        FreeWord::new(rank, out)
    }

    fn push(&mut self, l: FreeLetter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum.
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| if l.inverse { -1 } else { 1 }).sum()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Concatenates and freely reduces.
    pub fn mul(&self, other: &FreeWord) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::ArityMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &FreeWord) -> Self {
        let mut out = self.clone();
        out.letters.reserve(other.letters.len());
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &FreeWord) -> Result<Self> {
        g.mul(self)?.mul(&g.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// Replaces every generator by its image and reduces.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let rank = images.first().map_or(self.rank, |w| w.rank);
        let mut out = FreeWord::identity(rank);
        for l in &self.letters {
            let image = &images[l.generator];
            if l.inverse {
                for &m in image.letters.iter().rev() {
                    out.push(m.inverted());
                }
            } else {
                for &m in &image.letters {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Whether any letter uses `generator`.
    pub fn uses(&self, generator: usize) -> bool {
        self.letters.iter().any(|l| l.generator == generator)
    }

    /// Canonical key: `rank|x0.X1...` with upper case marking inverses.
    pub fn key(&self) -> String {
        let body: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("X{}", l.generator)
                } else {
                    format!("x{}", l.generator)
                }
            })
            .collect();
        format!("{:02}|{}", self.rank, body.join("."))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (idx, l) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}
