use std::fmt;

use crate::error::{Error, Result};

/// A letter of `Ĝ`: `x^{±1}` or `x̂^{±1}` for a generator `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HatLetter {
    Plain { generator: usize, inverse: bool },
    Hat { generator: usize, inverse: bool },
}

impl HatLetter {
    fn generator(self) -> usize {
        match self {
            HatLetter::Plain { generator, .. } | HatLetter::Hat { generator, .. } => generator,
        }
    }
}

/// One syllable `x̂^p x^q` of `G_x = Z × Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HatBlock {
    pub generator: usize,
    pub hat_exp: i64,
    pub plain_exp: i64,
}

/// An element of `Ĝ = ∗_x G_x` in normal form: no `(0, 0)` syllable and no two
/// consecutive syllables on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HatWord {
    rank: usize,
    blocks: Vec<HatBlock>,
}

impl HatWord {
    pub fn identity(rank: usize) -> Self {
        HatWord {
            rank,
            blocks: Vec::new(),
        }
    }

    /// Builds the normal form of a product of syllables.
    pub fn from_blocks(rank: usize, blocks: impl IntoIterator<Item = HatBlock>) -> Result<Self> {
        let mut out = HatWord::identity(rank);
        for b in blocks {
            if b.generator >= rank {
                return Err(Error::GeneratorOutOfRange {
                    generator: b.generator,
                    rank,
                });
            }
            out.push(b);
        }
        Ok(out)
    }

    fn push(&mut self, b: HatBlock) {
        if b.hat_exp == 0 && b.plain_exp == 0 {
            return;
        }
        match self.blocks.last_mut() {
            Some(last) if last.generator == b.generator => {
                last.hat_exp += b.hat_exp;
                last.plain_exp += b.plain_exp;
                if last.hat_exp == 0 && last.plain_exp == 0 {
                    self.blocks.pop();
                }
            }
            _ => self.blocks.push(b),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> &[HatBlock] {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn mul(&self, other: &HatWord) -> Result<HatWord> {
        if self.rank != other.rank {
            return Err(Error::ArityMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = self.clone();
        for &b in &other.blocks {
            out.push(b);
        }
        Ok(out)
    }

    /// Whether the word lies in the submonoid `SG` (no `x̂^{-1}`).
    pub fn is_in_sg(&self) -> bool {
        self.blocks.iter().all(|b| b.hat_exp >= 0)
    }
}

/// Normal form of a raw letter sequence: letters inside one `G_x` commute,
/// trivial syllables vanish and equal neighbours merge.
pub fn hat_normal_form(rank: usize, letters: &[HatLetter]) -> Result<HatWord> {
    let blocks = letters.iter().map(|&l| {
        let sign = |inverse: bool| if inverse { -1 } else { 1 };
        match l {
            HatLetter::Plain { generator, inverse } => HatBlock {
                generator,
                hat_exp: 0,
                plain_exp: sign(inverse),
            },
            HatLetter::Hat { generator, inverse } => HatBlock {
                generator,
                hat_exp: sign(inverse),
                plain_exp: 0,
            },
        }
    });
    if let Some(bad) = letters.iter().find(|l| l.generator() >= rank) {
        return Err(Error::GeneratorOutOfRange {
            generator: bad.generator(),
            rank,
        });
    }
    HatWord::from_blocks(rank, blocks)
}

impl fmt::Display for HatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        for (idx, b) in self.blocks.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "(x{}: {}, {})", b.generator, b.hat_exp, b.plain_exp)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(g: usize, inv: bool) -> HatLetter {
        HatLetter::Plain {
            generator: g,
            inverse: inv,
        }
    }

    fn hat(g: usize, inv: bool) -> HatLetter {
        HatLetter::Hat {
            generator: g,
            inverse: inv,
        }
    }

    fn block(generator: usize, hat_exp: i64, plain_exp: i64) -> HatBlock {
        HatBlock {
            generator,
            hat_exp,
            plain_exp,
        }
    }

    #[test]
    fn abelian_block_merge() {
        let h = hat_normal_form(1, &[hat(0, false), plain(0, false), plain(0, false), plain(0, false)]).unwrap();
        assert_eq!(h.blocks(), &[block(0, 1, 3)]);
    }

    #[test]
    fn cancellation() {
        let h = hat_normal_form(1, &[hat(0, false), hat(0, true)]).unwrap();
        assert!(h.is_identity());
    }

    #[test]
    fn distinct_neighbours_stay_apart() {
        let h = hat_normal_form(2, &[hat(0, false), hat(1, false), hat(0, false)]).unwrap();
        assert_eq!(h.blocks(), &[block(0, 1, 0), block(1, 1, 0), block(0, 1, 0)]);
    }

    #[test]
    fn newly_adjacent_blocks_merge() {
        let h = hat_normal_form(2, &[hat(0, false), plain(1, false), plain(1, true), plain(0, false)]).unwrap();
        assert_eq!(h.blocks(), &[block(0, 1, 1)]);
    }

    #[test]
    fn range_checked() {
        assert!(hat_normal_form(1, &[hat(1, false)]).is_err());
    }
}
