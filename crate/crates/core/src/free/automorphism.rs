use crate::error::{Error, Result};
use crate::free::{FreeLetter, FreeWord};

/// An automorphism of `F(X)` fixing a distinguished generator `x0` and leaving
/// the subgroup generated by the other generators invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAutomorphismSpec {
    rank: usize,
    fixed: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeAutomorphismSpec {
    /// Validates that `images` and `inverse_images` are mutually inverse, fix
    /// `x_fixed`, and avoid `x_fixed` on every other generator.
    pub fn new(rank: usize, fixed: usize, images: Vec<FreeWord>, inverse_images: Vec<FreeWord>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidAutomorphism(msg));
        if fixed >= rank {
            return Err(Error::GeneratorOutOfRange { generator: fixed, rank });
        }
        if images.len() != rank || inverse_images.len() != rank {
            return invalid(format!("expected {rank} images"));
        }
        if images.iter().chain(&inverse_images).any(|w| w.rank() != rank) {
            return invalid("image of the wrong rank".into());
        }
        let x0 = FreeWord::generator(rank, fixed)?;
        if images[fixed] != x0 || inverse_images[fixed] != x0 {
            return invalid(format!("x{fixed} is not fixed"));
        }
        for g in (0..rank).filter(|&g| g != fixed) {
            if images[g].uses(fixed) || inverse_images[g].uses(fixed) {
                return invalid(format!("image of x{g} leaves the complementary subgroup"));
            }
        }
        for g in 0..rank {
            let x = FreeWord::generator(rank, g)?;
            if images[g].substitute(&inverse_images) != x || inverse_images[g].substitute(&images) != x {
                return invalid(format!("inverse images do not invert x{g}"));
            }
        }
        Ok(FreeAutomorphismSpec {
            rank,
            fixed,
            images,
            inverse_images,
        })
    }

    pub fn identity(rank: usize, fixed: usize) -> Result<Self> {
        let images: Vec<FreeWord> = (0..rank).map(|g| FreeWord::generator(rank, g)).collect::<Result<_>>()?;
        FreeAutomorphismSpec::new(rank, fixed, images.clone(), images)
    }

    /// Exchanges two generators different from `x0`.
    pub fn swap(rank: usize, fixed: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<FreeWord> = (0..rank).map(|g| FreeWord::generator(rank, g)).collect::<Result<_>>()?;
        if a >= rank || b >= rank {
            return Err(Error::GeneratorOutOfRange {
                generator: a.max(b),
                rank,
            });
        }
        images.swap(a, b);
        FreeAutomorphismSpec::new(rank, fixed, images.clone(), images)
    }

    /// The Nielsen move `x_a ↦ x_a x_b^{±1}`.
    pub fn transvection(rank: usize, fixed: usize, a: usize, b: usize, inverse: bool) -> Result<Self> {
        let mut images: Vec<FreeWord> = (0..rank).map(|g| FreeWord::generator(rank, g)).collect::<Result<_>>()?;
        let mut inverse_images = images.clone();
        if a == b {
            return Err(Error::InvalidAutomorphism("transvection needs a != b".into()));
        }
        images[a] = FreeWord::new(rank, [FreeLetter::gen(a), FreeLetter::new(b, inverse)])?;
        inverse_images[a] = FreeWord::new(rank, [FreeLetter::gen(a), FreeLetter::new(b, !inverse)])?;
        FreeAutomorphismSpec::new(rank, fixed, images, inverse_images)
    }

    /// `x_a ↦ x_a^{-1}`.
    pub fn inversion(rank: usize, fixed: usize, a: usize) -> Result<Self> {
        let mut images: Vec<FreeWord> = (0..rank).map(|g| FreeWord::generator(rank, g)).collect::<Result<_>>()?;
        images[a] = images[a].inverse();
        FreeAutomorphismSpec::new(rank, fixed, images.clone(), images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeAutomorphismSpec) -> Result<Self> {
        if self.rank != other.rank || self.fixed != other.fixed {
            return Err(Error::InvalidAutomorphism("incompatible automorphisms".into()));
        }
        let images = other.images.iter().map(|w| w.substitute(&self.images)).collect();
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| w.substitute(&other.inverse_images))
            .collect();
        FreeAutomorphismSpec::new(self.rank, self.fixed, images, inverse_images)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn fixed(&self) -> usize {
        self.fixed
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.rank() != self.rank {
            return Err(Error::ArityMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        Ok(w.substitute(&self.images))
    }
}

pub fn apply_automorphism(rho: &FreeAutomorphismSpec, w: &FreeWord) -> Result<FreeWord> {
    rho.apply(w)
}

/// Outcome of testing one instance of the fixed-factor property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop51Verdict {
    /// `ρ` fixes the product and every factor.
    FactorsFixed,
    /// `ρ` moves the product; nothing to check.
    ProductMoved,
    /// `ρ` fixes the product but moves the factor at this 0-based index.
    Counterexample { index: usize },
}

/// Checks that `y` has the form `g x0 g^{-1}` and returns `g` (reduced).
pub fn conjugator_of(y: &FreeWord, x0: usize) -> Result<FreeWord> {
    let letters = y.letters();
    let bad = || Error::Precondition(format!("{y} is not a conjugate of x{x0}"));
    if letters.len().is_multiple_of(2) {
        return Err(bad());
    }
    let mid = letters.len() / 2;
    if letters[mid] != FreeLetter::gen(x0) {
        return Err(bad());
    }
    for t in 0..mid {
        if letters[letters.len() - 1 - t] != letters[t].inverted() {
            return Err(bad());
        }
    }
    FreeWord::new(y.rank(), letters[..mid].iter().copied())
}

/// If `ρ(y_1 ··· y_l) = y_1 ··· y_l` then `ρ(y_i) = y_i` for every `i`.
pub fn check_prop51_instance(rho: &FreeAutomorphismSpec, ys: &[FreeWord]) -> Result<Prop51Verdict> {
    for y in ys {
        conjugator_of(y, rho.fixed)?;
    }
    let product = ys.iter().try_fold(FreeWord::identity(rho.rank), |acc, y| acc.mul(y))?;
    if rho.apply(&product)? != product {
        return Ok(Prop51Verdict::ProductMoved);
    }
    for (index, y) in ys.iter().enumerate() {
        if &rho.apply(y)? != y {
            return Ok(Prop51Verdict::Counterexample { index });
        }
    }
    Ok(Prop51Verdict::FactorsFixed)
}
