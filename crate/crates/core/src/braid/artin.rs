use crate::braid::BraidWord;
use crate::free::{FreeLetter, FreeWord};

/// An automorphism of the free group `F(x_0, ..., x_{rank-1})`, stored by the
/// reduced images of the generators together with those of its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        let images: Vec<FreeWord> = (0..rank).map(|g| FreeWord::generator(rank, g).unwrap()).collect();
        FreeAutomorphism {
            rank,
            inverse_images: images.clone(),
            images,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// Whether `images ∘ inverse_images` and `inverse_images ∘ images` fix every generator.
    pub fn is_consistent(&self) -> bool {
        (0..self.rank).all(|g| {
            let x = FreeWord::generator(self.rank, g).unwrap();
            self.images[g].substitute(&self.inverse_images) == x && self.inverse_images[g].substitute(&self.images) == x
        })
    }
}

/// The Artin action of a braid on the free group of rank `n`:
/// `σ_i: x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i`, other generators fixed
/// (strand `i` carries generator `x_{i-1}` in 0-based free-group numbering).
///
/// The word `l_1 ··· l_k` acts as `φ(l_1) ∘ ··· ∘ φ(l_k)`.
pub fn artin_action(w: &BraidWord) -> FreeAutomorphism {
    let n = w.n();
    let mut action = FreeAutomorphism::identity(n);
    for l in w.letters() {
        let (a, b) = (l.index - 1, l.index);
        let xa = FreeWord::generator(n, a).unwrap();
        let xb = FreeWord::generator(n, b).unwrap();
        // letter images (forward, inverse) as short words
        let (fwd_a, fwd_b, inv_a, inv_b) = if l.inverse {
            (
                xb.clone(),
                FreeWord::new(n, [FreeLetter::inv(b), FreeLetter::gen(a), FreeLetter::gen(b)]).unwrap(),
                FreeWord::new(n, [FreeLetter::gen(a), FreeLetter::gen(b), FreeLetter::inv(a)]).unwrap(),
                xa.clone(),
            )
        } else {
            (
                FreeWord::new(n, [FreeLetter::gen(a), FreeLetter::gen(b), FreeLetter::inv(a)]).unwrap(),
                xa.clone(),
                xb.clone(),
                FreeWord::new(n, [FreeLetter::inv(b), FreeLetter::gen(a), FreeLetter::gen(b)]).unwrap(),
            )
        };
        // φ_w ∘ φ_l: substitute the current images into φ_l(x)
        let new_a = fwd_a.substitute(&action.images);
        let new_b = fwd_b.substitute(&action.images);
        action.images[a] = new_a;
        action.images[b] = new_b;
        // (φ_w ∘ φ_l)^{-1} = φ_l^{-1} ∘ φ_w^{-1}
        let mut letter_inverse = FreeAutomorphism::identity(n).images;
        letter_inverse[a] = inv_a;
        letter_inverse[b] = inv_b;
        for img in action.inverse_images.iter_mut() {
            *img = img.substitute(&letter_inverse);
        }
    }
    action
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator_action() {
        let act = artin_action(&BraidWord::from_signed(2, &[1]).unwrap());
        assert_eq!(act.images()[0], FreeWord::from_signed(2, &[1, 2, -1]).unwrap());
        assert_eq!(act.images()[1], FreeWord::from_signed(2, &[1]).unwrap());
        assert!(act.is_consistent());
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(artin_action(&BraidWord::identity(3)), FreeAutomorphism::identity(3));
    }

    #[test]
    fn braid_relation_holds_for_actions() {
        let a = artin_action(&BraidWord::from_signed(3, &[1, 2, 1]).unwrap());
        let b = artin_action(&BraidWord::from_signed(3, &[2, 1, 2]).unwrap());
        assert_eq!(a, b);
        let c = artin_action(&BraidWord::from_signed(3, &[1, 2]).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn inverses_cancel() {
        let w = BraidWord::from_signed(4, &[1, -2, 3, 2, -1]).unwrap();
        let act = artin_action(&w.concat(&w.inverse()).unwrap());
        assert_eq!(act, FreeAutomorphism::identity(4));
        assert!(artin_action(&w).is_consistent());
    }

    #[test]
    fn distinct_generators_act_differently() {
        let a = artin_action(&BraidWord::from_signed(3, &[1]).unwrap());
        let b = artin_action(&BraidWord::from_signed(3, &[2]).unwrap());
        assert_ne!(a.images()[0], b.images()[0]);
    }
}
