//! Braid words, the Garside normal form deciding equality in `B_n`, and the
//! Artin action used as an independent equality oracle.

mod artin;
mod garside;
mod permutation;
mod word;

pub use artin::{artin_action, FreeAutomorphism};
pub use garside::CanonicalBraid;
pub use permutation::Permutation;
pub use word::{BraidWord, Letter};

use crate::error::{Error, Result};

pub fn normal_form(w: &BraidWord) -> CanonicalBraid {
    CanonicalBraid::from_word(w)
}

/// Decides equality in `B_n` by comparing normal forms.
pub fn braid_equals(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.n() != w2.n() {
        return Err(Error::ArityMismatch {
            left: w1.n(),
            right: w2.n(),
        });
    }
    Ok(normal_form(w1) == normal_form(w2))
}

pub fn theta(w: &BraidWord) -> Permutation {
    w.theta()
}

pub fn degree(w: &BraidWord) -> i64 {
    w.degree()
}

pub fn invert(w: &BraidWord) -> BraidWord {
    w.inverse()
}
