//! Free groups, the amalgam `Ĝ` of copies of `Z × Z`, and its expansion into
//! the completed group ring of the free group.

mod automorphism;
mod hat;
mod series;
mod word;
mod yword;

pub use automorphism::{apply_automorphism, check_prop51_instance, conjugator_of, FreeAutomorphismSpec, Prop51Verdict};
pub use hat::{hat_normal_form, HatBlock, HatLetter, HatWord};
pub use series::{magnus_expand, TruncatedSeries};
pub use word::{FreeLetter, FreeWord};
pub use yword::{nu_free, split_sg, verify_prop41_desk, y_alphabet, InjectivityReport, YLetter, YWord};

use crate::error::Result;

pub fn free_mul(a: &FreeWord, b: &FreeWord) -> Result<FreeWord> {
    a.mul(b)
}
