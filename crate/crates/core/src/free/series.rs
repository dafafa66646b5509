use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::free::{FreeWord, HatWord};
use crate::ring::{KeyedGroup, RingElement};

type FreeRing = RingElement<FreeWord>;

/// A formal series `Σ_k P_k` in the completion of `Z[F(X)]` by degree, known
/// exactly for every degree `k ≤ cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    rank: usize,
    cutoff: i64,
    parts: BTreeMap<i64, FreeRing>,
}

impl TruncatedSeries {
    pub fn zero(rank: usize, cutoff: i64) -> Self {
        TruncatedSeries {
            rank,
            cutoff,
            parts: BTreeMap::new(),
        }
    }

    /// The truncation of a polynomial.
    pub fn from_ring(p: &FreeRing, cutoff: i64) -> Self {
        let parts = p.components().into_iter().filter(|(k, _)| *k <= cutoff).collect();
        TruncatedSeries {
            rank: p.arity(),
            cutoff,
            parts,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn parts(&self) -> &BTreeMap<i64, FreeRing> {
        &self.parts
    }

    pub fn part(&self, k: i64) -> FreeRing {
        self.parts.get(&k).cloned().unwrap_or_else(|| FreeRing::zero(self.rank))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lowest degree with a nonzero part.
    pub fn valuation(&self) -> Option<i64> {
        self.parts.keys().next().copied()
    }

    /// Sum of all retained parts.
    pub fn to_ring(&self) -> Result<FreeRing> {
        self.parts
            .values()
            .try_fold(FreeRing::zero(self.rank), |acc, p| acc.add(p))
    }

    /// Product, exact up to `min(N_a + v_b, N_b + v_a)`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.rank != other.rank {
            return Err(Error::ArityMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let va = self.valuation().unwrap_or(self.cutoff + 1);
        let vb = other.valuation().unwrap_or(other.cutoff + 1);
        let cutoff = (self.cutoff + vb).min(other.cutoff + va);
        let mut out = TruncatedSeries::zero(self.rank, cutoff);
        for (&da, pa) in &self.parts {
            for (&db, pb) in &other.parts {
                if da + db > cutoff {
                    break;
                }
                out.add_part(da + db, &pa.mul(pb)?)?;
            }
        }
        Ok(out)
    }

    fn add_part(&mut self, k: i64, p: &FreeRing) -> Result<()> {
        let sum = match self.parts.get(&k) {
            Some(existing) => existing.add(p)?,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.parts.remove(&k);
        } else {
            self.parts.insert(k, sum);
        }
        Ok(())
    }
}

fn binomial(n: i64, k: i64) -> Result<i64> {
    if k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for t in 0..k {
        acc = acc.checked_mul(n - t).ok_or(Error::Overflow)? / (t + 1);
    }
    Ok(acc)
}

/// Coefficients `c_k` of `(t-1)^p t^q = Σ c_k t^k` for `k ≤ top`.
fn syllable_coefficients(p: i64, q: i64, top: i64) -> Result<Vec<(i64, i64)>> {
    let mut out = Vec::new();
    if p >= 0 {
        for m in 0..=p {
            if q + m > top {
                break;
            }
            let sign = if (p - m) % 2 == 0 { 1 } else { -1 };
            out.push((q + m, sign * binomial(p, m)?));
        }
    } else {
        // (t-1)^{-a} = (-1)^a Σ_m C(m+a-1, a-1) t^m, expanded lazily up to `top`
        let a = -p;
        let sign = if a % 2 == 0 { 1 } else { -1 };
        let mut m = 0;
        while q + m <= top {
            out.push((q + m, sign * binomial(m + a - 1, a - 1)?));
            m += 1;
        }
    }
    Ok(out)
}

/// The image of `h` under `x ↦ x`, `x̂ ↦ x - 1`, exact up to degree `cutoff`.
pub fn magnus_expand(h: &HatWord, cutoff: i64) -> Result<TruncatedSeries> {
    let rank = h.rank();
    let blocks = h.blocks();
    // valuation of each syllable is its plain exponent
    let mut remaining: i64 = blocks.iter().map(|b| b.plain_exp).sum();
    let mut acc: Vec<(FreeWord, i64)> = vec![(FreeWord::identity(rank), 1)];
    let mut acc_min: i64 = 0;
    for b in blocks {
        remaining -= b.plain_exp;
        // terms of this syllable beyond `top` cannot reach degree ≤ cutoff
        let top = cutoff - remaining - acc_min;
        let coeffs = syllable_coefficients(b.hat_exp, b.plain_exp, top)?;
        let x = FreeWord::generator(rank, b.generator)?;
        let mut next: BTreeMap<FreeWord, i64> = BTreeMap::new();
        let limit = cutoff - remaining;
        for (g, c) in &acc {
            let dg = g.degree();
            for &(k, d) in &coeffs {
                if dg + k > limit {
                    break;
                }
                let prod = g.product(&x.pow(k));
                let coeff = c.checked_mul(d).ok_or(Error::Overflow)?;
                let e = next.entry(prod).or_insert(0);
                *e = e.checked_add(coeff).ok_or(Error::Overflow)?;
            }
        }
        acc = next.into_iter().filter(|(_, c)| *c != 0).collect();
        acc_min += b.plain_exp;
    }
    let mut out = TruncatedSeries::zero(rank, cutoff);
    let mut parts: BTreeMap<i64, Vec<(FreeWord, i64)>> = BTreeMap::new();
    for (g, c) in acc {
        parts.entry(g.degree()).or_default().push((g, c));
    }
    for (k, terms) in parts {
        out.parts.insert(k, FreeRing::from_terms(rank, terms)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::{hat_normal_form, HatBlock, HatLetter};

    fn fw(rank: usize, letters: &[i32]) -> FreeWord {
        FreeWord::from_signed(rank, letters).unwrap()
    }

    fn ring(rank: usize, terms: &[(&[i32], i64)]) -> FreeRing {
        FreeRing::from_terms(rank, terms.iter().map(|(w, c)| (fw(rank, w), *c))).unwrap()
    }

    fn hat(generator: usize, inverse: bool) -> HatLetter {
        HatLetter::Hat { generator, inverse }
    }

    #[test]
    fn hat_maps_to_x_minus_one() {
        let h = hat_normal_form(1, &[hat(0, false)]).unwrap();
        let s = magnus_expand(&h, 2).unwrap();
        assert_eq!(s.to_ring().unwrap(), ring(1, &[(&[], -1), (&[1], 1)]));
    }

    #[test]
    fn inverse_hat_is_negative_geometric_series() {
        let h = hat_normal_form(1, &[hat(0, true)]).unwrap();
        let s = magnus_expand(&h, 2).unwrap();
        assert_eq!(s.to_ring().unwrap(), ring(1, &[(&[], -1), (&[1], -1), (&[1, 1], -1)]));
    }

    #[test]
    fn product_of_two_hats() {
        let h = hat_normal_form(2, &[hat(0, false), hat(1, false)]).unwrap();
        let s = magnus_expand(&h, 2).unwrap();
        assert_eq!(
            s.to_ring().unwrap(),
            ring(2, &[(&[], 1), (&[1], -1), (&[2], -1), (&[1, 2], 1)])
        );
    }

    #[test]
    fn hat_times_inverse_is_one() {
        let h = HatWord::from_blocks(
            1,
            [HatBlock {
                generator: 0,
                hat_exp: 1,
                plain_exp: 0,
            }],
        )
        .unwrap();
        let inv = HatWord::from_blocks(
            1,
            [HatBlock {
                generator: 0,
                hat_exp: -1,
                plain_exp: 0,
            }],
        )
        .unwrap();
        let a = magnus_expand(&h, 6).unwrap();
        let b = magnus_expand(&inv, 6).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.cutoff(), 6);
        assert_eq!(prod.to_ring().unwrap(), FreeRing::one(1));
    }

    #[test]
    fn negative_plain_exponents_are_exact_to_cutoff() {
        // x^{-2} x̂^{-1} ŷ^{-1}: compare against multiplying expansions with generous cutoffs
        let h = HatWord::from_blocks(
            2,
            [
                HatBlock {
                    generator: 0,
                    hat_exp: -1,
                    plain_exp: -2,
                },
                HatBlock {
                    generator: 1,
                    hat_exp: -1,
                    plain_exp: 0,
                },
            ],
        )
        .unwrap();
        let s = magnus_expand(&h, 3).unwrap();
        let a = magnus_expand(&HatWord::from_blocks(2, [h.blocks()[0]]).unwrap(), 10).unwrap();
        let b = magnus_expand(&HatWord::from_blocks(2, [h.blocks()[1]]).unwrap(), 10).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.cutoff(), 8);
        for k in -2..=3 {
            assert_eq!(s.part(k), prod.part(k), "degree {k}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(5, 0).unwrap(), 1);
        assert_eq!(binomial(3, 4).unwrap(), 0);
    }
}
