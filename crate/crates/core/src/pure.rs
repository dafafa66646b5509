//! The pure braid group: the generators `A_ij`, abelianization by linking
//! numbers, and the conjugation table that sorts vertices into strata.

use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{braid_equals, BraidWord, CanonicalBraid, Letter};
use crate::error::{Error, Result};

/// Coordinates of a class in `H_1(PB_n)` in the basis `[A_ij]`. Absent pairs are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianVector {
    n: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

/// The stratum `Υ_ij` a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexClass {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl AbelianVector {
    pub fn zero(n: usize) -> Self {
        AbelianVector {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut v = AbelianVector::zero(n);
        v.entries.insert((i, j), 1);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.entries.get(&key).copied().unwrap_or(0)
    }

    /// Nonzero coordinates.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn add(&self, other: &AbelianVector) -> Result<AbelianVector> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (&k, &v) in &other.entries {
            let e = out.entries.entry(k).or_insert(0);
            *e = e.checked_add(v).ok_or(Error::Overflow)?;
            if *e == 0 {
                out.entries.remove(&k);
            }
        }
        Ok(out)
    }

    /// The pair `(i, j)` if this is the basis vector `[A_ij]`.
    pub fn as_unit(&self) -> Option<(usize, usize)> {
        let mut it = self.entries.iter();
        match (it.next(), it.next()) {
            (Some((&k, &1)), None) => Some(k),
            _ => None,
        }
    }

    fn pair_label(&self, i: usize, j: usize) -> String {
        if self.n < 10 {
            format!("{i}{j}")
        } else {
            format!("{i},{j}")
        }
    }

    /// `{"12": 1, "13": 0, ...}` over all pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                map.insert(self.pair_label(i, j), self.get(i, j).into());
            }
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for AbelianVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (&(i, j), v)) in self.entries.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", self.pair_label(i, j), v)?;
        }
        write!(f, "}}")
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || i >= j || j > n {
        return Err(Error::InvalidPair { i, j, n });
    }
    Ok(())
}

/// `A_ij = σ_{j-1} ··· σ_{i+1} σ_i² σ_{i+1}^{-1} ··· σ_{j-1}^{-1}`.
pub fn generator_a(n: usize, i: usize, j: usize) -> Result<BraidWord> {
    check_pair(n, i, j)?;
    let mut letters: Vec<Letter> = (i + 1..j).rev().map(Letter::pos).collect();
    letters.push(Letter::pos(i));
    letters.push(Letter::pos(i));
    letters.extend((i + 1..j).map(Letter::neg));
    BraidWord::new(n, letters)
}

pub fn is_pure(w: &BraidWord) -> bool {
    w.theta().is_identity()
}

/// Linking numbers of a pure braid: signed crossings per strand pair, halved.
pub fn abelianize(w: &BraidWord) -> Result<AbelianVector> {
    let n = w.n();
    // strand_at[p] = strand currently at position p
    let mut strand_at: Vec<usize> = (1..=n).collect();
    let mut crossings: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for l in w.letters() {
        let p = l.index - 1;
        let (a, b) = (strand_at[p], strand_at[p + 1]);
        let key = if a < b { (a, b) } else { (b, a) };
        *crossings.entry(key).or_insert(0) += l.sign();
        strand_at.swap(p, p + 1);
    }
    if strand_at.iter().enumerate().any(|(p, &s)| s != p + 1) {
        return Err(Error::NotPure);
    }
    let mut out = AbelianVector::zero(n);
    for ((i, j), total) in crossings {
        if total % 2 != 0 {
            return Err(Error::OddCrossings { i, j, total });
        }
        if total != 0 {
            out.entries.insert((i, j), total / 2);
        }
    }
    Ok(out)
}

/// The stratum of a vertex `α σ_i² α^{-1}`, read off its abelianization.
pub fn classify_vertex(u: &CanonicalBraid) -> Result<VertexClass> {
    let v = abelianize(&u.to_word())?;
    match v.as_unit() {
        Some((i, j)) => Ok(VertexClass { i, j }),
        None => Err(Error::NotAVertex(v.to_string())),
    }
}

/// Rows of the table for `σ_r A_ij σ_r^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugationCase {
    /// `r = j`: `A_{i,j+1}`
    RightEnd,
    /// `r = j-1 > i`: `A_{j-1,j} A_{i,j-1} A_{j-1,j}^{-1}`
    BelowRightEnd,
    /// `j-1 > i = r`: `A_{i+1,j}`
    LeftEnd,
    /// `r = i-1`: `A_ij^{-1} A_{i-1,j} A_ij`
    BelowLeftEnd,
    /// otherwise: `A_ij`
    Fixed,
}

/// The row that applies to `(r, i, j)` and its right-hand side.
pub fn conjugation_rhs(n: usize, r: usize, i: usize, j: usize) -> Result<(ConjugationCase, BraidWord)> {
    check_pair(n, i, j)?;
    if r == 0 || r >= n {
        return Err(Error::IndexOutOfRange { index: r, n });
    }
    let a = |p, q| generator_a(n, p, q);
    let out = if r == j {
        (ConjugationCase::RightEnd, a(i, j + 1)?)
    } else if r + 1 == j && r > i {
        let outer = a(j - 1, j)?;
        (ConjugationCase::BelowRightEnd, a(i, j - 1)?.conjugate_by(&outer)?)
    } else if r == i && j - 1 > i {
        (ConjugationCase::LeftEnd, a(i + 1, j)?)
    } else if r + 1 == i {
        let outer = a(i, j)?.inverse();
        (ConjugationCase::BelowLeftEnd, a(i - 1, j)?.conjugate_by(&outer)?)
    } else {
        (ConjugationCase::Fixed, a(i, j)?)
    };
    Ok(out)
}

/// Checks `σ_r A_ij σ_r^{-1}` against its table row.
pub fn check_conjugation_identity(n: usize, r: usize, i: usize, j: usize) -> Result<bool> {
    let (_, rhs) = conjugation_rhs(n, r, i, j)?;
    let lhs = generator_a(n, i, j)?.conjugate_by(&BraidWord::generator(n, r)?)?;
    braid_equals(&lhs, &rhs)
}

/// The four relation families of the standard presentation of `PB_n`, as
/// `(lhs, rhs)` word pairs for `A_rs^{-1} A_ij A_rs`; `None` when no family applies.
pub fn pure_relation(n: usize, r: usize, s: usize, i: usize, j: usize) -> Result<Option<(BraidWord, BraidWord)>> {
    check_pair(n, r, s)?;
    check_pair(n, i, j)?;
    let a = |p, q| generator_a(n, p, q);
    let prod = |ws: &[BraidWord]| BraidWord::product(n, ws.iter());
    let lhs = prod(&[a(r, s)?.inverse(), a(i, j)?, a(r, s)?])?;
    let rhs = if (r < s && s < i && i < j) || (i < r && r < s && s < j) {
        a(i, j)?
    } else if s == i {
        prod(&[a(r, j)?, a(i, j)?, a(r, j)?.inverse()])?
    } else if i == r && r < s && s < j {
        prod(&[a(i, j)?, a(s, j)?, a(i, j)?, a(s, j)?.inverse(), a(i, j)?.inverse()])?
    } else if r < i && i < s && s < j {
        prod(&[
            a(r, j)?,
            a(s, j)?,
            a(r, j)?.inverse(),
            a(s, j)?.inverse(),
            a(i, j)?,
            a(s, j)?,
            a(r, j)?,
            a(s, j)?.inverse(),
            a(r, j)?.inverse(),
        ])?
    } else {
        return Ok(None);
    };
    Ok(Some((lhs, rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::normal_form;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, letters).unwrap()
    }

    #[test]
    fn generator_words() {
        assert_eq!(generator_a(3, 1, 2).unwrap(), w(3, &[1, 1]));
        assert_eq!(generator_a(3, 1, 3).unwrap(), w(3, &[2, 1, 1, -2]));
        assert_eq!(generator_a(4, 2, 4).unwrap(), w(4, &[3, 2, 2, -3]));
        assert!(generator_a(3, 2, 2).is_err());
        assert!(generator_a(3, 1, 4).is_err());
        assert!(generator_a(3, 0, 2).is_err());
    }

    #[test]
    fn purity() {
        assert!(is_pure(&w(3, &[1, 1])));
        assert!(!is_pure(&w(3, &[1])));
        assert!(is_pure(&generator_a(3, 1, 3).unwrap()));
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianize(&w(3, &[1, 1])).unwrap(), AbelianVector::unit(3, 1, 2));
        assert_eq!(abelianize(&w(3, &[2, 1, 1, -2])).unwrap(), AbelianVector::unit(3, 1, 3));
        let a12 = generator_a(3, 1, 2).unwrap();
        let a13 = generator_a(3, 1, 3).unwrap();
        let conj = a13.conjugate_by(&a12).unwrap();
        assert_eq!(abelianize(&conj).unwrap(), AbelianVector::unit(3, 1, 3));
        assert_eq!(abelianize(&w(3, &[1])), Err(Error::NotPure));
    }

    #[test]
    fn json_lists_every_pair() {
        let json = AbelianVector::unit(3, 1, 2).to_json();
        assert_eq!(json["12"], 1);
        assert_eq!(json["13"], 0);
        assert_eq!(json["23"], 0);
    }

    #[test]
    fn classification() {
        let c = |letters: &[i32]| classify_vertex(&normal_form(&w(3, letters))).unwrap();
        assert_eq!(c(&[2, 1, 1, -2]), VertexClass { i: 1, j: 3 });
        assert_eq!(c(&[1, 1]), VertexClass { i: 1, j: 2 });
        assert_eq!(c(&[1, 2, 2, -1]), VertexClass { i: 1, j: 3 });
        assert!(matches!(
            classify_vertex(&normal_form(&w(3, &[1, 1, 2, 2]))),
            Err(Error::NotAVertex(_))
        ));
        assert_eq!(classify_vertex(&normal_form(&w(3, &[1]))), Err(Error::NotPure));
    }

    #[test]
    fn conjugation_table_examples() {
        assert_eq!(conjugation_rhs(4, 3, 1, 3).unwrap().0, ConjugationCase::RightEnd);
        assert!(check_conjugation_identity(4, 3, 1, 3).unwrap());
        assert_eq!(conjugation_rhs(4, 2, 1, 3).unwrap().0, ConjugationCase::BelowRightEnd);
        assert!(check_conjugation_identity(4, 2, 1, 3).unwrap());
        assert_eq!(conjugation_rhs(4, 3, 1, 2).unwrap().0, ConjugationCase::Fixed);
        assert!(check_conjugation_identity(4, 3, 1, 2).unwrap());
        assert!(check_conjugation_identity(4, 4, 1, 2).is_err());
    }
}
