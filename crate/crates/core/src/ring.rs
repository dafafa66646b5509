//! Exact arithmetic in the integral group ring of a group whose elements have
//! canonical representatives.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::braid::CanonicalBraid;
use crate::error::{Error, Result};
use crate::free::FreeWord;

/// A group whose elements are canonical: record equality is group equality.
pub trait KeyedGroup: Clone + Ord + fmt::Debug {
    /// Strand count or rank; elements of different arity never mix.
    fn arity(&self) -> usize;
    fn identity(arity: usize) -> Self;
    /// Product of two elements of equal arity.
    fn product(&self, other: &Self) -> Self;
    /// Exponent sum.
    fn degree(&self) -> i64;
    /// Canonical key string; its bytes order the printed terms.
    fn key(&self) -> String;
}

impl KeyedGroup for CanonicalBraid {
    fn arity(&self) -> usize {
        self.n()
    }

    fn identity(arity: usize) -> Self {
        CanonicalBraid::identity(arity)
    }

    fn product(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }

    fn degree(&self) -> i64 {
        CanonicalBraid::degree(self)
    }

    fn key(&self) -> String {
        CanonicalBraid::key(self)
    }
}

impl KeyedGroup for FreeWord {
    fn arity(&self) -> usize {
        self.rank()
    }

    fn identity(arity: usize) -> Self {
        FreeWord::identity(arity)
    }

    fn product(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }

    fn degree(&self) -> i64 {
        FreeWord::degree(self)
    }

    fn key(&self) -> String {
        FreeWord::key(self)
    }
}

/// A finitely supported integer combination of group elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement<G: KeyedGroup> {
    arity: usize,
    terms: BTreeMap<G, i64>,
}

/// The part of a ring element supported on elements of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComponent<G: KeyedGroup> {
    pub degree: i64,
    pub part: RingElement<G>,
}

#[derive(Serialize)]
struct TermJson {
    coeff: i64,
    key: String,
}

#[derive(Serialize)]
struct RingJson {
    terms: Vec<TermJson>,
}

impl<G: KeyedGroup> RingElement<G> {
    pub fn zero(arity: usize) -> Self {
        RingElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        RingElement::from_element(G::identity(arity))
    }

    pub fn from_element(g: G) -> Self {
        RingElement::monomial(g, 1)
    }

    pub fn monomial(g: G, coeff: i64) -> Self {
        let arity = g.arity();
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(g, coeff);
        }
        RingElement { arity, terms }
    }

    /// Sums the given terms, merging repeated elements.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (G, i64)>) -> Result<Self> {
        let mut out = RingElement::zero(arity);
        for (g, c) in terms {
            if g.arity() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: g.arity(),
                });
            }
            out.add_term(g, c)?;
        }
        Ok(out)
    }

    fn add_term(&mut self, g: G, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().checked_add(c).ok_or(Error::Overflow)?;
                if sum == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &G) -> i64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, i64)> {
        self.terms.iter().map(|(g, &c)| (g, c))
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (g, &c) in &other.terms {
            out.add_term(g.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = RingElement::zero(self.arity);
        for (g, &c) in &self.terms {
            out.add_term(g.clone(), c.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// Convolution product; every product key is recomputed canonically.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = RingElement::zero(self.arity);
        for (g, &c) in &self.terms {
            for (h, &d) in &other.terms {
                out.add_term(g.product(h), c.checked_mul(d).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(out)
    }

    /// Right multiplication by a single group element.
    pub fn mul_element(&self, h: &G) -> Result<Self> {
        self.mul(&RingElement::from_element(h.clone()))
    }

    pub fn component(&self, k: i64) -> GradedComponent<G> {
        let terms = self
            .terms
            .iter()
            .filter(|(g, _)| g.degree() == k)
            .map(|(g, &c)| (g.clone(), c))
            .collect();
        GradedComponent {
            degree: k,
            part: RingElement {
                arity: self.arity,
                terms,
            },
        }
    }

    /// All nonzero components, ordered by degree.
    pub fn components(&self) -> BTreeMap<i64, RingElement<G>> {
        let mut out: BTreeMap<i64, RingElement<G>> = BTreeMap::new();
        for (g, &c) in &self.terms {
            out.entry(g.degree())
                .or_insert_with(|| RingElement::zero(self.arity))
                .terms
                .insert(g.clone(), c);
        }
        out
    }

    /// Lowest degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|g| g.degree()).min()
    }

    /// Terms sorted by key bytes.
    pub fn sorted_terms(&self) -> Vec<(String, i64)> {
        let mut out: Vec<(String, i64)> = self.terms.iter().map(|(g, &c)| (g.key(), c)).collect();
        out.sort();
        out
    }

    /// `{"terms": [{"coeff": c, "key": "..."}, ...]}` sorted by key.
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(key, coeff)| TermJson { coeff, key })
            .collect();
        serde_json::to_value(RingJson { terms }).expect("ring json")
    }
}

impl<G: KeyedGroup> fmt::Display for RingElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (key, c)) in self.sorted_terms().into_iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:+}·[{}]", c, key)?;
        }
        Ok(())
    }
}

impl<G: KeyedGroup> fmt::Debug for RingElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

pub fn ring_add<G: KeyedGroup>(p: &RingElement<G>, q: &RingElement<G>) -> Result<RingElement<G>> {
    p.add(q)
}

pub fn ring_mul<G: KeyedGroup>(p: &RingElement<G>, q: &RingElement<G>) -> Result<RingElement<G>> {
    p.mul(q)
}

pub fn component<G: KeyedGroup>(p: &RingElement<G>, k: i64) -> GradedComponent<G> {
    p.component(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{normal_form, BraidWord};

    fn b(n: usize, w: &[i32]) -> CanonicalBraid {
        normal_form(&BraidWord::from_signed(n, w).unwrap())
    }

    fn r(terms: &[(&[i32], i64)]) -> RingElement<CanonicalBraid> {
        RingElement::from_terms(3, terms.iter().map(|(w, c)| (b(3, w), *c))).unwrap()
    }

    #[test]
    fn addition() {
        let p = r(&[(&[1], 1), (&[], -1)]);
        assert_eq!(p.add(&r(&[(&[], 1)])).unwrap(), r(&[(&[1], 1)]));
        assert_eq!(p.add(&RingElement::zero(3)).unwrap(), p);
        let q = r(&[(&[1], 1), (&[-1], -1)]);
        assert!(q.add(&q.neg().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn multiplication() {
        let p = r(&[(&[1], 1), (&[-1], -1)]);
        let expected = r(&[(&[], 1), (&[-1, -1], -1)]);
        assert_eq!(p.mul(&r(&[(&[-1], 1)])).unwrap(), expected);
        assert_eq!(p.mul(&RingElement::one(3)).unwrap(), p);

        let d = r(&[(&[1, 1], 1), (&[], -1)]);
        let sq = d.mul(&d).unwrap();
        assert_eq!(sq, r(&[(&[1, 1, 1, 1], 1), (&[1, 1], -2), (&[], 1)]));
        assert_eq!(sq.coefficient(&b(3, &[1, 1])), -2);
    }

    #[test]
    fn components_by_degree() {
        let p = r(&[(&[1, 2], 1), (&[1, -2], -1)]);
        assert_eq!(p.component(2).part, r(&[(&[1, 2], 1)]));
        assert_eq!(p.component(0).part, r(&[(&[1, -2], -1)]));
        assert!(p.component(1).part.is_zero());
        assert_eq!(p.min_degree(), Some(0));
    }

    #[test]
    fn arity_mismatch_and_overflow() {
        let p = RingElement::<CanonicalBraid>::one(3);
        let q = RingElement::<CanonicalBraid>::one(4);
        assert!(matches!(p.add(&q), Err(Error::ArityMismatch { .. })));
        let big = RingElement::monomial(b(3, &[]), i64::MAX);
        assert_eq!(big.add(&p), Err(Error::Overflow));
        assert_eq!(big.mul(&big), Err(Error::Overflow));
    }

    #[test]
    fn json_is_sorted_by_key() {
        let p = r(&[(&[1], 1), (&[-1], -1)]);
        let json = p.to_json();
        let terms = json["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 2);
        let keys: Vec<&str> = terms.iter().map(|t| t["key"].as_str().unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
