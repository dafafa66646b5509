//! The singular braid monoid `SB_n`, its decomposition as a graph monoid over
//! the vertices `α σ_i² α^{-1}` twisted by `B_n`, and the desingularization map.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::braid::{BraidWord, CanonicalBraid, Letter};
use crate::error::{Error, Result};
use crate::pure::{classify_vertex, VertexClass};
use crate::ring::RingElement;
use crate::trace::{trace_normal_form, CommutationOracle, Memoized, TraceWord};

pub type BraidRing = RingElement<CanonicalBraid>;

/// A generator of `SB_n`: `σ_i^{±1}`, the singular crossing `τ_i`, or `δ_i = σ_i τ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularLetter {
    Sigma(Letter),
    Tau(usize),
    Delta(usize),
}

impl SingularLetter {
    pub fn index(self) -> usize {
        match self {
            SingularLetter::Sigma(l) => l.index,
            SingularLetter::Tau(i) | SingularLetter::Delta(i) => i,
        }
    }
}

impl fmt::Display for SingularLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularLetter::Sigma(l) if l.inverse => write!(f, "s{}^-1", l.index),
            SingularLetter::Sigma(l) => write!(f, "s{}", l.index),
            SingularLetter::Tau(i) => write!(f, "t{i}"),
            SingularLetter::Delta(i) => write!(f, "d{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularWord {
    n: usize,
    letters: Vec<SingularLetter>,
}

impl SingularWord {
    pub fn new(n: usize, letters: Vec<SingularLetter>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| l.index() == 0 || l.index() >= n) {
            return Err(Error::IndexOutOfRange { index: bad.index(), n });
        }
        Ok(SingularWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[SingularLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &SingularWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(SingularWord { n: self.n, letters })
    }

    /// Number of singular letters.
    pub fn singular_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| !matches!(l, SingularLetter::Sigma(_)))
            .count()
    }
}

impl fmt::Display for SingularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, l) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A vertex of `Ω`: a braid conjugate to some `σ_i²`, ordered and compared by its key.
#[derive(Debug, Clone)]
pub struct Vertex {
    braid: CanonicalBraid,
    class: VertexClass,
    key: String,
}

impl Vertex {
    /// Accepts a braid of degree 2 whose abelianization is a unit vector.
    pub fn from_braid(braid: CanonicalBraid) -> Result<Self> {
        if braid.degree() != 2 {
            return Err(Error::NotAVertex(format!(
                "{} has degree {}",
                braid.key(),
                braid.degree()
            )));
        }
        let class = classify_vertex(&braid)?;
        let key = braid.key();
        Ok(Vertex { braid, class, key })
    }

    /// The vertex `α σ_i² α^{-1}`.
    pub fn conjugate(alpha: &CanonicalBraid, i: usize) -> Result<Self> {
        let n = alpha.n();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let sq = CanonicalBraid::from_word(&BraidWord::new(n, vec![Letter::pos(i); 2])?);
        Vertex::from_braid(sq.conjugate_by(alpha)?)
    }

    pub fn from_key(key: &str) -> Result<Self> {
        Vertex::from_braid(CanonicalBraid::from_key(key)?)
    }

    pub fn braid(&self) -> &CanonicalBraid {
        &self.braid
    }

    pub fn class(&self) -> VertexClass {
        self.class
    }

    pub fn key(&self) -> &str {
        &self.key
    }
}

impl PartialEq for Vertex {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Vertex {}

impl Hash for Vertex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Whether `uv = vu` in `B_n`.
pub fn vertex_commutes(u: &Vertex, v: &Vertex) -> bool {
    u == v || u.braid.mul_unchecked(&v.braid) == v.braid.mul_unchecked(&u.braid)
}

/// Edge relation of `Ω`.
#[derive(Debug, Clone, Copy, Default)]
pub struct VertexCommutation;

impl CommutationOracle<Vertex> for VertexCommutation {
    fn commutes(&self, a: &Vertex, b: &Vertex) -> bool {
        vertex_commutes(a, b)
    }
}

pub type OmegaOracle = Memoized<Vertex, VertexCommutation>;

pub fn omega_oracle() -> OmegaOracle {
    Memoized::new(VertexCommutation)
}

/// An element of `SB_n` written as `(trace over Ω) · braid`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SBElement {
    pub trace: TraceWord<Vertex>,
    pub braid: CanonicalBraid,
}

impl SBElement {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "trace": self.trace.letters().iter().map(|v| v.key().to_string()).collect::<Vec<_>>(),
            "braid": self.braid.key(),
        })
    }
}

/// Pushes every singular letter to the left past the braid read so far:
/// `β δ_i = (β σ_i² β^{-1})-vertex · β`, and `τ_i = σ_i^{-1} δ_i`.
pub fn decompose<O>(w: &SingularWord, oracle: &O) -> Result<SBElement>
where
    O: CommutationOracle<Vertex> + ?Sized,
{
    let n = w.n;
    let mut beta = CanonicalBraid::identity(n);
    let mut vertices = Vec::with_capacity(w.singular_count());
    for &l in &w.letters {
        match l {
            SingularLetter::Sigma(s) => beta = beta.mul(&sigma(n, s)?)?,
            SingularLetter::Tau(i) => {
                beta = beta.mul(&sigma(n, Letter::neg(i))?)?;
                vertices.push(Vertex::conjugate(&beta, i)?);
            }
            SingularLetter::Delta(i) => vertices.push(Vertex::conjugate(&beta, i)?),
        }
    }
    Ok(SBElement {
        trace: trace_normal_form(&TraceWord::new(vertices), oracle),
        braid: beta,
    })
}

pub fn sb_equals<O>(w1: &SingularWord, w2: &SingularWord, oracle: &O) -> Result<bool>
where
    O: CommutationOracle<Vertex> + ?Sized,
{
    if w1.n != w2.n {
        return Err(Error::ArityMismatch {
            left: w1.n,
            right: w2.n,
        });
    }
    Ok(decompose(w1, oracle)? == decompose(w2, oracle)?)
}

fn sigma(n: usize, l: Letter) -> Result<CanonicalBraid> {
    Ok(CanonicalBraid::from_word(&BraidWord::new(n, vec![l])?))
}

/// The multiplicative extension of `σ ↦ σ`, `τ_i ↦ σ_i - σ_i^{-1}`, `δ_i ↦ σ_i² - 1`.
pub fn desingularize(w: &SingularWord) -> Result<BraidRing> {
    let n = w.n;
    let mut acc = BraidRing::one(n);
    for &l in &w.letters {
        let factor = match l {
            SingularLetter::Sigma(s) => BraidRing::from_element(sigma(n, s)?),
            SingularLetter::Tau(i) => {
                BraidRing::from_terms(n, [(sigma(n, Letter::pos(i))?, 1), (sigma(n, Letter::neg(i))?, -1)])?
            }
            SingularLetter::Delta(i) => {
                let s = sigma(n, Letter::pos(i))?;
                BraidRing::from_terms(n, [(s.mul(&s)?, 1), (CanonicalBraid::identity(n), -1)])?
            }
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `∏ (u - 1)` over the letters of a trace.
pub fn nu(n: usize, t: &TraceWord<Vertex>) -> Result<BraidRing> {
    let mut acc = BraidRing::one(n);
    for u in t.letters() {
        if u.braid.n() != n {
            return Err(Error::ArityMismatch {
                left: n,
                right: u.braid.n(),
            });
        }
        let factor = BraidRing::from_terms(n, [(u.braid.clone(), 1), (CanonicalBraid::identity(n), -1)])?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Parses vertex keys and evaluates [`nu`].
pub fn nu_from_keys<S: AsRef<str>>(n: usize, keys: &[S]) -> Result<BraidRing> {
    let letters = keys
        .iter()
        .map(|k| Vertex::from_key(k.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    nu(n, &TraceWord::new(letters))
}

pub const SUBINDEX_LIMIT: usize = 20;

/// `Σ_I (-1)^{l-|I|} u_I`, summing over all ordered sub-sequences `I` of the letters.
pub fn nu_subindex_expansion(n: usize, t: &TraceWord<Vertex>) -> Result<BraidRing> {
    let l = t.len();
    if l > SUBINDEX_LIMIT {
        return Err(Error::TooLong {
            len: l,
            limit: SUBINDEX_LIMIT,
        });
    }
    let mut terms = Vec::with_capacity(1 << l);
    for mask in 0u32..(1u32 << l) {
        let mut g = CanonicalBraid::identity(n);
        for (idx, u) in t.letters().iter().enumerate() {
            if mask & (1 << idx) != 0 {
                g = g.mul(&u.braid)?;
            }
        }
        let sign = if (l - mask.count_ones() as usize).is_multiple_of(2) {
            1
        } else {
            -1
        };
        terms.push((g, sign));
    }
    BraidRing::from_terms(n, terms)
}

/// Why the lowest component of `η(w)` failed to recover the braid part of `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMismatch {
    pub degree: i64,
    pub expected: BraidRing,
    pub found: BraidRing,
}

impl fmt::Display for ComponentMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}: expected {}, found {}",
            self.degree, self.expected, self.found
        )
    }
}

/// With `d = deg β` and `l` the trace length, checks that `P` has nothing below
/// degree `d` and that its degree-`d` part is `(-1)^l β`.
pub fn lowest_component_recover(p: &BraidRing, expected: &SBElement) -> std::result::Result<(), ComponentMismatch> {
    let d = expected.braid.degree();
    let sign = if expected.trace.len().is_multiple_of(2) { 1 } else { -1 };
    let want = BraidRing::monomial(expected.braid.clone(), sign);
    if let Some(low) = p.min_degree().filter(|&low| low < d) {
        return Err(ComponentMismatch {
            degree: low,
            expected: BraidRing::zero(p.arity()),
            found: p.component(low).part,
        });
    }
    let found = p.component(d).part;
    if found != want {
        return Err(ComponentMismatch {
            degree: d,
            expected: want,
            found,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pure::generator_a;

    fn sw(n: usize, letters: &[SingularLetter]) -> SingularWord {
        SingularWord::new(n, letters.to_vec()).unwrap()
    }

    fn s(i: usize) -> SingularLetter {
        SingularLetter::Sigma(Letter::pos(i))
    }

    fn si(i: usize) -> SingularLetter {
        SingularLetter::Sigma(Letter::neg(i))
    }

    fn t(i: usize) -> SingularLetter {
        SingularLetter::Tau(i)
    }

    fn d(i: usize) -> SingularLetter {
        SingularLetter::Delta(i)
    }

    fn cb(n: usize, w: &[i32]) -> CanonicalBraid {
        CanonicalBraid::from_word(&BraidWord::from_signed(n, w).unwrap())
    }

    fn ring(n: usize, terms: &[(&[i32], i64)]) -> BraidRing {
        BraidRing::from_terms(n, terms.iter().map(|(w, c)| (cb(n, w), *c))).unwrap()
    }

    fn a(n: usize, i: usize, j: usize) -> Vertex {
        Vertex::from_braid(CanonicalBraid::from_word(&generator_a(n, i, j).unwrap())).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let o = omega_oracle();
        let e = decompose(&sw(3, &[d(1)]), &o).unwrap();
        assert_eq!(e.trace.letters(), &[a(3, 1, 2)]);
        assert!(e.braid.is_identity());

        let e = decompose(&sw(3, &[s(1), s(2)]), &o).unwrap();
        assert!(e.trace.is_empty());
        assert_eq!(e.braid, cb(3, &[1, 2]));

        let e = decompose(&sw(3, &[t(1)]), &o).unwrap();
        assert_eq!(e.trace.letters(), &[a(3, 1, 2)]);
        assert_eq!(e.braid, cb(3, &[-1]));
    }

    #[test]
    fn word_problem_examples() {
        let o = omega_oracle();
        assert!(sb_equals(&sw(3, &[s(1), s(2), t(1)]), &sw(3, &[t(2), s(1), s(2)]), &o).unwrap());
        assert!(sb_equals(&sw(3, &[s(1), t(1)]), &sw(3, &[t(1), s(1)]), &o).unwrap());
        assert!(!sb_equals(&sw(3, &[t(1), t(2)]), &sw(3, &[t(2), t(1)]), &o).unwrap());
        assert!(sb_equals(&sw(4, &[t(1), t(3)]), &sw(4, &[t(3), t(1)]), &o).unwrap());
        assert!(sb_equals(&sw(3, &[d(1)]), &sw(3, &[s(1), t(1)]), &o).unwrap());
        assert!(!sb_equals(&sw(3, &[s(1), si(1), t(1)]), &sw(3, &[]), &o).unwrap());
        assert!(sb_equals(&sw(3, &[d(1)]), &sw(4, &[d(1)]), &o).is_err());
    }

    #[test]
    fn commutation_examples() {
        assert!(vertex_commutes(&a(4, 1, 2), &a(4, 3, 4)));
        assert!(vertex_commutes(&a(3, 1, 2), &a(3, 1, 2)));
        assert!(!vertex_commutes(&a(3, 1, 2), &a(3, 1, 3)));
    }

    #[test]
    fn desingularize_examples() {
        assert_eq!(
            desingularize(&sw(3, &[t(1)])).unwrap(),
            ring(3, &[(&[1], 1), (&[-1], -1)])
        );
        assert_eq!(
            desingularize(&sw(3, &[d(1)])).unwrap(),
            ring(3, &[(&[1, 1], 1), (&[], -1)])
        );
        let p = desingularize(&sw(3, &[t(1), t(2)])).unwrap();
        assert_eq!(
            p,
            ring(3, &[(&[1, 2], 1), (&[1, -2], -1), (&[-1, 2], -1), (&[-1, -2], 1)])
        );
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn nu_examples() {
        let u = a(3, 1, 2);
        let v = a(3, 2, 3);
        assert_eq!(
            nu(3, &TraceWord::new(vec![u.clone()])).unwrap(),
            ring(3, &[(&[1, 1], 1), (&[], -1)])
        );
        assert_eq!(nu(3, &TraceWord::empty()).unwrap(), BraidRing::one(3));
        let uv = TraceWord::new(vec![u.clone(), v.clone()]);
        let expected = BraidRing::from_terms(
            3,
            [
                (u.braid().mul(v.braid()).unwrap(), 1),
                (u.braid().clone(), -1),
                (v.braid().clone(), -1),
                (CanonicalBraid::identity(3), 1),
            ],
        )
        .unwrap();
        assert_eq!(nu(3, &uv).unwrap(), expected);
        assert_eq!(nu_subindex_expansion(3, &uv).unwrap(), expected);
        assert_eq!(
            nu_subindex_expansion(3, &TraceWord::empty()).unwrap(),
            BraidRing::one(3)
        );
        assert_eq!(
            nu_from_keys(3, &[u.key()]).unwrap(),
            ring(3, &[(&[1, 1], 1), (&[], -1)])
        );
        assert!(nu_from_keys(3, &["03|+000000|123"]).is_err());
    }

    #[test]
    fn subindex_guard() {
        let u = a(3, 1, 2);
        let long = TraceWord::new(vec![u; 21]);
        assert!(matches!(nu_subindex_expansion(3, &long), Err(Error::TooLong { .. })));
    }

    #[test]
    fn lowest_component_examples() {
        let o = omega_oracle();
        for w in [vec![t(1)], vec![s(1)], vec![d(1)], vec![t(1), s(2), t(2), si(1)]] {
            let w = sw(3, &w);
            let p = desingularize(&w).unwrap();
            lowest_component_recover(&p, &decompose(&w, &o).unwrap()).unwrap();
        }
        let wrong = decompose(&sw(3, &[s(1)]), &o).unwrap();
        assert!(lowest_component_recover(&BraidRing::one(3), &wrong).is_err());
    }

    #[test]
    fn factorization_through_nu() {
        let o = omega_oracle();
        let w = sw(3, &[t(1), s(2), d(2), si(1), t(2)]);
        let e = decompose(&w, &o).unwrap();
        assert_eq!(
            desingularize(&w).unwrap(),
            nu(3, &e.trace).unwrap().mul_element(&e.braid).unwrap()
        );
    }

    #[test]
    fn json_shape() {
        let o = omega_oracle();
        let e = decompose(&sw(3, &[d(1)]), &o).unwrap();
        let j = e.to_json();
        assert_eq!(j["trace"].as_array().unwrap().len(), 1);
        assert_eq!(j["braid"], CanonicalBraid::identity(3).key());
    }
}
