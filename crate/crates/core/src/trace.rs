//! Graph monoids (trace monoids) over an arbitrary ordered alphabet, with the
//! commutation relation supplied by an oracle.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::RwLock;

use crate::error::{Error, Result};

/// Decides whether two distinct letters commute. Must be symmetric; it is never
/// asked about a letter and itself.
pub trait CommutationOracle<L> {
    fn commutes(&self, a: &L, b: &L) -> bool;
}

impl<L, F: Fn(&L, &L) -> bool> CommutationOracle<L> for F {
    fn commutes(&self, a: &L, b: &L) -> bool {
        self(a, b)
    }
}

/// An explicit finite commutation graph.
#[derive(Debug, Clone)]
pub struct EdgeSet<L: Ord + Hash> {
    edges: HashSet<(L, L)>,
}

impl<L: Ord + Hash + Clone> EdgeSet<L> {
    pub fn new() -> Self {
        EdgeSet { edges: HashSet::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (L, L)>) -> Self {
        let mut set = EdgeSet::new();
        for (a, b) in pairs {
            set.insert(a, b);
        }
        set
    }

    pub fn insert(&mut self, a: L, b: L) {
        if a < b {
            self.edges.insert((a, b));
        } else {
            self.edges.insert((b, a));
        }
    }

    pub fn contains(&self, a: &L, b: &L) -> bool {
        if a < b {
            self.edges.contains(&(a.clone(), b.clone()))
        } else {
            self.edges.contains(&(b.clone(), a.clone()))
        }
    }
}

impl<L: Ord + Hash + Clone> Default for EdgeSet<L> {
    fn default() -> Self {
        EdgeSet::new()
    }
}

impl<L: Ord + Hash + Clone> CommutationOracle<L> for EdgeSet<L> {
    fn commutes(&self, a: &L, b: &L) -> bool {
        self.contains(a, b)
    }
}

/// Caches an expensive oracle. Lookups are keyed on the ordered letter pair.
pub struct Memoized<L, O> {
    inner: O,
    memo: RwLock<HashMap<(L, L), bool>>,
}

impl<L: Ord + Hash + Clone, O: CommutationOracle<L>> Memoized<L, O> {
    pub fn new(inner: O) -> Self {
        Memoized {
            inner,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn cached(&self) -> usize {
        self.memo.read().unwrap().len()
    }
}

impl<L: Ord + Hash + Clone, O: CommutationOracle<L>> CommutationOracle<L> for Memoized<L, O> {
    fn commutes(&self, a: &L, b: &L) -> bool {
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(&hit) = self.memo.read().unwrap().get(&key) {
            return hit;
        }
        let value = self.inner.commutes(a, b);
        self.memo.write().unwrap().insert(key, value);
        value
    }
}

/// A word in a graph monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord<L> {
    letters: Vec<L>,
}

impl<L: Clone + Ord> TraceWord<L> {
    pub fn new(letters: Vec<L>) -> Self {
        TraceWord { letters }
    }

    pub fn empty() -> Self {
        TraceWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &TraceWord<L>) -> TraceWord<L> {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TraceWord { letters }
    }

    /// Letter counts; an invariant of the trace class.
    pub fn multiset(&self) -> BTreeMap<L, usize> {
        let mut out = BTreeMap::new();
        for l in &self.letters {
            *out.entry(l.clone()).or_insert(0) += 1;
        }
        out
    }
}

impl<L: fmt::Display> fmt::Display for TraceWord<L> {
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

/// The lexicographically least word in the trace class of `w`.
///
/// Greedy: an occurrence may be emitted once every earlier pending occurrence is
/// a different letter commuting with it; the smallest such letter goes next.
pub fn trace_normal_form<L, O>(w: &TraceWord<L>, oracle: &O) -> TraceWord<L>
where
    L: Clone + Ord,
    O: CommutationOracle<L> + ?Sized,
{
    let mut pending: Vec<&L> = w.letters.iter().collect();
    let mut out = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let mut best: Option<usize> = None;
        for j in 0..pending.len() {
            let candidate = pending[j];
            if let Some(b) = best {
                if pending[b] <= candidate {
                    continue;
                }
            }
            let free = pending[..j]
                .iter()
                .all(|&earlier| earlier != candidate && oracle.commutes(earlier, candidate));
            if free {
                best = Some(j);
            }
        }
        let j = best.expect("the first pending letter is always available");
        out.push(pending.remove(j).clone());
    }
    TraceWord { letters: out }
}

pub fn trace_equals<L, O>(w1: &TraceWord<L>, w2: &TraceWord<L>, oracle: &O) -> bool
where
    L: Clone + Ord,
    O: CommutationOracle<L> + ?Sized,
{
    w1.len() == w2.len() && trace_normal_form(w1, oracle) == trace_normal_form(w2, oracle)
}

/// Outcome of checking the exchange property on an equal pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExchangeVerdict<L> {
    /// Every `{y_i, x_1}` with `i < k` is an edge; the edges checked, in order.
    Verified(Vec<(L, L)>),
    /// `y_index` (1-based) does not commute with `x_1`.
    Counterexample { index: usize },
}

/// For `x = y` in the monoid with `y_k = x_1` the first occurrence of `x_1` in
/// `y`, checks that `y_i` commutes with `x_1` for all `i < k` (1-based `k`).
pub fn exchange_check<L, O>(x: &TraceWord<L>, y: &TraceWord<L>, k: usize, oracle: &O) -> Result<ExchangeVerdict<L>>
where
    L: Clone + Ord,
    O: CommutationOracle<L> + ?Sized,
{
    let first = x
        .letters
        .first()
        .ok_or_else(|| Error::Precondition("x is empty".into()))?;
    if k == 0 || k > y.len() {
        return Err(Error::Precondition(format!("k = {k} out of range")));
    }
    if &y.letters[k - 1] != first || y.letters[..k - 1].contains(first) {
        return Err(Error::Precondition(
            "y_k must be the first occurrence of x_1 in y".into(),
        ));
    }
    if !trace_equals(x, y, oracle) {
        return Err(Error::Precondition("x and y are not equal traces".into()));
    }
    let mut edges = Vec::with_capacity(k - 1);
    for (idx, yi) in y.letters[..k - 1].iter().enumerate() {
        if !oracle.commutes(yi, first) {
            return Ok(ExchangeVerdict::Counterexample { index: idx + 1 });
        }
        edges.push((yi.clone(), first.clone()));
    }
    Ok(ExchangeVerdict::Verified(edges))
}
