//! Randomized and exhaustive verification suites. Each suite checks one family
//! of identities at desk scale against an independent oracle and reports the
//! number of instances checked together with any failures.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{artin_action, braid_equals, BraidWord, CanonicalBraid, Letter};
use crate::error::{Error, Result};
use crate::free::{
    check_prop51_instance, magnus_expand, verify_prop41_desk, FreeAutomorphismSpec, FreeLetter, FreeWord, HatBlock,
    HatWord, Prop51Verdict,
};
use crate::pure::{check_conjugation_identity, conjugation_rhs, generator_a, pure_relation};
use crate::singular::{
    decompose, desingularize, lowest_component_recover, nu, nu_subindex_expansion, omega_oracle, vertex_commutes,
    SingularLetter, SingularWord, Vertex,
};
use crate::trace::{exchange_check, trace_equals, trace_normal_form, EdgeSet, ExchangeVerdict, TraceWord};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "word-problem",
    "relations",
    "lemma32",
    "lemma21",
    "eta-injectivity",
    "factorization",
    "eq32",
    "cf-exchange",
    "prop41",
    "lemma42",
    "prop51",
    "cor52",
];

pub const DEFAULT_SEED: u64 = 20_061;

const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Wall-clock cap; a suite that runs out stops early and reports `complete: false`.
    pub budget: Option<Duration>,
    /// Overrides the default word length of the randomized suites.
    pub max_len: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            budget: None,
            max_len: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures, described.
    pub failures: Vec<String>,
    pub complete: bool,
    pub elapsed_ms: u128,
    pub stats: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

struct Run {
    report: SuiteReport,
    start: Instant,
    budget: Option<Duration>,
}

impl Run {
    fn new(suite: &str, budget: Option<Duration>) -> Self {
        Run {
            report: SuiteReport {
                suite: suite.to_string(),
                checked: 0,
                failure_count: 0,
                failures: Vec::new(),
                complete: true,
                elapsed_ms: 0,
                stats: BTreeMap::new(),
            },
            start: Instant::now(),
            budget,
        }
    }

    fn out_of_time(&mut self) -> bool {
        let over = self.budget.is_some_and(|b| self.start.elapsed() > b);
        if over {
            self.report.complete = false;
        }
        over
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.report.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.report.failure_count += 1;
        if self.report.failures.len() < MAX_REPORTED_FAILURES {
            self.report.failures.push(message);
        }
    }

    fn stat(&mut self, key: &str, by: u64) {
        *self.report.stats.entry(key.to_string()).or_insert(0) += by;
    }

    fn finish(mut self) -> SuiteReport {
        self.report.elapsed_ms = self.start.elapsed().as_millis();
        self.report
    }
}

/// Runs a suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut run = Run::new(name, opts.budget);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let outcome = match name {
        "word-problem" => word_problem(&mut run, &mut rng, opts.max_len.unwrap_or(12)),
        "relations" => relations(&mut run),
        "lemma32" => conjugation_table(&mut run),
        "lemma21" => square_exchange(&mut run, &mut rng, opts.max_len.unwrap_or(6)),
        "eta-injectivity" => eta_injectivity(&mut run, opts.max_len.unwrap_or(4)),
        "factorization" => factorization(&mut run, &mut rng, opts.max_len.unwrap_or(6)),
        "eq32" => subindex_expansion(&mut run, &mut rng),
        "cf-exchange" => trace_closure(&mut run, &mut rng, opts.max_len.unwrap_or(6)),
        "prop41" => free_injectivity(&mut run, opts.max_len.unwrap_or(3)),
        "lemma42" => series_separation(&mut run),
        "prop51" => fixed_factors(&mut run, &mut rng),
        "cor52" => commuting_factors(&mut run, &mut rng),
        _ => {
            return Err(Error::Precondition(format!(
                "unknown suite `{name}`; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    if let Err(e) = outcome {
        run.fail(format!("error: {e}"));
    }
    Ok(run.finish())
}

fn random_letter(rng: &mut ChaCha8Rng, n: usize) -> Letter {
    Letter {
        index: rng.gen_range(1..n),
        inverse: rng.gen_bool(0.5),
    }
}

fn random_braid(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| random_letter(rng, n)).collect();
    BraidWord::new(n, letters).expect("indices in range")
}

fn random_singular(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> SingularWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            match rng.gen_range(0..4) {
                0 => SingularLetter::Sigma(Letter::pos(i)),
                1 => SingularLetter::Sigma(Letter::neg(i)),
                2 => SingularLetter::Tau(i),
                _ => SingularLetter::Delta(i),
            }
        })
        .collect();
    SingularWord::new(n, letters).expect("indices in range")
}

/// One random move that preserves the braid, if any applies.
fn rewrite_step(rng: &mut ChaCha8Rng, letters: &mut Vec<Letter>, n: usize, max_len: usize) {
    let mut moves: Vec<(usize, u8)> = Vec::new();
    for p in 0..letters.len() {
        if p + 1 < letters.len() {
            let (x, y) = (letters[p], letters[p + 1]);
            if x.index.abs_diff(y.index) > 1 {
                moves.push((p, 0));
            }
            if x == y.inverted() {
                moves.push((p, 1));
            }
        }
        if p + 2 < letters.len() {
            let (x, y, z) = (letters[p], letters[p + 1], letters[p + 2]);
            if x.index.abs_diff(y.index) == 1 {
                if x == z && x.inverse == y.inverse {
                    moves.push((p, 2));
                }
                // σ_i^e σ_j^e σ_i^-e  ->  σ_j^-e σ_i^e σ_j^e
                if x.inverse == y.inverse && z == x.inverted() {
                    moves.push((p, 3));
                }
                // σ_j^-e σ_i^e σ_j^e  ->  σ_i^e σ_j^e σ_i^-e
                if y.inverse == z.inverse && x == z.inverted() {
                    moves.push((p, 4));
                }
            }
        }
    }
    if letters.len() + 2 <= max_len {
        moves.push((rng.gen_range(0..=letters.len()), 5));
    }
    let Some(&(p, kind)) = moves.choose(rng) else {
        return;
    };
    match kind {
        0 => letters.swap(p, p + 1),
        1 => {
            letters.drain(p..p + 2);
        }
        2 => {
            let (x, y) = (letters[p], letters[p + 1]);
            letters[p..p + 3].copy_from_slice(&[y, x, y]);
        }
        3 => {
            let (x, y) = (letters[p], letters[p + 1]);
            letters[p..p + 3].copy_from_slice(&[y.inverted(), x, y]);
        }
        4 => {
            let (y, z) = (letters[p + 1], letters[p + 2]);
            letters[p..p + 3].copy_from_slice(&[y, z, y.inverted()]);
        }
        _ => {
            let l = random_letter(rng, n);
            letters.splice(p..p, [l, l.inverted()]);
        }
    }
}

fn word_problem(run: &mut Run, rng: &mut ChaCha8Rng, max_len: usize) -> Result<()> {
    for n in 2..=5 {
        for pair in 0..1000 {
            if run.out_of_time() {
                return Ok(());
            }
            let w1 = random_braid(rng, n, max_len);
            let w2 = if pair % 2 == 0 {
                let mut letters = w1.letters().to_vec();
                for _ in 0..rng.gen_range(1..=8) {
                    rewrite_step(rng, &mut letters, n, max_len);
                }
                BraidWord::new(n, letters)?
            } else if pair % 4 == 1 || w1.is_empty() {
                random_braid(rng, n, max_len)
            } else {
                let mut letters = w1.letters().to_vec();
                let p = rng.gen_range(0..letters.len());
                letters[p] = random_letter(rng, n);
                BraidWord::new(n, letters)?
            };
            let garside = braid_equals(&w1, &w2)?;
            let artin = artin_action(&w1).images() == artin_action(&w2).images();
            run.check(garside == artin, || {
                format!("n={n}: `{w1}` vs `{w2}`: normal forms say {garside}, Artin action says {artin}")
            });
            if artin {
                run.stat("equal-pairs", 1);
            }
        }
    }
    Ok(())
}

fn sw(n: usize, letters: &[SingularLetter]) -> Result<SingularWord> {
    SingularWord::new(n, letters.to_vec())
}

fn relations(run: &mut Run) -> Result<()> {
    use SingularLetter::{Delta, Sigma, Tau};
    let s = |i| Sigma(Letter::pos(i));
    let si = |i| Sigma(Letter::neg(i));
    let oracle = omega_oracle();
    for n in 2..=5 {
        // (lhs, rhs, expected equality)
        let mut cases: Vec<(&str, Vec<SingularLetter>, Vec<SingularLetter>, bool)> = Vec::new();
        for i in 1..n {
            cases.push(("inverse", vec![s(i), si(i)], vec![], true));
            cases.push(("inverse", vec![si(i), s(i)], vec![], true));
            cases.push(("sigma-tau", vec![s(i), Tau(i)], vec![Tau(i), s(i)], true));
            cases.push(("sigma-delta", vec![s(i), Delta(i)], vec![Delta(i), s(i)], true));
            cases.push(("delta-def", vec![Delta(i)], vec![s(i), Tau(i)], true));
            for j in 1..n {
                if i.abs_diff(j) > 1 {
                    cases.push(("far-sigma", vec![s(i), s(j)], vec![s(j), s(i)], true));
                    cases.push(("far-sigma-tau", vec![s(i), Tau(j)], vec![Tau(j), s(i)], true));
                    cases.push(("far-tau", vec![Tau(i), Tau(j)], vec![Tau(j), Tau(i)], true));
                    cases.push(("far-sigma-delta", vec![s(i), Delta(j)], vec![Delta(j), s(i)], true));
                    cases.push(("far-delta", vec![Delta(i), Delta(j)], vec![Delta(j), Delta(i)], true));
                } else if i.abs_diff(j) == 1 {
                    cases.push(("braid", vec![s(i), s(j), s(i)], vec![s(j), s(i), s(j)], true));
                    cases.push(("braid-tau", vec![s(i), s(j), Tau(i)], vec![Tau(j), s(i), s(j)], true));
                    cases.push((
                        "braid-delta",
                        vec![s(i), s(j), Delta(i)],
                        vec![Delta(j), s(i), s(j)],
                        true,
                    ));
                    cases.push(("control-sigma", vec![s(i), s(j)], vec![s(j), s(i)], false));
                    cases.push(("control-tau", vec![Tau(i), Tau(j)], vec![Tau(j), Tau(i)], false));
                    cases.push(("control-sigma-tau", vec![s(i), Tau(j)], vec![Tau(j), s(i)], false));
                }
            }
        }
        for (family, lhs, rhs, expected) in cases {
            if run.out_of_time() {
                return Ok(());
            }
            let (l, r) = (sw(n, &lhs)?, sw(n, &rhs)?);
            let equal = decompose(&l, &oracle)? == decompose(&r, &oracle)?;
            run.check(equal == expected, || {
                format!("n={n} {family}: `{l}` = `{r}` expected {expected}, got {equal}")
            });
            if lhs.iter().chain(&rhs).all(|x| matches!(x, Sigma(_))) {
                // braid relations also go through the group word problem
                let to_braid = |w: &SingularWord| {
                    let letters = w
                        .letters()
                        .iter()
                        .map(|x| match x {
                            Sigma(l) => *l,
                            _ => unreachable!(),
                        })
                        .collect();
                    BraidWord::new(n, letters)
                };
                let equal = braid_equals(&to_braid(&l)?, &to_braid(&r)?)?;
                run.check(equal == expected, || {
                    format!("n={n} {family} in B_n: `{l}` = `{r}` expected {expected}, got {equal}")
                });
            }
            run.stat(family, 1);
        }
        for r in 1..=n {
            for s in r + 1..=n {
                for i in 1..=n {
                    for j in i + 1..=n {
                        if let Some((lhs, rhs)) = pure_relation(n, r, s, i, j)? {
                            let ok = braid_equals(&lhs, &rhs)?;
                            run.check(ok, || format!("n={n}: pure relation (r,s,i,j)=({r},{s},{i},{j})"));
                            run.stat("pure", 1);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn conjugation_table(run: &mut Run) -> Result<()> {
    for n in [4, 5] {
        for r in 1..n {
            for i in 1..=n {
                for j in i + 1..=n {
                    let (case, _) = conjugation_rhs(n, r, i, j)?;
                    let ok = check_conjugation_identity(n, r, i, j)?;
                    run.check(ok, || format!("n={n}: σ{r} A{i}{j} σ{r}^-1 ({case:?})"));
                    run.stat(&format!("{case:?}"), 1);
                }
            }
        }
    }
    Ok(())
}

fn square_exchange(run: &mut Run, rng: &mut ChaCha8Rng, max_len: usize) -> Result<()> {
    use SingularLetter::{Delta, Sigma};
    let n = 4;
    let oracle = omega_oracle();
    for _ in 0..500 {
        if run.out_of_time() {
            return Ok(());
        }
        let beta = random_singular(rng, n, max_len);
        for i in 1..n {
            for j in 1..n {
                let sq = |k| sw(n, &[Sigma(Letter::pos(k)), Sigma(Letter::pos(k))]);
                let d = |k| sw(n, &[Delta(k)]);
                let squares =
                    decompose(&beta.concat(&sq(i)?)?, &oracle)? == decompose(&sq(j)?.concat(&beta)?, &oracle)?;
                let deltas = decompose(&beta.concat(&d(i)?)?, &oracle)? == decompose(&d(j)?.concat(&beta)?, &oracle)?;
                run.check(squares == deltas, || {
                    format!("β=`{beta}`, i={i}, j={j}: squares {squares}, deltas {deltas}")
                });
                if squares {
                    run.stat("holding", 1);
                }
            }
        }
    }
    Ok(())
}

fn all_words(n: usize, max_len: usize) -> Vec<SingularWord> {
    let mut alphabet = Vec::new();
    for i in 1..n {
        alphabet.push(SingularLetter::Sigma(Letter::pos(i)));
        alphabet.push(SingularLetter::Sigma(Letter::neg(i)));
        alphabet.push(SingularLetter::Tau(i));
        alphabet.push(SingularLetter::Delta(i));
    }
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<SingularLetter>> = frontier
            .iter()
            .flat_map(|w: &Vec<SingularLetter>| {
                alphabet.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter()
        .map(|letters| SingularWord::new(n, letters).expect("indices in range"))
        .collect()
}

type Image = Vec<(String, i64)>;

fn eta_injectivity(run: &mut Run, max_len: usize) -> Result<()> {
    if max_len > 5 {
        return Err(Error::TooLong { len: max_len, limit: 5 });
    }
    let n = 3;
    let words = all_words(n, max_len);
    let oracle = omega_oracle();
    let mut by_class: HashMap<String, (usize, Image)> = HashMap::new();
    let mut by_image: HashMap<Image, (usize, String)> = HashMap::new();
    for chunk in words.chunks(512) {
        if run.out_of_time() {
            return Ok(());
        }
        let computed: Vec<Result<(String, Image)>> = chunk
            .par_iter()
            .map(|w| {
                let class = decompose(w, &oracle)?.to_json().to_string();
                Ok((class, desingularize(w)?.sorted_terms()))
            })
            .collect();
        for (w, c) in chunk.iter().zip(computed) {
            let (class, image) = c?;
            let idx = run.report.checked as usize;
            match by_class.get(&class) {
                Some((first, img)) => {
                    let same = img == &image;
                    run.check(same, || {
                        format!(
                            "`{w}` and `{}` decompose equally but have different images",
                            words[*first]
                        )
                    });
                }
                None => {
                    match by_image.get(&image) {
                        Some((first, other)) if other != &class => {
                            run.check(false, || format!("η collision: `{w}` and `{}`", words[*first]));
                        }
                        _ => {
                            run.check(true, String::new);
                            by_image.insert(image.clone(), (idx, class.clone()));
                        }
                    }
                    by_class.insert(class, (idx, image));
                }
            }
        }
    }
    run.stat("words", words.len() as u64);
    run.stat("classes", by_class.len() as u64);
    Ok(())
}

fn factorization(run: &mut Run, rng: &mut ChaCha8Rng, max_len: usize) -> Result<()> {
    let oracle = omega_oracle();
    for _ in 0..500 {
        if run.out_of_time() {
            return Ok(());
        }
        let n = rng.gen_range(2..=4);
        let w = random_singular(rng, n, max_len);
        let e = decompose(&w, &oracle)?;
        let p = desingularize(&w)?;
        let via_nu = nu(n, &e.trace)?.mul_element(&e.braid)?;
        run.check(p == via_nu, || format!("`{w}`: η differs from ν(trace)·braid"));
        let lowest = lowest_component_recover(&p, &e);
        run.check(lowest.is_ok(), || format!("`{w}`: {}", lowest.unwrap_err()));
        run.stat(&format!("singular-{}", e.trace.len()), 1);
    }
    Ok(())
}

fn random_vertex(rng: &mut ChaCha8Rng, n: usize) -> Result<Vertex> {
    let alpha = CanonicalBraid::from_word(&random_braid(rng, n, 4));
    Vertex::conjugate(&alpha, rng.gen_range(1..n))
}

fn subindex_expansion(run: &mut Run, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..200 {
        if run.out_of_time() {
            return Ok(());
        }
        let n = rng.gen_range(2..=4);
        let l = rng.gen_range(0..=4);
        let letters = (0..l).map(|_| random_vertex(rng, n)).collect::<Result<Vec<_>>>()?;
        let t = TraceWord::new(letters);
        let direct = nu(n, &t)?;
        let expanded = nu_subindex_expansion(n, &t)?;
        run.check(direct == expanded, || format!("n={n}, trace {t}"));
        run.stat(&format!("length-{l}"), 1);
    }
    Ok(())
}

/// Every word reachable from `w` by swapping adjacent distinct commuting letters.
fn exchange_closure(w: &[char], g: &EdgeSet<char>) -> HashSet<Vec<char>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for p in 0..u.len().saturating_sub(1) {
            if u[p] != u[p + 1] && g.contains(&u[p], &u[p + 1]) {
                let mut v = u.clone();
                v.swap(p, p + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

fn trace_closure(run: &mut Run, rng: &mut ChaCha8Rng, max_len: usize) -> Result<()> {
    for _ in 0..200 {
        if run.out_of_time() {
            return Ok(());
        }
        let size = rng.gen_range(1..=6u8);
        let letters: Vec<char> = (0..size).map(|k| (b'a' + k) as char).collect();
        let mut g = EdgeSet::new();
        for (x, &a) in letters.iter().enumerate() {
            for &b in &letters[x + 1..] {
                if rng.gen_bool(0.5) {
                    g.insert(a, b);
                }
            }
        }
        for _ in 0..5 {
            let len = rng.gen_range(0..=max_len);
            let w: Vec<char> = (0..len).map(|_| *letters.choose(rng).unwrap()).collect();
            let closure = exchange_closure(&w, &g);
            let tw = TraceWord::new(w.clone());

            let least = closure.iter().min().unwrap().clone();
            let nf = trace_normal_form(&tw, &g);
            run.check(nf.letters() == least.as_slice(), || {
                format!(
                    "normal form of {tw} is {nf}, closure minimum is {}",
                    least.iter().collect::<String>()
                )
            });

            let mut shuffled = w.clone();
            shuffled.shuffle(rng);
            let random: Vec<char> = (0..len).map(|_| *letters.choose(rng).unwrap()).collect();
            let member = closure
                .iter()
                .collect::<Vec<_>>()
                .choose(rng)
                .map(|v| v.to_vec())
                .unwrap();
            for other in [shuffled, random, member] {
                let expected = closure.contains(&other);
                let got = trace_equals(&tw, &TraceWord::new(other.clone()), &g);
                run.check(got == expected, || {
                    format!("{tw} vs {}: closure says {expected}", other.iter().collect::<String>())
                });
                run.stat(if expected { "equal-pairs" } else { "distinct-pairs" }, 1);
            }

            let Some(&first) = w.first() else { continue };
            for y in &closure {
                let k = y.iter().position(|&c| c == first).unwrap() + 1;
                let verdict = exchange_check(&tw, &TraceWord::new(y.clone()), k, &g)?;
                let ok = match &verdict {
                    ExchangeVerdict::Verified(edges) => edges.iter().all(|(a, b)| g.contains(a, b)),
                    ExchangeVerdict::Counterexample { .. } => false,
                };
                run.check(ok, || {
                    format!(
                        "exchange property fails for {tw} and {}: {verdict:?}",
                        y.iter().collect::<String>()
                    )
                });
                run.stat("exchange-instances", 1);
            }
        }
    }
    Ok(())
}

fn free_injectivity(run: &mut Run, max_len: usize) -> Result<()> {
    let report = verify_prop41_desk(2, 1, max_len)?;
    run.report.checked += report.checked;
    for c in report.collisions {
        run.fail(format!("ν collision: {c}"));
    }
    Ok(())
}

fn fingerprint<T: Hash>(value: &T) -> (u64, u64) {
    let mut a = DefaultHasher::new();
    value.hash(&mut a);
    let mut b = DefaultHasher::new();
    0x9e37_79b9_7f4a_7c15u64.hash(&mut b);
    value.hash(&mut b);
    (a.finish(), b.finish())
}

/// Every normal form of rank 2 with at most `max_blocks` syllables and exponents in `[-bound, bound]`.
pub fn hat_words(rank: usize, max_blocks: usize, bound: i64) -> Vec<HatWord> {
    let mut syllables = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            if (p, q) != (0, 0) {
                syllables.push((p, q));
            }
        }
    }
    let mut out = vec![Vec::<HatBlock>::new()];
    let mut frontier = vec![Vec::<HatBlock>::new()];
    for _ in 0..max_blocks {
        let mut next = Vec::new();
        for w in &frontier {
            for generator in 0..rank {
                if w.last().is_some_and(|b| b.generator == generator) {
                    continue;
                }
                for &(hat_exp, plain_exp) in &syllables {
                    let mut v = w.clone();
                    v.push(HatBlock {
                        generator,
                        hat_exp,
                        plain_exp,
                    });
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter()
        .map(|blocks| HatWord::from_blocks(rank, blocks).expect("generators in range"))
        .collect()
}

fn series_separation(run: &mut Run) -> Result<()> {
    const CUTOFF: i64 = 12;
    let words = hat_words(2, 3, 2);
    let mut seen: HashMap<(u64, u64), usize> = HashMap::new();
    for (c, chunk) in words.chunks(2048).enumerate() {
        if run.out_of_time() {
            return Ok(());
        }
        let prints: Vec<Result<(u64, u64)>> = chunk
            .par_iter()
            .map(|h| Ok(fingerprint(&magnus_expand(h, CUTOFF)?)))
            .collect();
        for (offset, fp) in prints.into_iter().enumerate() {
            let idx = c * 2048 + offset;
            let fp = fp?;
            match seen.get(&fp) {
                Some(&first) => {
                    let equal = magnus_expand(&words[first], CUTOFF)? == magnus_expand(&words[idx], CUTOFF)?;
                    run.check(!equal, || {
                        format!(
                            "equal series up to degree {CUTOFF}: {} and {}",
                            words[first], words[idx]
                        )
                    });
                    if !equal {
                        run.stat("fingerprint-collisions", 1);
                    }
                }
                None => {
                    run.check(true, String::new);
                    seen.insert(fp, idx);
                }
            }
        }
    }
    run.stat("words", words.len() as u64);
    Ok(())
}

fn random_free_word(rng: &mut ChaCha8Rng, rank: usize, gens: &[usize], max_len: usize) -> Result<FreeWord> {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<FreeLetter> = (0..len)
        .map(|_| FreeLetter::new(*gens.choose(rng).unwrap(), rng.gen_bool(0.5)))
        .collect();
    FreeWord::new(rank, letters)
}

fn random_automorphism(rng: &mut ChaCha8Rng, rank: usize) -> Result<FreeAutomorphismSpec> {
    let mut rho = FreeAutomorphismSpec::identity(rank, 0)?;
    for _ in 0..rng.gen_range(1..=4) {
        let a = rng.gen_range(1..rank);
        let step = if rank < 3 || rng.gen_range(0..3) == 0 {
            FreeAutomorphismSpec::inversion(rank, 0, a)?
        } else {
            let mut b = rng.gen_range(1..rank - 1);
            if b >= a {
                b += 1;
            }
            if rng.gen_bool(0.5) {
                FreeAutomorphismSpec::swap(rank, 0, a, b)?
            } else {
                FreeAutomorphismSpec::transvection(rank, 0, a, b, rng.gen_bool(0.5))?
            }
        };
        rho = step.compose(&rho)?;
    }
    Ok(rho)
}

fn fixed_factors(run: &mut Run, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..1000 {
        if run.out_of_time() {
            return Ok(());
        }
        let rank = rng.gen_range(2..=4);
        let rho = random_automorphism(rng, rank)?;
        let all: Vec<usize> = (0..rank).collect();
        let fixed: Vec<usize> = all
            .iter()
            .copied()
            .filter(|&g| rho.images()[g] == FreeWord::generator(rank, g).unwrap())
            .collect();
        let x0 = FreeWord::generator(rank, 0)?;
        let l = rng.gen_range(1..=4);
        let mut ys = Vec::with_capacity(l);
        for _ in 0..l {
            // conjugators built from fixed generators give products that ρ fixes
            let gens = if rng.gen_bool(0.6) { &fixed } else { &all };
            ys.push(x0.conjugate_by(&random_free_word(rng, rank, gens, 3)?)?);
        }
        let verdict = check_prop51_instance(&rho, &ys)?;
        run.check(!matches!(verdict, Prop51Verdict::Counterexample { .. }), || {
            let ys: Vec<String> = ys.iter().map(|y| y.to_string()).collect();
            format!(
                "ρ = {:?} fixes the product of [{}] but not each factor",
                rho.images(),
                ys.join(", ")
            )
        });
        run.stat(
            match verdict {
                Prop51Verdict::FactorsFixed => "product-fixed",
                Prop51Verdict::ProductMoved => "product-moved",
                Prop51Verdict::Counterexample { .. } => "counterexamples",
            },
            1,
        );
    }
    Ok(())
}

fn random_stratum_vertex(rng: &mut ChaCha8Rng, gens: &[BraidWord], base: &BraidWord) -> Result<Vertex> {
    let len = rng.gen_range(0..=2);
    let mut alpha = BraidWord::identity(base.n());
    for _ in 0..len {
        let g = gens.choose(rng).unwrap();
        let g = if rng.gen_bool(0.5) { g.inverse() } else { g.clone() };
        alpha = alpha.concat(&g)?;
    }
    Vertex::from_braid(CanonicalBraid::from_word(&base.conjugate_by(&alpha)?))
}

fn commuting_factors(run: &mut Run, rng: &mut ChaCha8Rng) -> Result<()> {
    let n = 4;
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            gens.push(generator_a(n, i, j)?);
        }
    }
    let a12 = generator_a(n, 1, 2)?;
    let a34 = generator_a(n, 3, 4)?;
    for _ in 0..1000 {
        if run.out_of_time() {
            return Ok(());
        }
        let u = random_stratum_vertex(rng, &gens, &a12)?;
        let l = rng.gen_range(1..=3);
        let vs = (0..l)
            .map(|_| random_stratum_vertex(rng, &gens, &a34))
            .collect::<Result<Vec<_>>>()?;
        let product = vs
            .iter()
            .try_fold(CanonicalBraid::identity(n), |acc, v| acc.mul(v.braid()))?;
        let hypothesis = u.braid().mul(&product)? == product.mul(u.braid())?;
        let conclusion = vs.iter().all(|v| vertex_commutes(&u, v));
        run.check(!hypothesis || conclusion, || {
            let keys: Vec<&str> = vs.iter().map(|v| v.key()).collect();
            format!(
                "u = {} commutes with the product of [{}] but not with each factor",
                u.key(),
                keys.join(", ")
            )
        });
        run.stat(
            if hypothesis {
                "commuting-product"
            } else {
                "noncommuting-product"
            },
            1,
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rewriting_preserves_the_braid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let w = random_braid(&mut rng, n, 10);
            let mut letters = w.letters().to_vec();
            for _ in 0..10 {
                rewrite_step(&mut rng, &mut letters, n, 12);
            }
            let v = BraidWord::new(n, letters).unwrap();
            assert_eq!(artin_action(&w).images(), artin_action(&v).images(), "{w} vs {v}");
        }
    }

    #[test]
    fn closure_of_commuting_letters() {
        let g = EdgeSet::from_pairs([('a', 'c'), ('b', 'c')]);
        let c = exchange_closure(&['c', 'a', 'b'], &g);
        assert_eq!(c.len(), 3);
        assert!(c.contains(&vec!['a', 'b', 'c']));
    }

    #[test]
    fn hat_word_count() {
        assert_eq!(hat_words(2, 1, 2).len(), 1 + 2 * 24);
        assert_eq!(hat_words(2, 2, 1).len(), 1 + 2 * 8 + 2 * 64);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &VerifyOptions::default()).is_err());
    }

    #[test]
    fn budget_marks_incomplete() {
        let opts = VerifyOptions {
            budget: Some(Duration::ZERO),
            ..VerifyOptions::default()
        };
        let report = run_suite("word-problem", &opts).unwrap();
        assert!(!report.complete);
        assert!(report.passed());
    }
}
