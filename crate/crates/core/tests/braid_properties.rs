use proptest::prelude::*;

use sbraid::braid::{artin_action, braid_equals, normal_form, BraidWord, CanonicalBraid};
use sbraid::pure::{abelianize, classify_vertex, generator_a, is_pure};

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    let letter = (1..n as i32, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i });
    prop::collection::vec(letter, 0..=max_len).prop_map(move |l| BraidWord::from_signed(n, &l).unwrap())
}

fn sized_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=6).prop_flat_map(move |n| word(n, max_len))
}

fn pair(max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2usize..=5).prop_flat_map(move |n| (word(n, max_len), word(n, max_len)))
}

/// A pure braid built from the generators `A_ij`.
fn pure_word(n: usize) -> impl Strategy<Value = BraidWord> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    prop::collection::vec((prop::sample::select(pairs), any::<bool>()), 0..5).prop_map(move |gens| {
        gens.iter().fold(BraidWord::identity(n), |acc, &((i, j), inv)| {
            let a = generator_a(n, i, j).unwrap();
            acc.concat(&if inv { a.inverse() } else { a }).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_agrees_with_artin_action((w1, w2) in pair(10)) {
        let by_nf = braid_equals(&w1, &w2).unwrap();
        let by_action = artin_action(&w1).images() == artin_action(&w2).images();
        prop_assert_eq!(by_nf, by_action);
    }

    #[test]
    fn trivial_words_normalize_to_identity(w in sized_word(8)) {
        let trivial = w.concat(&w.inverse()).unwrap();
        prop_assert!(normal_form(&trivial).is_identity());
        let conj = trivial.conjugate_by(&w).unwrap();
        prop_assert!(normal_form(&conj).is_identity());
    }

    #[test]
    fn canonical_word_round_trip(w in sized_word(12)) {
        let nf = normal_form(&w);
        let back = nf.to_word();
        prop_assert_eq!(&normal_form(&back), &nf);
        prop_assert_eq!(artin_action(&back), artin_action(&w));
        prop_assert_eq!(CanonicalBraid::from_key(&nf.key()).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_a_homomorphism((w1, w2) in pair(8)) {
        let product = normal_form(&w1.concat(&w2).unwrap());
        prop_assert_eq!(&product, &normal_form(&w1).mul(&normal_form(&w2)).unwrap());
        prop_assert_eq!(normal_form(&w1.inverse()), normal_form(&w1).inverse());
    }

    #[test]
    fn permutation_and_degree_are_homomorphisms((w1, w2) in pair(8)) {
        let w = w1.concat(&w2).unwrap();
        prop_assert_eq!(w.theta(), w1.theta().compose(&w2.theta()));
        prop_assert_eq!(w.degree(), w1.degree() + w2.degree());
        prop_assert_eq!(normal_form(&w).degree(), w.degree());
        prop_assert_eq!(normal_form(&w).permutation(), w.theta());
    }

    #[test]
    fn factors_are_proper_and_left_weighted(w in sized_word(14)) {
        let nf = normal_form(&w);
        for p in nf.factors() {
            prop_assert!(!p.is_identity() && !p.is_half_twist());
        }
        for pair in nf.factors().windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let finishing = a.finishing_set();
            for i in b.starting_set() {
                prop_assert!(finishing.contains(&i), "factor {:?} then {:?}", a, b);
            }
        }
    }

    #[test]
    fn abelianization_is_additive_and_conjugation_invariant(
        (p, q, beta) in (3usize..=5).prop_flat_map(|n| (pure_word(n), pure_word(n), word(n, 6)))
    ) {
        prop_assert!(is_pure(&p));
        let sum = abelianize(&p.concat(&q).unwrap()).unwrap();
        prop_assert_eq!(&sum, &abelianize(&p).unwrap().add(&abelianize(&q).unwrap()).unwrap());
        // conjugating by a pure braid fixes the class
        let conj = p.conjugate_by(&q).unwrap();
        prop_assert_eq!(abelianize(&conj).unwrap(), abelianize(&p).unwrap());
        // conjugating by any braid relabels the strands by its permutation
        let before = abelianize(&p).unwrap();
        let after = abelianize(&p.conjugate_by(&beta).unwrap()).unwrap();
        let perm = beta.theta();
        for ((i, j), c) in before.entries() {
            let (a, b) = (perm.apply(i), perm.apply(j));
            prop_assert_eq!(after.get(a.min(b), a.max(b)), c);
        }
        prop_assert_eq!(after.entries().count(), before.entries().count());
    }

    #[test]
    fn vertices_land_in_one_stratum((alpha, i) in (3usize..=5).prop_flat_map(|n| (word(n, 6), 1..n))) {
        let n = alpha.n();
        let sq = BraidWord::from_signed(n, &[i as i32, i as i32]).unwrap();
        let u = normal_form(&sq.conjugate_by(&alpha).unwrap());
        prop_assert_eq!(u.degree(), 2);
        let class = classify_vertex(&u).unwrap();
        // the stratum is the pair of strand positions that σ_i swaps, pulled back by α
        let perm = alpha.theta();
        let (a, b) = (perm.apply(i), perm.apply(i + 1));
        prop_assert_eq!((class.i, class.j), (a.min(b), a.max(b)));
    }
}
