mod oracles;

use btforge_core::erroranalysis::{
    classify_errors, classify_sentence, error_rates, stem, wer_align, AlignOp, ErrorClass, ErrorClassCounts,
};
use btforge_core::Sentence;
use oracles::{textbook_distance, toks};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn counts_of(r: &str, h: &str) -> ErrorClassCounts {
    let (r, h) = (toks(r), toks(h));
    classify_errors(&r, &h, &wer_align(&r, &h)).unwrap()
}

#[test]
fn stemmer_cases() {
    assert_eq!(stem("cat"), "cat");
    assert_eq!(stem("cats"), "cat");
    // -ing strips to "runn", which then undoubles
    assert_eq!(stem("running"), "run");
}

#[test]
fn alignment_cases() {
    let a = wer_align(&toks("a b"), &toks("b"));
    assert_eq!(a.ops, vec![AlignOp::Delete { r: 0 }, AlignOp::Match { r: 1, h: 0 }]);
    let a = wer_align(&toks("x y z"), &toks("x y z"));
    assert!(a.ops.iter().all(|op| matches!(op, AlignOp::Match { .. })));
}

#[test]
fn random_eight_token_pairs_match_textbook_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let vocab = ["a", "b", "c", "d"];
    for _ in 0..2000 {
        let mut draw = || -> Sentence { (0..8).map(|_| vocab[rng.gen_range(0..4)].to_string()).collect() };
        let (r, h) = (draw(), draw());
        assert_eq!(wer_align(&r, &h).edit_count(), textbook_distance(&r, &h));
    }
}

#[test]
fn forced_classifications() {
    let c = counts_of("the cats sleep", "the cat sleep");
    assert_eq!((c.reference_count(ErrorClass::Morph), c.hypothesis_count(ErrorClass::Morph)), (1, 1));
    assert_eq!(c.reference.iter().sum::<u64>() + c.hypothesis.iter().sum::<u64>(), 2);

    let c = counts_of("a b", "b a");
    assert_eq!((c.reference_count(ErrorClass::Order), c.hypothesis_count(ErrorClass::Order)), (2, 2));

    let c = counts_of("a b c", "a b c");
    assert_eq!(c.reference, [0; 5]);
    assert_eq!(c.hypothesis, [0; 5]);
}

#[test]
fn omission_plus_mistranslation() {
    // "old" is deleted and absent from the hypothesis; "sandwich"/"burger" is a
    // substitution with no shared stem and neither word on the other side.
    let (r, h) = (toks("the old man ate a sandwich"), toks("the man ate a burger"));
    let s = classify_sentence(&r, &h, &wer_align(&r, &h)).unwrap();
    use ErrorClass::*;
    assert_eq!(s.reference, vec![None, Some(Omission), None, None, None, Some(Mistranslation)]);
    assert_eq!(s.hypothesis, vec![None, None, None, None, Some(Mistranslation)]);
}

#[test]
fn rate_arithmetic() {
    let c = ErrorClassCounts {
        reference: [2, 3, 4, 0, 5],
        hypothesis: [2, 1, 0, 6, 3],
        ref_total: 40,
        hyp_total: 50,
    };
    let r = error_rates(&c).unwrap();
    let expect = [4.5, 4.75, 10.0, 12.0, 9.25];
    for (class, e) in ErrorClass::ALL.into_iter().zip(expect) {
        assert!((r.get(class) - e).abs() < 1e-12, "{class:?}");
    }

    let one = ErrorClassCounts {
        reference: [0, 0, 1, 0, 0],
        ref_total: 10,
        hyp_total: 9,
        ..Default::default()
    };
    assert_eq!(error_rates(&one).unwrap().omission, 10.0);
    assert!(error_rates(&ErrorClassCounts::default()).is_err());
}

fn sentence(max: usize) -> impl Strategy<Value = Sentence> {
    prop::collection::vec(prop::sample::select(vec!["a", "b", "cat", "cats", "run", "running", "the", "x"]), 0..max)
        .prop_map(|v| v.into_iter().map(String::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn conservation_and_symmetry(r in sentence(9), h in sentence(9)) {
        let a = wer_align(&r, &h);
        prop_assert!(a.edit_count() <= r.len().max(h.len()));
        prop_assert_eq!(a.edit_count(), textbook_distance(&r, &h));
        let s = classify_sentence(&r, &h, &a).unwrap();
        let matched = a.ops.iter().filter(|op| matches!(op, AlignOp::Match { .. })).count();
        prop_assert_eq!(s.reference.len(), r.len());
        prop_assert_eq!(s.hypothesis.len(), h.len());
        prop_assert_eq!(s.reference.iter().filter(|l| l.is_none()).count(), matched);
        prop_assert_eq!(s.hypothesis.iter().filter(|l| l.is_none()).count(), matched);
        prop_assert_eq!(s.counts.reference.iter().sum::<u64>() as usize, r.len() - matched);
        prop_assert_eq!(s.counts.hypothesis.iter().sum::<u64>() as usize, h.len() - matched);
        prop_assert_eq!(s.counts.hypothesis_count(ErrorClass::Omission), 0);
        prop_assert_eq!(s.counts.reference_count(ErrorClass::Addition), 0);
        prop_assert_eq!(s.counts.reference_count(ErrorClass::Morph), s.counts.hypothesis_count(ErrorClass::Morph));
        for (w, l) in r.iter().zip(&s.reference) {
            if *l == Some(ErrorClass::Morph) {
                prop_assert!(h.iter().zip(&s.hypothesis).any(|(v, m)| *m == Some(ErrorClass::Morph) && stem(v) == stem(w)));
            }
        }
    }

    #[test]
    fn successive_drops_never_lower_omissions(r in sentence(10), order in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
        // drop reference words one at a time, so each hypothesis is a subsequence of the reference
        let mut keep = vec![true; r.len()];
        let mut last = 0;
        for &i in order.iter().filter(|&&i| i < r.len()) {
            keep[i] = false;
            let h: Sentence = r.iter().zip(&keep).filter(|(_, k)| **k).map(|(w, _)| w.clone()).collect();
            let c = classify_errors(&r, &h, &wer_align(&r, &h)).unwrap();
            let now = c.reference_count(ErrorClass::Omission);
            prop_assert!(now >= last);
            last = now;
        }
    }

    #[test]
    fn stem_is_idempotent(w in "[a-z]{0,12}") {
        let s = stem(&w);
        prop_assert_eq!(stem(&s), s);
    }
}
