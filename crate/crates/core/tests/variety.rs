mod oracles;

use std::collections::BTreeSet;

use btforge_core::variety::{
    coarse_tag, ngram_precision_recall, parse_tagged_line, pos_ngram_variety, vocab_size, CountMode, PosTag,
    TaggedSentence,
};
use btforge_core::Sentence;
use oracles::toks;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn set_vocab(c: &[Sentence]) -> usize {
    let mut s = BTreeSet::new();
    for line in c {
        for w in line {
            s.insert(w.clone());
        }
    }
    s.len()
}

fn set_variety(c: &[TaggedSentence], n: usize) -> usize {
    let mut s = BTreeSet::new();
    for line in c {
        let tags: Vec<&str> = line.tags().iter().map(|t| t.as_str()).collect();
        for i in 0..(tags.len() + 1).saturating_sub(n) {
            s.insert(tags[i..i + n].join(" "));
        }
    }
    s.len()
}

fn random_corpus(lines: usize, seed: u64) -> Vec<Sentence> {
    let words = ["the", "cat", "Cat", "runs", "quickly", "jumped", "famous", "7", ".", "and", "to", "of", "dog"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..lines)
        .map(|_| {
            let len = rng.gen_range(0..12);
            (0..len).map(|_| words[rng.gen_range(0..words.len())].to_string()).collect()
        })
        .collect()
}

#[test]
fn vocab_cases() {
    assert_eq!(vocab_size(&[toks("a a b")]), 2);
    assert_eq!(vocab_size::<String>(&[]), 0);
    let c = random_corpus(10_000, 3);
    assert_eq!(vocab_size(&c), set_vocab(&c));
}

#[test]
fn variety_cases() {
    use PosTag::*;
    let one = TaggedSentence::new(toks("the dog runs"), vec![Det, Noun, Verb]).unwrap();
    let v = pos_ngram_variety(&[one], 2).unwrap();
    assert_eq!((v.per_n, v.total), (vec![3, 2], 5));
    assert_eq!(pos_ngram_variety(&[], 4).unwrap().per_n, vec![0; 4]);

    let two = vec![
        parse_tagged_line("the_DET dog_NOUN runs_VERB").unwrap(),
        parse_tagged_line("a_DET cat_NOUN sleeps_VERB quietly_ADV").unwrap(),
    ];
    let v = pos_ngram_variety(&two, 4).unwrap();
    let expected: Vec<usize> = (1..=4).map(|n| set_variety(&two, n)).collect();
    assert_eq!(v.per_n, expected);
    assert_eq!(v.per_n, vec![4, 3, 2, 1]);
}

#[test]
fn tagged_corpus_matches_set_oracle() {
    let c: Vec<TaggedSentence> = random_corpus(2000, 5).into_iter().map(TaggedSentence::tag).collect();
    let v = pos_ngram_variety(&c, 4).unwrap();
    for n in 1..=4 {
        assert_eq!(v.per_n[n - 1], set_variety(&c, n));
    }
    assert_eq!(v.total, v.per_n.iter().sum::<usize>());
}

#[test]
fn precision_recall_cases() {
    for mode in [CountMode::Multiset, CountMode::Distinct] {
        let c = vec![toks("a b c d e"), toks("f g h i")];
        let pr = ngram_precision_recall(&c, &c, 4, mode).unwrap();
        assert_eq!((pr.precision, pr.recall), (1.0, 1.0));
        let other = vec![toks("p q r s t"), toks("u v w x")];
        let pr = ngram_precision_recall(&c, &other, 4, mode).unwrap();
        assert_eq!((pr.precision, pr.recall), (0.0, 0.0));
    }
    let pr = ngram_precision_recall(&[toks("a b c d x")], &[toks("a b c d e")], 4, CountMode::Multiset).unwrap();
    assert_eq!((pr.matches, pr.hyp_total, pr.ref_total), (1, 2, 2));
    assert_eq!((pr.precision, pr.recall), (0.5, 0.5));

    assert!(ngram_precision_recall(&[toks("a b")], &[toks("a b c d")], 4, CountMode::Multiset).is_err());
    assert!(ngram_precision_recall(&[toks("a b c d")], &[], 4, CountMode::Multiset).is_err());
}

proptest! {
    #[test]
    fn nested_corpora_are_monotone(seed in any::<u64>(), keep in prop::collection::vec(any::<bool>(), 60)) {
        let full = random_corpus(60, seed);
        let sub: Vec<Sentence> = full.iter().zip(&keep).filter(|(_, k)| **k).map(|(s, _)| s.clone()).collect();
        prop_assert!(vocab_size(&sub) <= vocab_size(&full));
        let tag = |c: &[Sentence]| c.iter().cloned().map(TaggedSentence::tag).collect::<Vec<_>>();
        let (vs, vf) = (pos_ngram_variety(&tag(&sub), 4).unwrap(), pos_ngram_variety(&tag(&full), 4).unwrap());
        for n in 0..4 {
            prop_assert!(vs.per_n[n] <= vf.per_n[n]);
        }
    }

    #[test]
    fn distinct_mode_identity(seed in any::<u64>(), n in 1usize..=4) {
        let h = random_corpus(20, seed);
        let r = random_corpus(20, seed ^ 0x5eed);
        if let Ok(pr) = ngram_precision_recall(&h, &r, n, CountMode::Distinct) {
            let inter = pr.matches as f64;
            prop_assert!((pr.precision * pr.hyp_total as f64 - inter).abs() < 1e-9);
            prop_assert!((pr.recall * pr.ref_total as f64 - inter).abs() < 1e-9);
            prop_assert!((0.0..=1.0).contains(&pr.precision) && (0.0..=1.0).contains(&pr.recall));
        }
        let m = ngram_precision_recall(&h, &r, n, CountMode::Multiset);
        if let Ok(pr) = m {
            prop_assert!((0.0..=1.0).contains(&pr.precision) && (0.0..=1.0).contains(&pr.recall));
        }
    }

    #[test]
    fn tags_align_with_tokens(s in prop::collection::vec("\\PC{0,6}", 0..10)) {
        prop_assert_eq!(coarse_tag(&s).len(), s.len());
    }
}
