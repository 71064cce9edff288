//! Fixtures for benchmarks.

use btforge_core::Sentence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &[
    "the", "a", "report", "said", "that", "markets", "rose", "slightly", "while", "officials", "waited", "for",
    "news", "about", "trade", "talks", "running", "cats", "walked", "quickly", "green", "house", "of", "to", ".",
];

/// `lines` sentences of 5 to 25 words.
pub fn corpus(lines: usize, seed: u64) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..lines)
        .map(|_| {
            let len = rng.gen_range(5..=25);
            (0..len).map(|_| WORDS[rng.gen_range(0..WORDS.len())].to_string()).collect()
        })
        .collect()
}

/// Copy of `refs` with each word replaced by a random one with probability `p`.
pub fn noisy(refs: &[Sentence], p: f64, seed: u64) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    refs.iter()
        .map(|s| {
            s.iter()
                .map(|w| {
                    if rng.gen_bool(p) {
                        WORDS[rng.gen_range(0..WORDS.len())].to_string()
                    } else {
                        w.clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Raw lines with attached punctuation, for the tokenizer.
pub fn raw_lines(lines: usize, seed: u64) -> Vec<String> {
    corpus(lines, seed)
        .into_iter()
        .map(|s| format!("\"{}\", (he said).", s.join(" ")))
        .collect()
}
