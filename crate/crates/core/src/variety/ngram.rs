use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tagger::TaggedSentence;
use crate::error::check_aligned;
use crate::{Error, Result};

/// Number of distinct surface forms, case-sensitive.
pub fn vocab_size<S: AsRef<str>>(corpus: &[Vec<S>]) -> usize {
    corpus
        .iter()
        .flatten()
        .map(AsRef::as_ref)
        .collect::<HashSet<&str>>()
        .len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyCounts {
    /// `per_n[n - 1]` is the number of distinct tag n-grams.
    pub per_n: Vec<usize>,
    pub total: usize,
}

/// Distinct POS n-grams for n = 1..=n_max, never spanning sentences.
pub fn pos_ngram_variety(corpus: &[TaggedSentence], n_max: usize) -> Result<VarietyCounts> {
    if !(1..=4).contains(&n_max) {
        return Err(Error::InvalidParameter(format!("n_max {n_max} outside 1..=4")));
    }
    let per_n: Vec<usize> = (1..=n_max)
        .map(|n| {
            corpus
                .iter()
                .flat_map(|s| s.tags().windows(n))
                .collect::<HashSet<_>>()
                .len()
        })
        .collect();
    let total = per_n.iter().sum();
    Ok(VarietyCounts { per_n, total })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMode {
    /// Per-line clipped matches pooled over the corpus.
    #[default]
    Multiset,
    /// Corpus-wide n-gram type sets.
    Distinct,
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multiset" => Ok(CountMode::Multiset),
            "distinct" => Ok(CountMode::Distinct),
            _ => Err(Error::InvalidParameter(format!("unknown count mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionRecall {
    pub precision: f64,
    pub recall: f64,
    pub matches: u64,
    pub hyp_total: u64,
    pub ref_total: u64,
}

/// n-gram precision and recall of a hypothesis corpus against its reference.
/// Works on any unit: words, POS tags, or anything else hashable.
pub fn ngram_precision_recall<T: Eq + Hash>(
    hyp_corpus: &[Vec<T>],
    ref_corpus: &[Vec<T>],
    n: usize,
    mode: CountMode,
) -> Result<PrecisionRecall> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    check_aligned("hypotheses", hyp_corpus, "references", ref_corpus)?;
    let (matches, hyp_total, ref_total) = match mode {
        CountMode::Multiset => {
            let (mut m, mut h, mut r) = (0u64, 0u64, 0u64);
            for (hs, rs) in hyp_corpus.iter().zip(ref_corpus) {
                let mut rc: HashMap<&[T], u64> = HashMap::new();
                for g in rs.windows(n) {
                    *rc.entry(g).or_default() += 1;
                }
                let mut hc: HashMap<&[T], u64> = HashMap::new();
                for g in hs.windows(n) {
                    *hc.entry(g).or_default() += 1;
                }
                m += hc.iter().map(|(g, &c)| c.min(rc.get(g).copied().unwrap_or(0))).sum::<u64>();
                h += hs.len().saturating_sub(n - 1) as u64;
                r += rs.len().saturating_sub(n - 1) as u64;
            }
            (m, h, r)
        }
        CountMode::Distinct => {
            let hset: HashSet<&[T]> = hyp_corpus.iter().flat_map(|s| s.windows(n)).collect();
            let rset: HashSet<&[T]> = ref_corpus.iter().flat_map(|s| s.windows(n)).collect();
            let inter = hset.iter().filter(|g| rset.contains(*g)).count();
            (inter as u64, hset.len() as u64, rset.len() as u64)
        }
    };
    if hyp_total == 0 {
        return Err(Error::NoNgrams { n, side: "hypotheses" });
    }
    if ref_total == 0 {
        return Err(Error::NoNgrams { n, side: "references" });
    }
    Ok(PrecisionRecall {
        precision: matches as f64 / hyp_total as f64,
        recall: matches as f64 / ref_total as f64,
        matches,
        hyp_total,
        ref_total,
    })
}
