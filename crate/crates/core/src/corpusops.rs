//! Parallel corpora and the synthetic-data mixtures built from them.
//!
//! Sampling uses ChaCha8 seeded through `SeedableRng::seed_from_u64`, with a
//! partial Fisher-Yates shuffle drawing `gen_range(i..n)` for i = 0..k. The
//! chosen indices are sorted so both parts keep corpus order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::check_aligned;
use crate::{join_tokens, split_tokens, Error, Result, Sentence};

/// Line-aligned source and target sentences with a provenance label per line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelCorpus {
    source: Vec<Sentence>,
    target: Vec<Sentence>,
    provenance: Vec<String>,
}

impl ParallelCorpus {
    pub fn new(source: Vec<Sentence>, target: Vec<Sentence>, provenance: Vec<String>) -> Result<Self> {
        check_aligned("source", &source, "target", &target)?;
        check_aligned("source", &source, "provenance", &provenance)?;
        Ok(ParallelCorpus {
            source,
            target,
            provenance,
        })
    }

    /// Builds a corpus whose every line carries the same provenance label.
    pub fn with_label(source: Vec<Sentence>, target: Vec<Sentence>, label: &str) -> Result<Self> {
        let provenance = vec![label.to_owned(); source.len()];
        Self::new(source, target, provenance)
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[Sentence] {
        &self.source
    }

    pub fn target(&self) -> &[Sentence] {
        &self.target
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// 1-based numbers of lines where either side is empty.
    pub fn empty_lines(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.source[i].is_empty() || self.target[i].is_empty())
            .map(|i| i + 1)
            .collect()
    }

    fn push_line(&mut self, other: &ParallelCorpus, i: usize) {
        self.source.push(other.source[i].clone());
        self.target.push(other.target[i].clone());
        self.provenance.push(other.provenance[i].clone());
    }

    /// Parses `source<TAB>target<TAB>provenance` lines.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut corpus = ParallelCorpus::default();
        for (i, line) in text.lines().enumerate() {
            let mut fields = line.split('\t');
            match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(src), Some(tgt), Some(prov), None) if !prov.is_empty() => {
                    corpus.source.push(split_tokens(src));
                    corpus.target.push(split_tokens(tgt));
                    corpus.provenance.push(prov.to_owned());
                }
                _ => {
                    return Err(Error::parse(
                        i + 1,
                        "expected source<TAB>target<TAB>provenance",
                    ))
                }
            }
        }
        Ok(corpus)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}",
                join_tokens(&self.source[i]),
                join_tokens(&self.target[i]),
                self.provenance[i]
            );
        }
        out
    }
}

/// Which corpus supplies the first block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockOrder {
    #[default]
    AFirst,
    BFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixPlan {
    block_size: usize,
    order: BlockOrder,
}

impl Default for MixPlan {
    fn default() -> Self {
        MixPlan {
            block_size: 500_000,
            order: BlockOrder::AFirst,
        }
    }
}

impl MixPlan {
    pub fn new(block_size: usize, order: BlockOrder) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::InvalidParameter("block size must be at least 1".into()));
        }
        Ok(MixPlan { block_size, order })
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn order(&self) -> BlockOrder {
        self.order
    }

    /// True when line `i` takes its source from `a`.
    pub fn takes_a(&self, i: usize) -> bool {
        let even = (i / self.block_size).is_multiple_of(2);
        match self.order {
            BlockOrder::AFirst => even,
            BlockOrder::BFirst => !even,
        }
    }
}

fn check_shared_target(a: &ParallelCorpus, b: &ParallelCorpus) -> Result<()> {
    check_aligned("a", &a.source, "b", &b.source)?;
    match a.target.iter().zip(&b.target).position(|(x, y)| x != y) {
        Some(i) => Err(Error::TargetMismatch { line: i + 1 }),
        None => Ok(()),
    }
}

/// Keeps the shared target side and alternates the source side between `a`
/// and `b` every `plan.block_size` lines.
pub fn mix_alternating(a: &ParallelCorpus, b: &ParallelCorpus, plan: MixPlan) -> Result<ParallelCorpus> {
    check_shared_target(a, b)?;
    let mut out = ParallelCorpus::default();
    for i in 0..a.len() {
        out.push_line(if plan.takes_a(i) { a } else { b }, i);
    }
    Ok(out)
}

/// All of `a` followed by all of `b`: every target appears twice, once with
/// each back-translated source.
pub fn mix_full(a: &ParallelCorpus, b: &ParallelCorpus) -> Result<ParallelCorpus> {
    check_shared_target(a, b)?;
    let mut out = a.clone();
    out.source.extend_from_slice(&b.source);
    out.target.extend_from_slice(&b.target);
    out.provenance.extend_from_slice(&b.provenance);
    Ok(out)
}

/// Indices of a uniform `k`-subset of `0..n`, sorted ascending.
pub fn sample_indices(n: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::SampleTooLarge { k, len: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i as u64..n as u64) as usize;
        perm.swap(i, j);
    }
    perm.truncate(k);
    perm.sort_unstable();
    Ok(perm)
}

/// Splits `corpus` into a `k`-line random sample and the remainder.
pub fn sample_lines(corpus: &ParallelCorpus, k: usize, seed: u64) -> Result<(ParallelCorpus, ParallelCorpus)> {
    let chosen = sample_indices(corpus.len(), k, seed)?;
    let mut sample = ParallelCorpus::default();
    let mut rest = ParallelCorpus::default();
    let mut next = chosen.iter().peekable();
    for i in 0..corpus.len() {
        if next.peek() == Some(&&i) {
            next.next();
            sample.push_line(corpus, i);
        } else {
            rest.push_line(corpus, i);
        }
    }
    Ok((sample, rest))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub sentences: usize,
    pub tokens: usize,
    pub mean: f64,
    /// Sentence length → number of sentences with that length.
    pub histogram: BTreeMap<usize, usize>,
}

pub fn length_stats(side: &[Sentence]) -> Result<LengthStats> {
    if side.is_empty() {
        return Err(Error::NoSentences);
    }
    let mut histogram = BTreeMap::new();
    let mut tokens = 0;
    for s in side {
        tokens += s.len();
        *histogram.entry(s.len()).or_insert(0) += 1;
    }
    Ok(LengthStats {
        sentences: side.len(),
        tokens,
        mean: tokens as f64 / side.len() as f64,
        histogram,
    })
}
