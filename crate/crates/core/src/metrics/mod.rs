//! Corpus-level evaluation metrics.
//!
//! Each metric reduces a sentence pair to integer sufficient statistics, sums
//! them over the corpus and turns the totals into a score. The same per-line
//! statistics drive bootstrap resampling in [`crate::stats`].

mod bleu;
mod chrf;
mod meteor;
mod ter;

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use bleu::{bleu, Bleu, BleuStats};
pub use chrf::{chrf, Chrf, ChrfStats};
pub use meteor::{meteor_lite, meteor_align, MeteorAlignment, MeteorLite, MeteorStats};
pub use ter::{ter, ter_sentence, EditOp, EditTrace, Shift, Ter, TerSentence, TerStats};

use crate::error::check_aligned;
use crate::{Error, Result, Sentence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MetricName {
    Bleu,
    Ter,
    MeteorLite,
    Chrf,
}

impl MetricName {
    /// Report column order.
    pub const ALL: [MetricName; 4] = [MetricName::Bleu, MetricName::Ter, MetricName::MeteorLite, MetricName::Chrf];

    pub fn higher_is_better(self) -> bool {
        self != MetricName::Ter
    }

    pub fn label(self) -> &'static str {
        match self {
            MetricName::Bleu => "BLEU",
            MetricName::Ter => "TER",
            MetricName::MeteorLite => "METEOR",
            MetricName::Chrf => "CHRF1",
        }
    }
}

impl fmt::Display for MetricName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MetricName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bleu" => Ok(MetricName::Bleu),
            "ter" => Ok(MetricName::Ter),
            "meteor" | "meteor-lite" => Ok(MetricName::MeteorLite),
            "chrf" | "chrf1" => Ok(MetricName::Chrf),
            _ => Err(Error::InvalidParameter(format!("unknown metric {s:?}"))),
        }
    }
}

/// A score with the components it was computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricScore {
    pub name: MetricName,
    pub value: f64,
    pub components: Vec<(String, f64)>,
}

impl MetricScore {
    pub fn component(&self, key: &str) -> Option<f64> {
        self.components.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
    }

    /// Recomputes the score from its components alone.
    pub fn recompute(&self) -> Result<f64> {
        let get = |k: &str| {
            self.component(k)
                .ok_or_else(|| Error::InvalidParameter(format!("missing component {k}")))
        };
        match self.name {
            MetricName::Bleu => Ok(bleu::value_from_parts(
                [get("p1")?, get("p2")?, get("p3")?, get("p4")?],
                get("bp")?,
            )),
            MetricName::Ter => Ok(ter::value_from_parts(get("edits")?, get("ref_len")?)),
            MetricName::Chrf => Ok(chrf::value_from_parts(get("chrP")?, get("chrR")?, get("beta")?)),
            MetricName::MeteorLite => Ok(meteor::value_from_parts(
                get("matches")?,
                get("hyp_len")?,
                get("ref_len")?,
                get("chunks")?,
            )),
        }
    }
}

/// A metric expressed through additive per-sentence statistics.
pub trait CorpusMetric: Sync {
    type Stats: Clone + Default + Send + Sync + for<'a> AddAssign<&'a Self::Stats>;

    fn name(&self) -> MetricName;

    /// Statistics of one pair; `line` is the 1-based line number for errors.
    fn sentence_stats(&self, hyp: &[String], reference: &[String], line: usize) -> Result<Self::Stats>;

    fn score(&self, totals: &Self::Stats) -> MetricScore;

    /// Per-line statistics for a whole corpus, computed in parallel.
    fn corpus_stats(&self, hyps: &[Sentence], refs: &[Sentence]) -> Result<Vec<Self::Stats>> {
        check_aligned("hypotheses", hyps, "references", refs)?;
        if hyps.is_empty() {
            return Err(Error::NoSentences);
        }
        hyps.par_iter()
            .zip(refs.par_iter())
            .enumerate()
            .map(|(i, (h, r))| self.sentence_stats(h, r, i + 1))
            .collect()
    }

    fn evaluate(&self, hyps: &[Sentence], refs: &[Sentence]) -> Result<MetricScore> {
        let stats = self.corpus_stats(hyps, refs)?;
        Ok(self.score(&sum_stats::<Self>(stats.iter())))
    }
}

pub(crate) fn sum_stats<'a, M: CorpusMetric + ?Sized>(it: impl Iterator<Item = &'a M::Stats>) -> M::Stats
where
    M::Stats: 'a,
{
    let mut acc = M::Stats::default();
    for s in it {
        acc += s;
    }
    acc
}

/// Parameters for [`evaluate_named`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricOptions {
    pub chrf_beta: f64,
    pub chrf_max_n: usize,
}

impl Default for MetricOptions {
    fn default() -> Self {
        MetricOptions {
            chrf_beta: 1.0,
            chrf_max_n: 6,
        }
    }
}

pub fn evaluate_named(name: MetricName, hyps: &[Sentence], refs: &[Sentence], opts: MetricOptions) -> Result<MetricScore> {
    match name {
        MetricName::Bleu => Bleu.evaluate(hyps, refs),
        MetricName::Ter => Ter.evaluate(hyps, refs),
        MetricName::MeteorLite => MeteorLite.evaluate(hyps, refs),
        MetricName::Chrf => Chrf::new(opts.chrf_beta, opts.chrf_max_n)?.evaluate(hyps, refs),
    }
}
