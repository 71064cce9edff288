use std::collections::HashMap;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use super::{CorpusMetric, MetricName, MetricScore};
use crate::{Result, Sentence};

const MAX_ORDER: usize = 4;

/// Clipped n-gram matches and totals for orders 1..=4, plus lengths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BleuStats {
    pub matches: [u64; MAX_ORDER],
    pub totals: [u64; MAX_ORDER],
    pub hyp_len: u64,
    pub ref_len: u64,
}

impl AddAssign<&BleuStats> for BleuStats {
    fn add_assign(&mut self, rhs: &BleuStats) {
        for n in 0..MAX_ORDER {
            self.matches[n] += rhs.matches[n];
            self.totals[n] += rhs.totals[n];
        }
        self.hyp_len += rhs.hyp_len;
        self.ref_len += rhs.ref_len;
    }
}

/// Unsmoothed, case-sensitive corpus BLEU over the given tokens.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bleu;

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], u64> {
    let mut counts = HashMap::new();
    for g in tokens.windows(n) {
        *counts.entry(g).or_insert(0) += 1;
    }
    counts
}

pub(super) fn value_from_parts(precisions: [f64; MAX_ORDER], bp: f64) -> f64 {
    if precisions.iter().any(|&p| p <= 0.0) {
        return 0.0;
    }
    let log_mean = precisions.iter().map(|p| p.ln()).sum::<f64>() / MAX_ORDER as f64;
    100.0 * bp * log_mean.exp()
}

fn brevity_penalty(hyp_len: u64, ref_len: u64) -> f64 {
    if hyp_len == 0 {
        0.0
    } else if hyp_len < ref_len {
        (1.0 - ref_len as f64 / hyp_len as f64).exp()
    } else {
        1.0
    }
}

impl CorpusMetric for Bleu {
    type Stats = BleuStats;

    fn name(&self) -> MetricName {
        MetricName::Bleu
    }

    fn sentence_stats(&self, hyp: &[String], reference: &[String], _line: usize) -> Result<BleuStats> {
        let mut st = BleuStats {
            hyp_len: hyp.len() as u64,
            ref_len: reference.len() as u64,
            ..Default::default()
        };
        for n in 1..=MAX_ORDER {
            if hyp.len() < n {
                break;
            }
            let refc = ngram_counts(reference, n);
            let hypc = ngram_counts(hyp, n);
            st.totals[n - 1] = (hyp.len() + 1 - n) as u64;
            st.matches[n - 1] = hypc
                .iter()
                .map(|(g, &c)| c.min(refc.get(g).copied().unwrap_or(0)))
                .sum();
        }
        Ok(st)
    }

    fn score(&self, t: &BleuStats) -> MetricScore {
        let precisions: [f64; MAX_ORDER] = std::array::from_fn(|n| {
            if t.totals[n] > 0 {
                t.matches[n] as f64 / t.totals[n] as f64
            } else {
                0.0
            }
        });
        let bp = brevity_penalty(t.hyp_len, t.ref_len);
        let mut components = Vec::with_capacity(2 * MAX_ORDER + 3);
        for (n, p) in precisions.iter().enumerate() {
            components.push((format!("p{}", n + 1), *p));
        }
        components.push(("bp".into(), bp));
        components.push(("hyp_len".into(), t.hyp_len as f64));
        components.push(("ref_len".into(), t.ref_len as f64));
        for n in 0..MAX_ORDER {
            components.push((format!("matches{}", n + 1), t.matches[n] as f64));
            components.push((format!("totals{}", n + 1), t.totals[n] as f64));
        }
        MetricScore {
            name: MetricName::Bleu,
            value: value_from_parts(precisions, bp),
            components,
        }
    }
}

pub fn bleu(hyps: &[Sentence], refs: &[Sentence]) -> Result<MetricScore> {
    Bleu.evaluate(hyps, refs)
}
