use std::collections::HashMap;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use super::{CorpusMetric, MetricName, MetricScore};
use crate::{Error, Result, Sentence};

pub const MAX_CHAR_ORDER: usize = 6;

/// Character n-gram matches and totals for orders 1..=6.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChrfStats {
    pub matches: [u64; MAX_CHAR_ORDER],
    pub hyp_totals: [u64; MAX_CHAR_ORDER],
    pub ref_totals: [u64; MAX_CHAR_ORDER],
}

impl AddAssign<&ChrfStats> for ChrfStats {
    fn add_assign(&mut self, rhs: &ChrfStats) {
        for n in 0..MAX_CHAR_ORDER {
            self.matches[n] += rhs.matches[n];
            self.hyp_totals[n] += rhs.hyp_totals[n];
            self.ref_totals[n] += rhs.ref_totals[n];
        }
    }
}

/// Character n-gram F-score over whitespace-free text.
///
/// Precision and recall are pooled per order over the corpus and then
/// averaged over orders. An order where one side has no n-grams contributes
/// zero on that side; an order where neither side has any is left out of the
/// average.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chrf {
    beta: f64,
    max_n: usize,
}

impl Default for Chrf {
    fn default() -> Self {
        Chrf {
            beta: 1.0,
            max_n: MAX_CHAR_ORDER,
        }
    }
}

impl Chrf {
    pub fn new(beta: f64, max_n: usize) -> Result<Self> {
        if !(1..=MAX_CHAR_ORDER).contains(&max_n) {
            return Err(Error::InvalidParameter(format!("chrF order {max_n} outside 1..=6")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!("chrF beta {beta} must be positive")));
        }
        Ok(Chrf { beta, max_n })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }
}

fn char_ngrams(chars: &[char], n: usize) -> HashMap<&[char], u64> {
    let mut m = HashMap::new();
    for g in chars.windows(n) {
        *m.entry(g).or_insert(0) += 1;
    }
    m
}

fn chars_of(tokens: &[String]) -> Vec<char> {
    tokens
        .iter()
        .flat_map(|t| t.chars())
        .filter(|c| !c.is_whitespace())
        .collect()
}

pub(super) fn value_from_parts(chr_p: f64, chr_r: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * chr_p + chr_r;
    if denom <= 0.0 {
        0.0
    } else {
        100.0 * (1.0 + b2) * chr_p * chr_r / denom
    }
}

impl CorpusMetric for Chrf {
    type Stats = ChrfStats;

    fn name(&self) -> MetricName {
        MetricName::Chrf
    }

    fn sentence_stats(&self, hyp: &[String], reference: &[String], _line: usize) -> Result<ChrfStats> {
        let (h, r) = (chars_of(hyp), chars_of(reference));
        let mut st = ChrfStats::default();
        for n in 1..=self.max_n {
            let hc = char_ngrams(&h, n);
            let rc = char_ngrams(&r, n);
            st.hyp_totals[n - 1] = h.len().saturating_sub(n - 1) as u64;
            st.ref_totals[n - 1] = r.len().saturating_sub(n - 1) as u64;
            st.matches[n - 1] = hc
                .iter()
                .map(|(g, &c)| c.min(rc.get(g).copied().unwrap_or(0)))
                .sum();
        }
        Ok(st)
    }

    fn score(&self, t: &ChrfStats) -> MetricScore {
        let mut components = Vec::new();
        let (mut sum_p, mut sum_r, mut orders) = (0.0, 0.0, 0usize);
        for n in 0..self.max_n {
            if t.hyp_totals[n] == 0 && t.ref_totals[n] == 0 {
                continue;
            }
            let p = if t.hyp_totals[n] > 0 {
                t.matches[n] as f64 / t.hyp_totals[n] as f64
            } else {
                0.0
            };
            let r = if t.ref_totals[n] > 0 {
                t.matches[n] as f64 / t.ref_totals[n] as f64
            } else {
                0.0
            };
            components.push((format!("chrP{}", n + 1), p));
            components.push((format!("chrR{}", n + 1), r));
            sum_p += p;
            sum_r += r;
            orders += 1;
        }
        let (chr_p, chr_r) = if orders == 0 {
            (0.0, 0.0)
        } else {
            (sum_p / orders as f64, sum_r / orders as f64)
        };
        let mut head = vec![
            ("chrP".to_owned(), chr_p),
            ("chrR".to_owned(), chr_r),
            ("beta".to_owned(), self.beta),
            ("max_n".to_owned(), self.max_n as f64),
            ("orders".to_owned(), orders as f64),
        ];
        head.append(&mut components);
        MetricScore {
            name: MetricName::Chrf,
            value: value_from_parts(chr_p, chr_r, self.beta),
            components: head,
        }
    }
}

pub fn chrf(hyps: &[Sentence], refs: &[Sentence], beta: f64, max_n: usize) -> Result<MetricScore> {
    Chrf::new(beta, max_n)?.evaluate(hyps, refs)
}
