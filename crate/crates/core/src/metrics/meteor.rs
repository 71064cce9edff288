//! METEOR without synonym or paraphrase resources.
//!
//! Unigrams are aligned in two stages, exact surface match then equal stems
//! (see [`crate::erroranalysis::stem`]). Within each stage the number of
//! matches is fixed by word counts; among alignments with that many matches
//! the one with the fewest chunks is chosen. When the candidate space of a
//! stage exceeds [`EXHAUSTIVE_LIMIT`] combinations, groups of equal words are
//! resolved one at a time, left to right, each taking its fewest-chunk option
//! given the groups already placed.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use super::{CorpusMetric, MetricName, MetricScore};
use crate::erroranalysis::stem;
use crate::{Result, Sentence};

pub const ALPHA: f64 = 0.9;
pub const BETA: f64 = 3.0;
pub const GAMMA: f64 = 0.5;

/// Largest number of joint pairings tried exhaustively per stage.
pub const EXHAUSTIVE_LIMIT: usize = 4096;
/// Largest number of pairings enumerated for one group of equal words.
const GROUP_LIMIT: usize = 720;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeteorAlignment {
    /// `(hypothesis index, reference index)`, sorted by hypothesis index.
    pub pairs: Vec<(usize, usize)>,
    pub chunks: usize,
}

fn count_chunks(pairs: &[(usize, usize)]) -> usize {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    let mut chunks = 0;
    for (i, &(h, r)) in sorted.iter().enumerate() {
        let continues = i > 0 && {
            let (ph, pr) = sorted[i - 1];
            h == ph + 1 && r == pr + 1
        };
        if !continues {
            chunks += 1;
        }
    }
    chunks
}

/// Ordered selections of `k` distinct items from `0..n`, lexicographic.
fn selections(k: usize, n: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
    let mut total: usize = 1;
    for i in 0..k {
        total = total.checked_mul(n - i)?;
        if total > limit {
            return None;
        }
    }
    let mut out = Vec::with_capacity(total);
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, n, &mut cur, &mut used, &mut out);
    Some(out)
}

/// Candidate pairings for one group of mutually matchable words.
fn group_options(hs: &[usize], rs: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let k = hs.len().min(rs.len());
    let build = |sel: &[usize]| -> Vec<(usize, usize)> {
        if hs.len() <= rs.len() {
            hs.iter().zip(sel).map(|(&h, &j)| (h, rs[j])).collect()
        } else {
            sel.iter().zip(rs).map(|(&i, &r)| (hs[i], r)).collect()
        }
    };
    match selections(k, hs.len().max(rs.len()), GROUP_LIMIT) {
        Some(sels) => sels.iter().map(|s| build(s)).collect(),
        None => vec![build(&(0..k).collect::<Vec<_>>())],
    }
}

fn align_stage(fixed: &[(usize, usize)], groups: &[(Vec<usize>, Vec<usize>)]) -> Vec<(usize, usize)> {
    let options: Vec<Vec<Vec<(usize, usize)>>> = groups
        .iter()
        .filter(|(h, r)| !h.is_empty() && !r.is_empty())
        .map(|(h, r)| group_options(h, r))
        .collect();
    if options.is_empty() {
        return Vec::new();
    }

    let product = options
        .iter()
        .try_fold(1usize, |acc, o| acc.checked_mul(o.len()).filter(|&p| p <= EXHAUSTIVE_LIMIT));

    let mut chosen: Vec<(usize, usize)> = Vec::new();
    if product.is_some() {
        let mut idx = vec![0usize; options.len()];
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        loop {
            let mut pairs = fixed.to_vec();
            let mut stage = Vec::new();
            for (g, &i) in idx.iter().enumerate() {
                stage.extend_from_slice(&options[g][i]);
            }
            pairs.extend_from_slice(&stage);
            let c = count_chunks(&pairs);
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                best = Some((c, stage));
            }
            // mixed-radix increment, last group fastest
            let mut g = options.len();
            loop {
                if g == 0 {
                    return best.map(|(_, s)| s).unwrap_or_default();
                }
                g -= 1;
                idx[g] += 1;
                if idx[g] < options[g].len() {
                    break;
                }
                idx[g] = 0;
            }
        }
    }

    for opts in &options {
        let mut best: Option<(usize, &Vec<(usize, usize)>)> = None;
        for o in opts {
            let mut pairs = fixed.to_vec();
            pairs.extend_from_slice(&chosen);
            pairs.extend_from_slice(o);
            let c = count_chunks(&pairs);
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, o));
            }
        }
        chosen.extend_from_slice(best.expect("non-empty options").1);
    }
    chosen
}

/// Groups unmatched positions by `key`, ordered by first hypothesis position.
fn group_by<K: Ord + Clone>(
    hyp_keys: &[Option<K>],
    ref_keys: &[Option<K>],
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut map: BTreeMap<K, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, k) in hyp_keys.iter().enumerate() {
        if let Some(k) = k {
            map.entry(k.clone()).or_default().0.push(i);
        }
    }
    for (j, k) in ref_keys.iter().enumerate() {
        if let Some(k) = k {
            if let Some(e) = map.get_mut(k) {
                e.1.push(j);
            }
        }
    }
    let mut groups: Vec<_> = map.into_values().filter(|(h, r)| !h.is_empty() && !r.is_empty()).collect();
    groups.sort_by_key(|(h, _)| h[0]);
    groups
}

pub fn meteor_align<S: AsRef<str>>(hyp: &[S], reference: &[S]) -> MeteorAlignment {
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let hk: Vec<Option<&str>> = hyp.iter().map(|w| Some(w.as_ref())).collect();
    let rk: Vec<Option<&str>> = reference.iter().map(|w| Some(w.as_ref())).collect();
    let exact = align_stage(&pairs, &group_by(&hk, &rk));
    pairs.extend(exact);

    let mut h_used = vec![false; hyp.len()];
    let mut r_used = vec![false; reference.len()];
    for &(h, r) in &pairs {
        h_used[h] = true;
        r_used[r] = true;
    }
    let hs: Vec<Option<String>> = hyp
        .iter()
        .zip(&h_used)
        .map(|(w, &u)| (!u).then(|| stem(w.as_ref())))
        .collect();
    let rs: Vec<Option<String>> = reference
        .iter()
        .zip(&r_used)
        .map(|(w, &u)| (!u).then(|| stem(w.as_ref())))
        .collect();
    let stemmed = align_stage(&pairs, &group_by(&hs, &rs));
    pairs.extend(stemmed);

    pairs.sort_unstable();
    let chunks = count_chunks(&pairs);
    MeteorAlignment { pairs, chunks }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeteorStats {
    pub matches: u64,
    pub chunks: u64,
    pub hyp_len: u64,
    pub ref_len: u64,
}

impl AddAssign<&MeteorStats> for MeteorStats {
    fn add_assign(&mut self, rhs: &MeteorStats) {
        self.matches += rhs.matches;
        self.chunks += rhs.chunks;
        self.hyp_len += rhs.hyp_len;
        self.ref_len += rhs.ref_len;
    }
}

pub(super) fn value_from_parts(matches: f64, hyp_len: f64, ref_len: f64, chunks: f64) -> f64 {
    if matches <= 0.0 {
        return 0.0;
    }
    let p = matches / hyp_len;
    let r = matches / ref_len;
    let f = p * r / (ALPHA * p + (1.0 - ALPHA) * r);
    let penalty = GAMMA * (chunks / matches).powf(BETA);
    100.0 * f * (1.0 - penalty)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MeteorLite;

impl CorpusMetric for MeteorLite {
    type Stats = MeteorStats;

    fn name(&self) -> MetricName {
        MetricName::MeteorLite
    }

    fn sentence_stats(&self, hyp: &[String], reference: &[String], _line: usize) -> Result<MeteorStats> {
        let al = meteor_align(hyp, reference);
        Ok(MeteorStats {
            matches: al.pairs.len() as u64,
            chunks: al.chunks as u64,
            hyp_len: hyp.len() as u64,
            ref_len: reference.len() as u64,
        })
    }

    fn score(&self, t: &MeteorStats) -> MetricScore {
        let (m, c, h, r) = (t.matches as f64, t.chunks as f64, t.hyp_len as f64, t.ref_len as f64);
        let mut components = vec![
            ("matches".to_owned(), m),
            ("chunks".to_owned(), c),
            ("hyp_len".to_owned(), h),
            ("ref_len".to_owned(), r),
        ];
        if t.matches > 0 {
            let (p, rc) = (m / h, m / r);
            components.push(("precision".into(), p));
            components.push(("recall".into(), rc));
            components.push(("fmean".into(), p * rc / (ALPHA * p + (1.0 - ALPHA) * rc)));
            components.push(("penalty".into(), GAMMA * (c / m).powf(BETA)));
        }
        MetricScore {
            name: MetricName::MeteorLite,
            value: value_from_parts(m, h, r, c),
            components,
        }
    }
}

pub fn meteor_lite(hyps: &[Sentence], refs: &[Sentence]) -> Result<MetricScore> {
    MeteorLite.evaluate(hyps, refs)
}
