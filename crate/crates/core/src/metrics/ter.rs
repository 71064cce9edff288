//! Translation edit rate with greedy block shifts.
//!
//! The shift search follows tercom: at every round, each hypothesis block that
//! matches a reference span is tried at the positions next to where that span
//! is aligned, and the shift that lowers the edit distance the most is kept.
//! Blocks must contain a misaligned hypothesis word and land on misaligned
//! reference words. Ties prefer longer blocks, then earlier blocks, then
//! earlier destinations. Blocks are at most 10 words and may move at most 50
//! positions; a run stops after 1000 evaluated candidates.

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use super::{CorpusMetric, MetricName, MetricScore};
use crate::erroranalysis::{edit_distance, wer_align, AlignOp};
use crate::{Error, Result, Sentence};

pub const MAX_SHIFT_SIZE: usize = 10;
pub const MAX_SHIFT_DIST: usize = 50;
pub const MAX_SHIFT_CANDIDATES: usize = 1000;

/// Moves `len` words starting at `start` so they land before position `dest`
/// of the original sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shift {
    pub start: usize,
    pub len: usize,
    pub dest: usize,
}

impl Shift {
    pub fn apply<T: Clone>(&self, words: &[T]) -> Vec<T> {
        let (start, len, dest) = (self.start, self.len, self.dest);
        let n = words.len();
        let mut out = Vec::with_capacity(n);
        let block = &words[start..start + len];
        if dest < start {
            out.extend_from_slice(&words[..dest]);
            out.extend_from_slice(block);
            out.extend_from_slice(&words[dest..start]);
            out.extend_from_slice(&words[start + len..]);
        } else if dest > start + len {
            out.extend_from_slice(&words[..start]);
            out.extend_from_slice(&words[start + len..dest]);
            out.extend_from_slice(block);
            out.extend_from_slice(&words[dest..]);
        } else {
            let cut = (len + dest).min(n);
            out.extend_from_slice(&words[..start]);
            out.extend_from_slice(&words[start + len..cut]);
            out.extend_from_slice(block);
            out.extend_from_slice(&words[cut..]);
        }
        out
    }
}

/// One step in turning a hypothesis into its reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EditOp {
    Shift(Shift),
    Keep,
    Substitute(String),
    /// Insert a reference word missing from the hypothesis.
    Insert(String),
    /// Drop a hypothesis word.
    Delete,
}

/// Shifts first, then a left-to-right word edit script.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditTrace {
    pub ops: Vec<EditOp>,
}

impl EditTrace {
    pub fn edit_count(&self) -> usize {
        self.ops.iter().filter(|op| **op != EditOp::Keep).count()
    }

    /// Replays the trace on `hyp`; returns `None` if it does not fit.
    pub fn apply(&self, hyp: &[String]) -> Option<Vec<String>> {
        let mut words = hyp.to_vec();
        let mut out = Vec::new();
        let mut pos = 0;
        for op in &self.ops {
            match op {
                EditOp::Shift(s) => {
                    if pos > 0 || s.start + s.len > words.len() || s.dest > words.len() {
                        return None;
                    }
                    words = s.apply(&words);
                }
                EditOp::Keep => {
                    out.push(words.get(pos)?.clone());
                    pos += 1;
                }
                EditOp::Substitute(w) => {
                    words.get(pos)?;
                    out.push(w.clone());
                    pos += 1;
                }
                EditOp::Insert(w) => out.push(w.clone()),
                EditOp::Delete => {
                    words.get(pos)?;
                    pos += 1;
                }
            }
        }
        (pos == words.len()).then_some(out)
    }
}

/// Sentence-level TER result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerSentence {
    pub shifts: usize,
    pub substitutions: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub ref_len: usize,
    pub trace: EditTrace,
}

impl TerSentence {
    pub fn edits(&self) -> usize {
        self.shifts + self.substitutions + self.insertions + self.deletions
    }
}

struct Candidate<'a> {
    gain: i64,
    len: usize,
    start: usize,
    dest: usize,
    words: Vec<&'a str>,
}

impl Candidate<'_> {
    fn beats(&self, other: &Candidate<'_>) -> bool {
        (self.gain, self.len, std::cmp::Reverse(self.start), std::cmp::Reverse(self.dest))
            > (other.gain, other.len, std::cmp::Reverse(other.start), std::cmp::Reverse(other.dest))
    }
}

fn best_shift<'a>(hyp: &[&'a str], reference: &[&str], checked: &mut usize) -> Option<Candidate<'a>> {
    let al = wer_align(reference, hyp);
    let current = al.edit_count() as i64;
    // reference position -> hypothesis position it is aligned after (-1 = before start)
    let mut align = vec![-1i64; reference.len()];
    let mut ref_err = vec![false; reference.len()];
    let mut hyp_err = vec![false; hyp.len()];
    let mut pos_h = -1i64;
    for op in &al.ops {
        match *op {
            AlignOp::Match { r, h } => {
                pos_h = h as i64;
                align[r] = pos_h;
            }
            AlignOp::Substitute { r, h } => {
                pos_h = h as i64;
                align[r] = pos_h;
                ref_err[r] = true;
                hyp_err[h] = true;
            }
            AlignOp::Delete { r } => {
                align[r] = pos_h;
                ref_err[r] = true;
            }
            AlignOp::Insert { h } => {
                pos_h = h as i64;
                hyp_err[h] = true;
            }
        }
    }

    let mut best: Option<Candidate<'a>> = None;
    'outer: for start_h in 0..hyp.len() {
        for start_r in 0..reference.len() {
            if start_r.abs_diff(start_h) > MAX_SHIFT_DIST {
                continue;
            }
            let mut len = 0;
            while len < MAX_SHIFT_SIZE
                && start_h + len < hyp.len()
                && start_r + len < reference.len()
                && hyp[start_h + len] == reference[start_r + len]
            {
                len += 1;
                if !hyp_err[start_h..start_h + len].iter().any(|&e| e)
                    || !ref_err[start_r..start_r + len].iter().any(|&e| e)
                {
                    continue;
                }
                let anchor = align[start_r];
                if (start_h as i64) <= anchor && anchor < (start_h + len) as i64 {
                    continue;
                }
                let mut prev_dest = None;
                for offset in -1..len as i64 {
                    let rpos = start_r as i64 + offset;
                    let dest = if rpos == -1 {
                        0
                    } else if (rpos as usize) < reference.len() {
                        (align[rpos as usize] + 1) as usize
                    } else {
                        break;
                    };
                    if prev_dest == Some(dest) {
                        continue;
                    }
                    prev_dest = Some(dest);
                    let shift = Shift {
                        start: start_h,
                        len,
                        dest,
                    };
                    let words = shift.apply(hyp);
                    let cand = Candidate {
                        gain: current - edit_distance(&words, reference) as i64,
                        len,
                        start: start_h,
                        dest,
                        words,
                    };
                    *checked += 1;
                    if best.as_ref().is_none_or(|b| cand.beats(b)) {
                        best = Some(cand);
                    }
                }
            }
            if *checked >= MAX_SHIFT_CANDIDATES {
                break 'outer;
            }
        }
    }
    best
}

/// TER of one sentence pair with its edit trace.
pub fn ter_sentence<S: AsRef<str>>(hyp: &[S], reference: &[S]) -> TerSentence {
    let reference: Vec<&str> = reference.iter().map(AsRef::as_ref).collect();
    let mut words: Vec<&str> = hyp.iter().map(AsRef::as_ref).collect();
    let mut ops = Vec::new();
    let mut checked = 0;
    while let Some(c) = best_shift(&words, &reference, &mut checked) {
        if c.gain <= 0 {
            break;
        }
        ops.push(EditOp::Shift(Shift {
            start: c.start,
            len: c.len,
            dest: c.dest,
        }));
        words = c.words;
        if checked >= MAX_SHIFT_CANDIDATES {
            break;
        }
    }
    let shifts = ops.len();
    let (mut substitutions, mut insertions, mut deletions) = (0, 0, 0);
    for op in wer_align(&reference, &words).ops {
        ops.push(match op {
            AlignOp::Match { .. } => EditOp::Keep,
            AlignOp::Substitute { r, .. } => {
                substitutions += 1;
                EditOp::Substitute(reference[r].to_owned())
            }
            AlignOp::Delete { r } => {
                insertions += 1;
                EditOp::Insert(reference[r].to_owned())
            }
            AlignOp::Insert { .. } => {
                deletions += 1;
                EditOp::Delete
            }
        });
    }
    TerSentence {
        shifts,
        substitutions,
        insertions,
        deletions,
        ref_len: reference.len(),
        trace: EditTrace { ops },
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerStats {
    pub shifts: u64,
    pub substitutions: u64,
    pub insertions: u64,
    pub deletions: u64,
    pub ref_len: u64,
}

impl TerStats {
    pub fn edits(&self) -> u64 {
        self.shifts + self.substitutions + self.insertions + self.deletions
    }
}

impl AddAssign<&TerStats> for TerStats {
    fn add_assign(&mut self, rhs: &TerStats) {
        self.shifts += rhs.shifts;
        self.substitutions += rhs.substitutions;
        self.insertions += rhs.insertions;
        self.deletions += rhs.deletions;
        self.ref_len += rhs.ref_len;
    }
}

pub(super) fn value_from_parts(edits: f64, ref_len: f64) -> f64 {
    if ref_len == 0.0 {
        0.0
    } else {
        100.0 * edits / ref_len
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Ter;

impl CorpusMetric for Ter {
    type Stats = TerStats;

    fn name(&self) -> MetricName {
        MetricName::Ter
    }

    fn sentence_stats(&self, hyp: &[String], reference: &[String], line: usize) -> Result<TerStats> {
        if reference.is_empty() {
            return Err(Error::EmptyReference { line });
        }
        let s = ter_sentence(hyp, reference);
        Ok(TerStats {
            shifts: s.shifts as u64,
            substitutions: s.substitutions as u64,
            insertions: s.insertions as u64,
            deletions: s.deletions as u64,
            ref_len: s.ref_len as u64,
        })
    }

    fn score(&self, t: &TerStats) -> MetricScore {
        MetricScore {
            name: MetricName::Ter,
            value: value_from_parts(t.edits() as f64, t.ref_len as f64),
            components: vec![
                ("edits".into(), t.edits() as f64),
                ("ref_len".into(), t.ref_len as f64),
                ("shifts".into(), t.shifts as f64),
                ("substitutions".into(), t.substitutions as f64),
                ("insertions".into(), t.insertions as f64),
                ("deletions".into(), t.deletions as f64),
            ],
        }
    }
}

pub fn ter(hyps: &[Sentence], refs: &[Sentence]) -> Result<MetricScore> {
    Ter.evaluate(hyps, refs)
}
