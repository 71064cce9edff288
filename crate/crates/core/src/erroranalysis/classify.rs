use std::collections::HashMap;
use std::fmt;
use std::ops::AddAssign;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::align::{wer_align, AlignOp, WerAlignment};
use super::stem::stem;
use crate::error::check_aligned;
use crate::{Error, Result, Sentence};

/// Error categories in report column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ErrorClass {
    Morph,
    Order,
    Omission,
    Addition,
    Mistranslation,
}

impl ErrorClass {
    pub const ALL: [ErrorClass; 5] = [
        ErrorClass::Morph,
        ErrorClass::Order,
        ErrorClass::Omission,
        ErrorClass::Addition,
        ErrorClass::Mistranslation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorClass::Morph => "morph",
            ErrorClass::Order => "order",
            ErrorClass::Omission => "omission",
            ErrorClass::Addition => "addition",
            ErrorClass::Mistranslation => "mistranslation",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-class error-word counts on each side plus the token totals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorClassCounts {
    pub reference: [u64; 5],
    pub hypothesis: [u64; 5],
    pub ref_total: u64,
    pub hyp_total: u64,
}

impl ErrorClassCounts {
    pub fn reference_count(&self, class: ErrorClass) -> u64 {
        self.reference[class.index()]
    }

    pub fn hypothesis_count(&self, class: ErrorClass) -> u64 {
        self.hypothesis[class.index()]
    }
}

impl AddAssign<&ErrorClassCounts> for ErrorClassCounts {
    fn add_assign(&mut self, rhs: &ErrorClassCounts) {
        for k in 0..5 {
            self.reference[k] += rhs.reference[k];
            self.hypothesis[k] += rhs.hypothesis[k];
        }
        self.ref_total += rhs.ref_total;
        self.hyp_total += rhs.hyp_total;
    }
}

impl<'a> std::iter::Sum<&'a ErrorClassCounts> for ErrorClassCounts {
    fn sum<I: Iterator<Item = &'a ErrorClassCounts>>(iter: I) -> Self {
        let mut acc = ErrorClassCounts::default();
        for c in iter {
            acc += c;
        }
        acc
    }
}

/// Class label of every token; `None` marks a WER-correct word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceClassification {
    pub reference: Vec<Option<ErrorClass>>,
    pub hypothesis: Vec<Option<ErrorClass>>,
    pub counts: ErrorClassCounts,
}

/// Which alignment operation covers each token.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Unset,
    Match,
    Substitute,
    Gap,
}

fn op_slots(len_r: usize, len_h: usize, alignment: &WerAlignment) -> Result<(Vec<Slot>, Vec<Slot>)> {
    let mut rs = vec![Slot::Unset; len_r];
    let mut hs = vec![Slot::Unset; len_h];
    let set = |slots: &mut [Slot], idx: usize, slot: Slot, side: &str| -> Result<()> {
        match slots.get_mut(idx) {
            Some(s @ Slot::Unset) => {
                *s = slot;
                Ok(())
            }
            Some(_) => Err(Error::AlignmentMismatch(format!("{side} token {idx} aligned twice"))),
            None => Err(Error::AlignmentMismatch(format!("{side} index {idx} out of range"))),
        }
    };
    for op in &alignment.ops {
        match *op {
            AlignOp::Match { r, h } => {
                set(&mut rs, r, Slot::Match, "reference")?;
                set(&mut hs, h, Slot::Match, "hypothesis")?;
            }
            AlignOp::Substitute { r, h } => {
                set(&mut rs, r, Slot::Substitute, "reference")?;
                set(&mut hs, h, Slot::Substitute, "hypothesis")?;
            }
            AlignOp::Delete { r } => set(&mut rs, r, Slot::Gap, "reference")?,
            AlignOp::Insert { h } => set(&mut hs, h, Slot::Gap, "hypothesis")?,
        }
    }
    if let Some(i) = rs.iter().position(|s| *s == Slot::Unset) {
        return Err(Error::AlignmentMismatch(format!("reference token {i} not aligned")));
    }
    if let Some(i) = hs.iter().position(|s| *s == Slot::Unset) {
        return Err(Error::AlignmentMismatch(format!("hypothesis token {i} not aligned")));
    }
    Ok((rs, hs))
}

/// Marks the WER-error tokens of `side` that have no counterpart left in the
/// other side's bag of words. Matched tokens consume the bag first; remaining
/// counterparts cover WER-error tokens left to right.
fn per_errors<S: AsRef<str>>(side: &[S], slots: &[Slot], other: &[S]) -> Vec<bool> {
    let mut avail: HashMap<&str, i64> = HashMap::new();
    for w in other {
        *avail.entry(w.as_ref()).or_default() += 1;
    }
    for (w, s) in side.iter().zip(slots) {
        if *s == Slot::Match {
            *avail.entry(w.as_ref()).or_default() -= 1;
        }
    }
    side.iter()
        .zip(slots)
        .map(|(w, s)| {
            if *s == Slot::Match {
                return false;
            }
            let left = avail.entry(w.as_ref()).or_default();
            if *left > 0 {
                *left -= 1;
                false
            } else {
                true
            }
        })
        .collect()
}

/// Labels every token of one sentence pair.
pub fn classify_sentence<S: AsRef<str>>(
    reference: &[S],
    hyp: &[S],
    alignment: &WerAlignment,
) -> Result<SentenceClassification> {
    let (rslots, hslots) = op_slots(reference.len(), hyp.len(), alignment)?;
    for op in &alignment.ops {
        if let AlignOp::Match { r, h } = *op {
            if reference[r].as_ref() != hyp[h].as_ref() {
                return Err(Error::AlignmentMismatch(format!(
                    "match between different tokens at reference {r}, hypothesis {h}"
                )));
            }
        }
    }

    let rper = per_errors(reference, &rslots, hyp);
    let hper = per_errors(hyp, &hslots, reference);
    let mut rlab: Vec<Option<ErrorClass>> = vec![None; reference.len()];
    let mut hlab: Vec<Option<ErrorClass>> = vec![None; hyp.len()];

    // morphology: PER errors on both sides sharing a base form, paired greedily
    let hstems: Vec<Option<String>> = hyp
        .iter()
        .zip(&hper)
        .map(|(w, &e)| e.then(|| stem(w.as_ref())))
        .collect();
    for (ri, w) in reference.iter().enumerate() {
        if !rper[ri] {
            continue;
        }
        let base = stem(w.as_ref());
        let partner = (0..hyp.len())
            .find(|&hi| hlab[hi].is_none() && hstems[hi].as_deref() == Some(base.as_str()));
        if let Some(hi) = partner {
            rlab[ri] = Some(ErrorClass::Morph);
            hlab[hi] = Some(ErrorClass::Morph);
        }
    }

    let residual = |slot: Slot, per: bool, gap_class: ErrorClass| -> Option<ErrorClass> {
        match (slot, per) {
            (Slot::Match, _) => None,
            (_, false) => Some(ErrorClass::Order),
            (Slot::Gap, true) => Some(gap_class),
            (_, true) => Some(ErrorClass::Mistranslation),
        }
    };
    for i in 0..reference.len() {
        if rlab[i].is_none() {
            rlab[i] = residual(rslots[i], rper[i], ErrorClass::Omission);
        }
    }
    for i in 0..hyp.len() {
        if hlab[i].is_none() {
            hlab[i] = residual(hslots[i], hper[i], ErrorClass::Addition);
        }
    }

    let mut counts = ErrorClassCounts {
        ref_total: reference.len() as u64,
        hyp_total: hyp.len() as u64,
        ..Default::default()
    };
    for c in rlab.iter().flatten() {
        counts.reference[c.index()] += 1;
    }
    for c in hlab.iter().flatten() {
        counts.hypothesis[c.index()] += 1;
    }
    Ok(SentenceClassification {
        reference: rlab,
        hypothesis: hlab,
        counts,
    })
}

pub fn classify_errors<S: AsRef<str>>(
    reference: &[S],
    hyp: &[S],
    alignment: &WerAlignment,
) -> Result<ErrorClassCounts> {
    classify_sentence(reference, hyp, alignment).map(|c| c.counts)
}

/// Counts summed over line-aligned corpora.
pub fn classify_corpus(references: &[Sentence], hyps: &[Sentence]) -> Result<ErrorClassCounts> {
    check_aligned("hypotheses", hyps, "references", references)?;
    let per_line = references
        .par_iter()
        .zip(hyps)
        .map(|(r, h)| classify_errors(r, h, &wer_align(r, h)))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_line.iter().sum())
}

/// Class rates in percent, unrounded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRates {
    pub morph: f64,
    pub order: f64,
    pub omission: f64,
    pub addition: f64,
    pub mistranslation: f64,
}

impl ErrorRates {
    pub fn get(&self, class: ErrorClass) -> f64 {
        match class {
            ErrorClass::Morph => self.morph,
            ErrorClass::Order => self.order,
            ErrorClass::Omission => self.omission,
            ErrorClass::Addition => self.addition,
            ErrorClass::Mistranslation => self.mistranslation,
        }
    }
}

/// Morph, order and mistranslation average the reference-side and
/// hypothesis-side rates; omission is normalised by reference length and
/// addition by hypothesis length.
pub fn error_rates(counts: &ErrorClassCounts) -> Result<ErrorRates> {
    if counts.ref_total == 0 {
        return Err(Error::ZeroTotal { side: "reference" });
    }
    if counts.hyp_total == 0 {
        return Err(Error::ZeroTotal { side: "hypothesis" });
    }
    let rt = counts.ref_total as f64;
    let ht = counts.hyp_total as f64;
    let two_sided = |c: ErrorClass| {
        (counts.reference_count(c) as f64 / rt + counts.hypothesis_count(c) as f64 / ht) / 2.0 * 100.0
    };
    Ok(ErrorRates {
        morph: two_sided(ErrorClass::Morph),
        order: two_sided(ErrorClass::Order),
        omission: counts.reference_count(ErrorClass::Omission) as f64 / rt * 100.0,
        addition: counts.hypothesis_count(ErrorClass::Addition) as f64 / ht * 100.0,
        mistranslation: two_sided(ErrorClass::Mistranslation),
    })
}
