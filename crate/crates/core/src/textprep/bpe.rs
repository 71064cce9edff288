//! Byte-pair-encoding subword segmentation.
//!
//! Words are split into characters with [`END_OF_WORD`] appended to the last
//! one, and the most frequent adjacent symbol pair is merged repeatedly.
//! Frequency ties go to the lexicographically smallest `(left, right)` pair and
//! learning stops once no pair occurs at least twice.
//!
//! Segmented text marks every non-final piece with [`CONTINUATION_MARKER`].
//! Tokens that themselves end in the marker cannot be told apart from a
//! continuation piece, so `undo_bpe` only inverts `apply_bpe` on tokens that
//! do not end in `@@`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Sentence};

pub const CONTINUATION_MARKER: &str = "@@";
pub const END_OF_WORD: &str = "</w>";
const HEADER: &str = "#btforge-bpe v1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Merge {
    pub left: String,
    pub right: String,
}

impl Merge {
    pub fn new(left: impl Into<String>, right: impl Into<String>) -> Self {
        Merge {
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn merged(&self) -> String {
        format!("{}{}", self.left, self.right)
    }
}

/// Ordered merge rules plus the continuation marker used on output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpeModel {
    merges: Vec<Merge>,
    ranks: HashMap<(String, String), usize>,
    marker: String,
}

impl Default for BpeModel {
    fn default() -> Self {
        BpeModel {
            merges: Vec::new(),
            ranks: HashMap::new(),
            marker: CONTINUATION_MARKER.to_owned(),
        }
    }
}

impl BpeModel {
    pub fn from_merges(merges: Vec<Merge>) -> Result<Self> {
        let mut ranks = HashMap::with_capacity(merges.len());
        for (rank, m) in merges.iter().enumerate() {
            if m.left.is_empty() || m.right.is_empty() {
                return Err(Error::InvalidParameter(format!("empty symbol in merge {rank}")));
            }
            if ranks.insert((m.left.clone(), m.right.clone()), rank).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate merge {} {}",
                    m.left, m.right
                )));
            }
        }
        Ok(BpeModel {
            merges,
            ranks,
            marker: CONTINUATION_MARKER.to_owned(),
        })
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn marker(&self) -> &str {
        &self.marker
    }

    pub fn len(&self) -> usize {
        self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.merges.is_empty()
    }

    /// Splits one word into subword pieces, without continuation markers.
    /// The end-of-word sentinel is stripped from the final piece.
    pub fn segment_word(&self, word: &str) -> Vec<String> {
        let mut symbols = initial_symbols(word);
        while symbols.len() > 1 {
            let best = symbols
                .windows(2)
                .filter_map(|w| self.ranks.get(&(w[0].clone(), w[1].clone())).copied())
                .min();
            let Some(rank) = best else { break };
            let m = &self.merges[rank];
            symbols = merge_symbols(&symbols, &m.left, &m.right);
        }
        if let Some(last) = symbols.last_mut() {
            last.truncate(last.len() - END_OF_WORD.len());
        }
        symbols
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for m in &self.merges {
            let _ = writeln!(out, "{} {}", m.left, m.right);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim_end() == HEADER => {}
            _ => return Err(Error::parse(1, format!("missing header {HEADER:?}"))),
        }
        let mut merges = Vec::new();
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(' ');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(l), Some(r), None) if !l.is_empty() && !r.is_empty() => {
                    merges.push(Merge::new(l, r))
                }
                _ => return Err(Error::parse(i + 1, "expected \"left right\"")),
            }
        }
        BpeModel::from_merges(merges)
    }
}

fn initial_symbols(word: &str) -> Vec<String> {
    let mut symbols: Vec<String> = word.chars().map(String::from).collect();
    if let Some(last) = symbols.last_mut() {
        last.push_str(END_OF_WORD);
    }
    symbols
}

fn merge_symbols(symbols: &[String], left: &str, right: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(symbols.len());
    let mut i = 0;
    while i < symbols.len() {
        if i + 1 < symbols.len() && symbols[i] == left && symbols[i + 1] == right {
            out.push(format!("{left}{right}"));
            i += 2;
        } else {
            out.push(symbols[i].clone());
            i += 1;
        }
    }
    out
}

type SymId = u32;

/// Interned symbol table; ids are stable for the lifetime of one learning run.
#[derive(Default)]
struct Symbols {
    names: Vec<Rc<str>>,
    ids: HashMap<Rc<str>, SymId>,
}

impl Symbols {
    fn intern(&mut self, s: &str) -> SymId {
        if let Some(&id) = self.ids.get(s) {
            return id;
        }
        let id = self.names.len() as SymId;
        let rc: Rc<str> = Rc::from(s);
        self.names.push(rc.clone());
        self.ids.insert(rc, id);
        id
    }

    fn name(&self, id: SymId) -> &Rc<str> {
        &self.names[id as usize]
    }
}

type Pair = (SymId, SymId);

struct PairStats {
    counts: HashMap<Pair, u64>,
    // (frequency desc, left, right) so the first element is the next merge
    queue: BTreeSet<(Reverse<u64>, Rc<str>, Rc<str>)>,
    occurrences: HashMap<Pair, HashSet<usize>>,
}

impl PairStats {
    fn adjust(&mut self, syms: &Symbols, pair: Pair, delta: i64) {
        let old = self.counts.get(&pair).copied().unwrap_or(0);
        let new = (old as i64 + delta) as u64;
        let (l, r) = (syms.name(pair.0).clone(), syms.name(pair.1).clone());
        if old > 0 {
            self.queue.remove(&(Reverse(old), l.clone(), r.clone()));
        }
        if new > 0 {
            self.queue.insert((Reverse(new), l, r));
            self.counts.insert(pair, new);
        } else {
            self.counts.remove(&pair);
        }
    }
}

/// Learns up to `num_merges` merges over the joint vocabulary of both corpora.
pub fn learn_bpe(corpus_a: &[Sentence], corpus_b: &[Sentence], num_merges: usize) -> BpeModel {
    let mut vocab: BTreeMap<&str, u64> = BTreeMap::new();
    for tok in corpus_a.iter().chain(corpus_b).flatten() {
        if !tok.is_empty() {
            *vocab.entry(tok.as_str()).or_default() += 1;
        }
    }

    let mut syms = Symbols::default();
    let mut words: Vec<(Vec<SymId>, u64)> = vocab
        .into_iter()
        .map(|(w, f)| {
            let ids = initial_symbols(w).iter().map(|s| syms.intern(s)).collect();
            (ids, f)
        })
        .collect();

    let mut stats = PairStats {
        counts: HashMap::new(),
        queue: BTreeSet::new(),
        occurrences: HashMap::new(),
    };
    for (idx, (ids, freq)) in words.iter().enumerate() {
        for w in ids.windows(2) {
            let p = (w[0], w[1]);
            *stats.counts.entry(p).or_default() += freq;
            stats.occurrences.entry(p).or_default().insert(idx);
        }
    }
    for (&(l, r), &c) in &stats.counts {
        stats.queue.insert((Reverse(c), syms.name(l).clone(), syms.name(r).clone()));
    }

    let mut merges = Vec::new();
    while merges.len() < num_merges {
        let Some((Reverse(freq), l, r)) = stats.queue.first().cloned() else { break };
        if freq < 2 {
            break;
        }
        let left = syms.ids[&l];
        let right = syms.ids[&r];
        let merged = syms.intern(&format!("{l}{r}"));
        merges.push(Merge::new(&*l, &*r));

        let mut touched: Vec<usize> = stats
            .occurrences
            .remove(&(left, right))
            .map(|s| s.into_iter().collect())
            .unwrap_or_default();
        touched.sort_unstable();
        for idx in touched {
            let (ids, freq) = &mut words[idx];
            let freq = *freq;
            if !ids.windows(2).any(|w| w[0] == left && w[1] == right) {
                continue;
            }
            for w in ids.windows(2) {
                stats.adjust(&syms, (w[0], w[1]), -(freq as i64));
            }
            let mut next = Vec::with_capacity(ids.len());
            let mut i = 0;
            while i < ids.len() {
                if i + 1 < ids.len() && ids[i] == left && ids[i + 1] == right {
                    next.push(merged);
                    i += 2;
                } else {
                    next.push(ids[i]);
                    i += 1;
                }
            }
            for w in next.windows(2) {
                let p = (w[0], w[1]);
                stats.adjust(&syms, p, freq as i64);
                stats.occurrences.entry(p).or_default().insert(idx);
            }
            *ids = next;
        }
    }

    BpeModel::from_merges(merges).expect("learned merges are unique")
}

/// Segments every token, marking all pieces but the last of each word.
pub fn apply_bpe(model: &BpeModel, tokens: &[String]) -> Sentence {
    let mut out = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let pieces = model.segment_word(tok);
        if pieces.is_empty() {
            out.push(tok.clone());
            continue;
        }
        let n = pieces.len();
        for (i, mut p) in pieces.into_iter().enumerate() {
            if i + 1 < n {
                p.push_str(&model.marker);
            }
            out.push(p);
        }
    }
    out
}

/// Rejoins marked pieces with their successors.
pub fn undo_bpe(tokens: &[String]) -> Result<Sentence> {
    let mut out = Vec::new();
    let mut pending = String::new();
    let mut open = false;
    for tok in tokens {
        if let Some(piece) = tok.strip_suffix(CONTINUATION_MARKER) {
            pending.push_str(piece);
            open = true;
        } else {
            pending.push_str(tok);
            out.push(std::mem::take(&mut pending));
            open = false;
        }
    }
    if open {
        return Err(Error::DanglingContinuation {
            token: tokens.last().cloned().unwrap_or_default(),
        });
    }
    Ok(out)
}
