//! Rule and lexicon tagger over a 12-tag coarse tagset.
//!
//! Tagging order, first hit wins:
//!
//! 1. closed-class lexicon (case-insensitive): DET, PRON, ADP, CONJ, PRT
//! 2. every character punctuation → PUNCT
//! 3. digits with optional `.`/`,` separators and sign → NUM
//! 4. suffix rules with at least three characters before the suffix:
//!    `-ly` ADV; `-ing`, `-ed` VERB; `-ous`, `-ful`, `-ive` ADJ
//! 5. tokens without any alphanumeric character → X
//! 6. otherwise NOUN

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Num,
    Conj,
    Prt,
    Punct,
    X,
}

impl PosTag {
    pub const ALL: [PosTag; 12] = [
        PosTag::Noun,
        PosTag::Verb,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Pron,
        PosTag::Det,
        PosTag::Adp,
        PosTag::Num,
        PosTag::Conj,
        PosTag::Prt,
        PosTag::Punct,
        PosTag::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Num => "NUM",
            PosTag::Conj => "CONJ",
            PosTag::Prt => "PRT",
            PosTag::Punct => "PUNCT",
            PosTag::X => "X",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown POS tag {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    tokens: Vec<String>,
    tags: Vec<PosTag>,
}

impl TaggedSentence {
    pub fn new(tokens: Vec<String>, tags: Vec<PosTag>) -> Result<Self> {
        if tokens.len() != tags.len() {
            return Err(Error::InvalidParameter(format!(
                "{} tokens but {} tags",
                tokens.len(),
                tags.len()
            )));
        }
        Ok(TaggedSentence { tokens, tags })
    }

    /// Tags `tokens` with [`coarse_tag`].
    pub fn tag(tokens: Vec<String>) -> Self {
        let tags = coarse_tag(&tokens);
        TaggedSentence { tokens, tags }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn tags(&self) -> &[PosTag] {
        &self.tags
    }
}

const DET: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "each", "every", "no", "all", "both",
    "either", "neither", "another", "such", "what", "which", "whose",
];
const PRON: &[&str] = &[
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "my", "your", "his", "its",
    "our", "their", "mine", "yours", "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
    "itself", "ourselves", "themselves", "who", "whom", "someone", "something", "anyone", "anything",
    "everyone", "everything", "nobody", "nothing",
];
const ADP: &[&str] = &[
    "in", "on", "at", "by", "for", "with", "from", "of", "about", "into", "onto", "over", "under", "between",
    "through", "during", "before", "after", "above", "below", "against", "among", "without", "within",
    "across", "behind", "beyond", "near", "since", "until", "upon", "via", "per", "like", "towards", "toward",
    "despite", "around", "along", "up", "down", "off", "out",
];
const CONJ: &[&str] = &[
    "and", "or", "but", "nor", "yet", "so", "because", "although", "though", "while", "whereas", "if",
    "unless", "whether",
];
const PRT: &[&str] = &["to", "not", "n't", "'s", "'"];

fn lexicon(lower: &str) -> Option<PosTag> {
    [
        (DET, PosTag::Det),
        (PRON, PosTag::Pron),
        (ADP, PosTag::Adp),
        (CONJ, PosTag::Conj),
        (PRT, PosTag::Prt),
    ]
    .into_iter()
    .find(|(words, _)| words.contains(&lower))
    .map(|(_, tag)| tag)
}

fn is_punct(c: char) -> bool {
    c.is_ascii_punctuation() || "„“”‘’«»‹›–—…¿¡·".contains(c)
}

fn is_numeral(tok: &str) -> bool {
    let body = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    body.starts_with(|c: char| c.is_ascii_digit())
        && body.ends_with(|c: char| c.is_ascii_digit())
        && body.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

const SUFFIXES: [(&str, PosTag); 6] = [
    ("ly", PosTag::Adv),
    ("ing", PosTag::Verb),
    ("ed", PosTag::Verb),
    ("ous", PosTag::Adj),
    ("ful", PosTag::Adj),
    ("ive", PosTag::Adj),
];

fn tag_one(tok: &str) -> PosTag {
    let lower = tok.to_lowercase();
    if let Some(t) = lexicon(&lower) {
        return t;
    }
    if !tok.is_empty() && tok.chars().all(is_punct) {
        return PosTag::Punct;
    }
    if is_numeral(tok) {
        return PosTag::Num;
    }
    for (suffix, tag) in SUFFIXES {
        if let Some(base) = lower.strip_suffix(suffix) {
            if base.chars().count() >= 3 {
                return tag;
            }
        }
    }
    if !tok.chars().any(char::is_alphanumeric) {
        return PosTag::X;
    }
    PosTag::Noun
}

pub fn coarse_tag<S: AsRef<str>>(tokens: &[S]) -> Vec<PosTag> {
    tokens.iter().map(|t| tag_one(t.as_ref())).collect()
}

/// Parses a `word_TAG word_TAG ...` line. The tag follows the last underscore.
pub fn parse_tagged_line(line: &str) -> Result<TaggedSentence> {
    let mut tokens = Vec::new();
    let mut tags = Vec::new();
    for item in line.split_whitespace() {
        let (word, tag) = item
            .rsplit_once('_')
            .filter(|(w, _)| !w.is_empty())
            .ok_or_else(|| Error::InvalidParameter(format!("expected word_TAG, got {item:?}")))?;
        tokens.push(word.to_owned());
        tags.push(tag.parse()?);
    }
    TaggedSentence::new(tokens, tags)
}
