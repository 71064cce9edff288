use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Sentence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruecaseEntry {
    /// Most frequent surface casing seen away from sentence-initial position.
    pub surface: String,
    /// Number of non-initial observations of this lowercased form.
    pub count: u64,
}

/// Maps lowercased tokens to their preferred casing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruecaseModel {
    entries: BTreeMap<String, TruecaseEntry>,
}

impl TruecaseModel {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, lowercased: &str) -> Option<&TruecaseEntry> {
        self.entries.get(lowercased)
    }

    /// Looks up the preferred casing of `token`, if known.
    pub fn best_form(&self, token: &str) -> Option<&str> {
        self.entries
            .get(&token.to_lowercase())
            .map(|e| e.surface.as_str())
    }

    pub fn insert(&mut self, surface: &str, count: u64) -> Result<()> {
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            return Err(Error::InvalidParameter(format!(
                "truecase surface {surface:?} is empty or contains whitespace"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidParameter(format!(
                "truecase count for {surface:?} must be at least 1"
            )));
        }
        self.entries.insert(
            surface.to_lowercase(),
            TruecaseEntry {
                surface: surface.to_owned(),
                count,
            },
        );
        Ok(())
    }

    /// One `surface<TAB>count` record per line, ordered by lowercased key.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.entries.values() {
            let _ = writeln!(out, "{}\t{}", e.surface, e.count);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut model = TruecaseModel::default();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (surface, count) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(i + 1, "expected surface<TAB>count"))?;
            let count: u64 = count
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad count {count:?}")))?;
            model
                .insert(surface, count)
                .map_err(|e| Error::parse(i + 1, e.to_string()))?;
        }
        Ok(model)
    }
}

/// Counts surface casings at every non-initial position and keeps the most
/// frequent one per lowercased form. Ties go to the lexicographically smallest
/// surface.
pub fn learn_truecase(corpus: &[Sentence]) -> TruecaseModel {
    let mut counts: HashMap<String, HashMap<&str, u64>> = HashMap::new();
    for sentence in corpus {
        for tok in sentence.iter().skip(1) {
            *counts
                .entry(tok.to_lowercase())
                .or_default()
                .entry(tok.as_str())
                .or_default() += 1;
        }
    }
    let entries = counts
        .into_iter()
        .map(|(key, forms)| {
            let total = forms.values().sum();
            let (best, _) = forms
                .into_iter()
                .max_by(|(sa, ca), (sb, cb)| ca.cmp(cb).then_with(|| sb.cmp(sa)))
                .expect("at least one form per key");
            (
                key,
                TruecaseEntry {
                    surface: best.to_owned(),
                    count: total,
                },
            )
        })
        .collect();
    TruecaseModel { entries }
}

/// Recases the sentence-initial token; all other tokens pass through.
/// Unknown initial tokens are lowercased.
pub fn apply_truecase(model: &TruecaseModel, tokens: &[String]) -> Sentence {
    let mut out = tokens.to_vec();
    if let Some(first) = out.first_mut() {
        *first = match model.best_form(first) {
            Some(best) => best.to_owned(),
            None => first.to_lowercase(),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sent(xs: &[&str]) -> Sentence {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn learns_non_initial_casing_only() {
        let model = learn_truecase(&[sent(&["He", "saw", "iPhone"]), sent(&["iPhone", "broke"])]);
        let e = model.get("iphone").unwrap();
        assert_eq!(e.surface, "iPhone");
        assert_eq!(e.count, 1);
        assert!(model.get("he").is_none());
    }

    #[test]
    fn initial_only_words_absent() {
        let model = learn_truecase(&[sent(&["He", "said"]), sent(&["he", "said"])]);
        assert!(model.get("he").is_none());
        assert_eq!(model.best_form("said"), Some("said"));
    }

    #[test]
    fn empty_corpus() {
        assert!(learn_truecase(&[]).is_empty());
    }

    #[test]
    fn tie_breaks_to_smallest_surface() {
        let model = learn_truecase(&[sent(&["x", "Apple", "apple", "APPLE", "apple", "Apple"])]);
        // "Apple" and "apple" both seen twice; "Apple" < "apple"
        assert_eq!(model.best_form("APPLE"), Some("Apple"));
        assert_eq!(model.get("apple").unwrap().count, 5);
    }

    #[test]
    fn apply_cases() {
        let mut model = TruecaseModel::default();
        model.insert("iPhone", 1).unwrap();
        assert_eq!(apply_truecase(&model, &sent(&["IPhone", "broke"])), sent(&["iPhone", "broke"]));
        let empty = TruecaseModel::default();
        assert_eq!(apply_truecase(&empty, &sent(&["Hello", "world"])), sent(&["hello", "world"]));
        assert!(apply_truecase(&empty, &[]).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let model = learn_truecase(&[sent(&["a", "NASA", "said", "Obama"]), sent(&["b", "nasa", "NASA"])]);
        let text = model.to_text();
        assert_eq!(text, "NASA\t3\nObama\t1\nsaid\t1\n");
        assert_eq!(TruecaseModel::from_text(&text).unwrap(), model);
    }

    #[test]
    fn malformed_model_lines() {
        assert!(matches!(
            TruecaseModel::from_text("ok\t1\nbroken\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(TruecaseModel::from_text("zero\t0\n").is_err());
    }
}
