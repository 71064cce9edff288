//! Suffix-stripping stemmer for English base forms.
//!
//! Rules are tried in order and the first applicable one fires; the result is
//! fed back until no rule applies, which makes `stem` idempotent. A rule
//! applies only if at least `min_stem` characters remain before the suffix.
//!
//! | suffix | replacement | min_stem | undouble |
//! |--------|-------------|----------|----------|
//! | sses   | ss          | 1        | no       |
//! | ies    | y           | 2        | no       |
//! | ss     | (stop)      |          |          |
//! | s      |             | 3        | no       |
//! | ing    |             | 3        | yes      |
//! | ed     |             | 3        | yes      |
//! | ly     |             | 3        | no       |
//! | est    |             | 3        | yes      |
//! | er     |             | 3        | yes      |
//!
//! "Undouble" drops one letter of a trailing doubled consonant other than
//! l, s or z after stripping (`running` → `runn` → `run`).

struct Rule {
    suffix: &'static str,
    replacement: &'static str,
    min_stem: usize,
    undouble: bool,
    stop: bool,
}

const fn rule(suffix: &'static str, replacement: &'static str, min_stem: usize, undouble: bool) -> Rule {
    Rule {
        suffix,
        replacement,
        min_stem,
        undouble,
        stop: false,
    }
}

const RULES: [Rule; 9] = [
    rule("sses", "ss", 1, false),
    rule("ies", "y", 2, false),
    Rule {
        suffix: "ss",
        replacement: "ss",
        min_stem: 0,
        undouble: false,
        stop: true,
    },
    rule("s", "", 3, false),
    rule("ing", "", 3, true),
    rule("ed", "", 3, true),
    rule("ly", "", 3, false),
    rule("est", "", 3, true),
    rule("er", "", 3, true),
];

fn strip_once(word: &str) -> Option<String> {
    for r in &RULES {
        let Some(base) = word.strip_suffix(r.suffix) else { continue };
        if r.stop {
            return None;
        }
        if base.chars().count() < r.min_stem {
            continue;
        }
        let mut out = format!("{base}{}", r.replacement);
        if r.undouble {
            let tail: Vec<char> = out.chars().rev().take(2).collect();
            if tail.len() == 2
                && tail[0] == tail[1]
                && tail[0].is_ascii_alphabetic()
                && !"aeioulsz".contains(tail[0])
            {
                out.pop();
            }
        }
        return Some(out);
    }
    None
}

pub fn stem(token: &str) -> String {
    let mut cur = token.to_owned();
    while let Some(next) = strip_once(&cur) {
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rule_table_trace() {
        for (word, expected) in [
            ("cat", "cat"),
            ("cats", "cat"),
            ("running", "run"),
            ("stopped", "stop"),
            ("falling", "fall"),
            ("caresses", "caress"),
            ("class", "class"),
            ("studies", "study"),
            ("ties", "tie"),
            ("quickly", "quick"),
            ("biggest", "big"),
            ("bigger", "big"),
            ("sleeps", "sleep"),
            ("sing", "sing"),
            ("red", "red"),
            ("need", "need"),
            ("singers", "sing"),
            ("is", "is"),
            ("", ""),
        ] {
            assert_eq!(stem(word), expected, "stem({word:?})");
        }
    }

    proptest! {
        #[test]
        fn idempotent(w in "[a-z]{0,12}") {
            let once = stem(&w);
            prop_assert_eq!(stem(&once), once.clone());
            prop_assert!(once.len() <= w.len());
        }
    }
}
