//! Corpus engineering and machine-translation output analysis.
//!
//! The crate is organised around the stages of a back-translation study:
//!
//! * [`textprep`]: tokenization, truecasing and BPE subword segmentation.
//! * [`corpusops`]: mixing synthetic corpora, dev-set sampling and length statistics.
//! * [`metrics`]: corpus-level BLEU, TER, chrF and METEOR-lite.
//! * [`erroranalysis`]: WER alignment and five-class error classification.
//! * [`variety`]: vocabulary size, POS n-gram variety and n-gram precision/recall.
//! * [`stats`]: paired bootstrap resampling and learning-rate schedule rescaling.
//! * [`report`]: comparison tables with fixed column order and precision.
//!
//! Every operation is deterministic. Where work is spread over a rayon pool the
//! reductions are exact integer sums, so results never depend on thread count.

pub mod corpusops;
pub mod erroranalysis;
pub mod error;
pub mod metrics;
pub mod report;
pub mod stats;
pub mod textprep;
pub mod variety;

pub use error::{Error, Result};

/// A tokenized sentence.
pub type Sentence = Vec<String>;

/// Splits a pre-tokenized line on whitespace.
pub fn split_tokens(line: &str) -> Sentence {
    line.split_whitespace().map(str::to_owned).collect()
}

/// Joins tokens back into a single space-separated line.
pub fn join_tokens<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    for (i, tok) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(tok.as_ref());
    }
    out
}
