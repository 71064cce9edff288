//! Five-class automatic error classification in the style of Hjerson.
//!
//! A WER alignment marks which words are wrong; bag-of-words residues (PER)
//! say whether a wrong word is missing from the other side altogether; base
//! forms from [`stem`] separate inflection errors from lexical ones.

mod align;
mod classify;
mod stem;

pub use align::{edit_distance, wer_align, AlignOp, WerAlignment};
pub use classify::{
    classify_corpus, classify_errors, classify_sentence, error_rates, ErrorClass, ErrorClassCounts, ErrorRates,
    SentenceClassification,
};
pub use stem::stem;
