//! Lexical and syntactic variety, and n-gram precision/recall against a
//! reference.

mod ngram;
mod tagger;

pub use ngram::{ngram_precision_recall, pos_ngram_variety, vocab_size, CountMode, PrecisionRecall, VarietyCounts};
pub use tagger::{coarse_tag, parse_tagged_line, PosTag, TaggedSentence};
