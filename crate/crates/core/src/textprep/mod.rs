//! Deterministic preprocessing: tokenize, truecase, then BPE-segment.
//!
//! The pipeline order is fixed as tokenize → truecase → BPE. Each stage's
//! learned artifact serializes to a plain text file.

mod bpe;
mod tokenize;
mod truecase;

pub use bpe::{apply_bpe, learn_bpe, undo_bpe, BpeModel, Merge, CONTINUATION_MARKER, END_OF_WORD};
pub use tokenize::{is_detachable, tokenize};
pub use truecase::{apply_truecase, learn_truecase, TruecaseEntry, TruecaseModel};
