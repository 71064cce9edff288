use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Two line-aligned inputs have different line counts.
    #[error("length mismatch: {left_name} has {left} lines but {right_name} has {right}")]
    LengthMismatch {
        left_name: &'static str,
        left: usize,
        right_name: &'static str,
        right: usize,
    },

    /// Target sides of two corpora that must share them differ (1-based line).
    #[error("target sides differ at line {line}")]
    TargetMismatch { line: usize },

    /// A reference sentence is empty where the metric needs a non-empty one (1-based line).
    #[error("empty reference at line {line}")]
    EmptyReference { line: usize },

    #[error("dangling continuation marker on final token {token:?}")]
    DanglingContinuation { token: String },

    #[error("no sentences")]
    NoSentences,

    #[error("no {n}-grams in {side}")]
    NoNgrams { n: usize, side: &'static str },

    #[error("zero token total on the {side} side")]
    ZeroTotal { side: &'static str },

    #[error("sample size {k} exceeds corpus size {len}")]
    SampleTooLarge { k: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Alignment does not describe the given sentence pair.
    #[error("alignment mismatch: {0}")]
    AlignmentMismatch(String),

    /// Malformed line in a model or corpus file (1-based line).
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("inconsistent metric sets: row {row:?} does not match the first row")]
    InconsistentRows { row: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

/// Checks that two line-aligned inputs have the same length.
pub(crate) fn check_aligned<A, B>(
    left_name: &'static str,
    left: &[A],
    right_name: &'static str,
    right: &[B],
) -> Result<()> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch {
            left_name,
            left: left.len(),
            right_name,
            right: right.len(),
        });
    }
    Ok(())
}
