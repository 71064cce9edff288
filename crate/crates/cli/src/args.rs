use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "btforge", version, about = "Back-translation corpus tools and MT evaluation")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Input file (default: stdin)
    #[arg(long = "in", global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Align TSV columns with spaces
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Split punctuation off whitespace tokens
    Tok,
    /// Learn or apply a truecasing model
    Truecase(TruecaseArgs),
    /// Learn, apply or undo BPE segmentation
    Bpe(BpeArgs),
    /// Combine two back-translated corpora sharing one target side
    Mix(MixArgs),
    /// Draw a seeded sample of corpus lines
    Sample(SampleArgs),
    /// Sentence length statistics
    Lenstats,
    /// Corpus-level metric scores
    Eval(EvalArgs),
    /// Error class rates
    Errors(ErrorsArgs),
    /// Vocabulary size and POS n-gram variety
    Variety(VarietyArgs),
    /// n-gram precision and recall against a reference
    Pr4(Pr4Args),
    /// Paired bootstrap significance test
    Signif(SignifArgs),
    /// Rescaled learning-rate decay schedule
    Lrsched(LrschedArgs),
    /// Comparison table over several systems
    Report(ReportArgs),
}

/// Exactly one of --learn and --apply.
#[derive(Args, Debug)]
pub struct TruecaseArgs {
    /// Learn a model from the input and write it out
    #[arg(long)]
    pub learn: bool,
    /// Apply the model given by --model
    #[arg(long)]
    pub apply: bool,
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
}

/// Exactly one of --learn, --apply and --undo.
#[derive(Args, Debug)]
pub struct BpeArgs {
    /// Learn at most N merges and write the model out
    #[arg(long, value_name = "N")]
    pub learn: Option<usize>,
    /// Apply the model given by --model
    #[arg(long)]
    pub apply: bool,
    /// Rejoin marked pieces
    #[arg(long)]
    pub undo: bool,
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Second corpus for a joint vocabulary when learning
    #[arg(long, value_name = "FILE")]
    pub joint: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixMode {
    Alt,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    AFirst,
    BFirst,
}

/// A corpus given as one TSV file or as a source/target file pair.
#[derive(Args, Debug)]
pub struct MixArgs {
    #[arg(long, value_enum, default_value = "alt")]
    pub mode: MixMode,
    #[arg(long, default_value_t = 500_000)]
    pub block: usize,
    #[arg(long, value_enum, default_value = "a-first")]
    pub order: Order,
    /// Corpus A as source<TAB>target<TAB>provenance
    #[arg(long, value_name = "FILE", conflicts_with_all = ["a_src", "a_tgt"])]
    pub a: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "a_tgt")]
    pub a_src: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "a_src")]
    pub a_tgt: Option<PathBuf>,
    #[arg(long, default_value = "a")]
    pub a_label: String,
    #[arg(long, value_name = "FILE", conflicts_with_all = ["b_src", "b_tgt"])]
    pub b: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "b_tgt")]
    pub b_src: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "b_src")]
    pub b_tgt: Option<PathBuf>,
    #[arg(long, default_value = "b")]
    pub b_label: String,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Number of lines to draw
    #[arg(short = 'k', long = "k")]
    pub k: usize,
    #[arg(long, value_name = "FILE", requires = "tgt", conflicts_with = "input")]
    pub src: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "src")]
    pub tgt: Option<PathBuf>,
    #[arg(long, default_value = "corpus")]
    pub label: String,
    /// Where to write the lines not drawn
    #[arg(long, value_name = "FILE")]
    pub rest: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricArg {
    Bleu,
    Ter,
    Chrf,
    Meteor,
    All,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub metric: MetricArg,
    #[arg(long, value_name = "FILE")]
    pub hyp: PathBuf,
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: PathBuf,
    /// chrF recall weight
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// chrF maximum character n-gram order
    #[arg(long = "max-n", default_value_t = 6)]
    pub max_n: usize,
    /// JSON instead of TSV
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ErrorsArgs {
    #[arg(long, value_name = "FILE")]
    pub hyp: PathBuf,
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: PathBuf,
    /// Row label (default: hypothesis file name)
    #[arg(long)]
    pub label: Option<String>,
    /// Per-line class counts instead of corpus rates
    #[arg(long)]
    pub per_sentence: bool,
}

#[derive(Args, Debug)]
pub struct VarietyArgs {
    /// Input is word_TAG tokens
    #[arg(long)]
    pub tagged: bool,
    #[arg(long = "n-max", default_value_t = 4)]
    pub n_max: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Word,
    Pos,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Multiset,
    Distinct,
}

#[derive(Args, Debug)]
pub struct Pr4Args {
    #[arg(long, value_name = "FILE")]
    pub hyp: PathBuf,
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: PathBuf,
    #[arg(long, value_enum, default_value = "word")]
    pub unit: Unit,
    #[arg(long, value_enum, default_value = "multiset")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Inputs are word_TAG tokens
    #[arg(long)]
    pub tagged: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignifMetric {
    Bleu,
    Ter,
    Chrf,
    Meteor,
}

#[derive(Args, Debug)]
pub struct SignifArgs {
    #[arg(long = "hyp-a", value_name = "FILE")]
    pub hyp_a: PathBuf,
    #[arg(long = "hyp-b", value_name = "FILE")]
    pub hyp_b: PathBuf,
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: PathBuf,
    #[arg(long, value_enum, default_value = "bleu")]
    pub metric: SignifMetric,
    /// Number of resamples
    #[arg(long = "B", default_value_t = 1000)]
    pub resamples: usize,
}

#[derive(Args, Debug)]
pub struct LrschedArgs {
    /// Epoch multiplier
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long = "base-epochs", default_value_t = 13)]
    pub base_epochs: u32,
    #[arg(long = "base-start", default_value_t = 8)]
    pub base_start: u32,
    #[arg(long = "base-factor", default_value_t = 0.5)]
    pub base_factor: f64,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long = "ref", value_name = "FILE")]
    pub reference: PathBuf,
    /// System as LABEL=FILE, repeatable; rows keep this order
    #[arg(long = "sys", value_name = "LABEL=FILE", required = true)]
    pub systems: Vec<String>,
    /// Add the five error-class rates
    #[arg(long)]
    pub errors: bool,
}
