use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use btforge_core::{split_tokens, Sentence};
use tempfile::NamedTempFile;

use crate::args::{Cli, Command};
use crate::error::CliError;

/// Everything a run touches, checked before any work starts.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    /// `--in`, or stdin when absent.
    pub input: Option<PathBuf>,
    /// Every file the command will read, `--in` included.
    pub inputs: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub threads: Option<usize>,
    pub pretty: bool,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let g = &cli.global;
        let mut inputs: Vec<PathBuf> = g.input.iter().cloned().collect();
        let command = match &cli.command {
            Command::Tok => "tok",
            Command::Truecase(a) => {
                inputs.extend(a.model.iter().cloned());
                "truecase"
            }
            Command::Bpe(a) => {
                inputs.extend(a.model.iter().chain(&a.joint).cloned());
                "bpe"
            }
            Command::Mix(a) => {
                inputs.extend(
                    [&a.a, &a.a_src, &a.a_tgt, &a.b, &a.b_src, &a.b_tgt]
                        .into_iter()
                        .flatten()
                        .cloned(),
                );
                "mix"
            }
            Command::Sample(a) => {
                inputs.extend(a.src.iter().chain(&a.tgt).cloned());
                "sample"
            }
            Command::Lenstats => "lenstats",
            Command::Eval(a) => {
                inputs.extend([a.hyp.clone(), a.reference.clone()]);
                "eval"
            }
            Command::Errors(a) => {
                inputs.extend([a.hyp.clone(), a.reference.clone()]);
                "errors"
            }
            Command::Variety(_) => "variety",
            Command::Pr4(a) => {
                inputs.extend([a.hyp.clone(), a.reference.clone()]);
                "pr4"
            }
            Command::Signif(a) => {
                inputs.extend([a.hyp_a.clone(), a.hyp_b.clone(), a.reference.clone()]);
                "signif"
            }
            Command::Lrsched(_) => "lrsched",
            Command::Report(a) => {
                inputs.push(a.reference.clone());
                for s in &a.systems {
                    inputs.push(parse_system(s)?.1);
                }
                "report"
            }
        };
        if g.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(RunConfig {
            command,
            input: g.input.clone(),
            inputs,
            output: g.out.clone(),
            seed: g.seed,
            threads: g.threads,
            pretty: g.pretty,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for p in &self.inputs {
            let f = File::open(p).map_err(|e| CliError::io(p, e))?;
            let meta = f.metadata().map_err(|e| CliError::io(p, e))?;
            if meta.is_dir() {
                return Err(CliError::input(&p.display().to_string(), "is a directory"));
            }
        }
        if let Some(out) = &self.output {
            let dir = parent_dir(out);
            if !dir.is_dir() {
                return Err(CliError::input(&out.display().to_string(), "output directory does not exist"));
            }
        }
        Ok(())
    }
}

/// Splits `LABEL=FILE`.
pub fn parse_system(spec: &str) -> Result<(String, PathBuf), CliError> {
    match spec.split_once('=') {
        Some((label, path)) if !label.is_empty() && !path.is_empty() => Ok((label.to_owned(), PathBuf::from(path))),
        _ => Err(CliError::Usage(format!("--sys expects LABEL=FILE, got {spec:?}"))),
    }
}

fn parent_dir(p: &Path) -> &Path {
    match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    }
}

/// Reads a file, or stdin when `path` is `None`.
pub fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    let mut bytes = Vec::new();
    match path {
        Some(p) => {
            File::open(p)
                .and_then(|mut f| f.read_to_end(&mut bytes))
                .map_err(|e| CliError::io(p, e))?;
        }
        None => {
            std::io::stdin()
                .read_to_end(&mut bytes)
                .map_err(|e| CliError::io(Path::new("<stdin>"), e))?;
        }
    }
    String::from_utf8(bytes).map_err(|e| {
        CliError::input(&display_name(path), format!("invalid UTF-8 at byte {}", e.utf8_error().valid_up_to()))
    })
}

pub fn display_name(path: Option<&Path>) -> String {
    path.map_or_else(|| "<stdin>".to_owned(), |p| p.display().to_string())
}

pub fn read_sentences(path: Option<&Path>) -> Result<Vec<Sentence>, CliError> {
    Ok(read_text(path)?.lines().map(split_tokens).collect())
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// so an existing file is replaced whole or not at all. `None` means stdout.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut tmp = NamedTempFile::new_in(parent_dir(p)).map_err(|e| CliError::io(p, e))?;
            tmp.write_all(text.as_bytes())
                .and_then(|_| tmp.as_file().sync_all())
                .map_err(|e| CliError::io(p, e))?;
            tmp.persist(p).map_err(|e| CliError::io(p, e.error))?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
        }
    }
    Ok(())
}
