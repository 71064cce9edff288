use std::fmt::Write as _;
use std::path::Path;

use btforge_core::corpusops::{length_stats, mix_alternating, mix_full, sample_lines, BlockOrder, MixPlan, ParallelCorpus};
use btforge_core::erroranalysis::{classify_corpus, classify_sentence, error_rates, wer_align, ErrorClass};
use btforge_core::metrics::{evaluate_named, MetricName, MetricOptions, MetricScore};
use btforge_core::report::{align_columns, format_fixed, render_comparison, render_score_line, ReportRow};
use btforge_core::stats::{lr_schedule, paired_bootstrap, BootstrapConfig, ScheduleSpec};
use btforge_core::textprep::{
    apply_bpe, apply_truecase, learn_bpe, learn_truecase, tokenize, undo_bpe, BpeModel, TruecaseModel,
};
use btforge_core::variety::{
    ngram_precision_recall, parse_tagged_line, pos_ngram_variety, vocab_size, CountMode, PosTag,
    TaggedSentence,
};
use btforge_core::{join_tokens, split_tokens, Error, Sentence};
use rayon::prelude::*;

use crate::args::*;
use crate::error::{param, CliError};
use crate::io::{display_name, parse_system, read_sentences, read_text, write_output, RunConfig};

type Res<T> = Result<T, CliError>;

pub fn execute(cli: &Cli, config: &RunConfig) -> Res<()> {
    config.validate()?;
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(&cli.command, config)),
        None => dispatch(&cli.command, config),
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Res<()> {
    let input = cfg.input.as_deref();
    let text = match command {
        Command::Tok => map_lines(input, |_, l| Ok(join_tokens(&tokenize(l))))?,
        Command::Truecase(a) => truecase(a, input)?,
        Command::Bpe(a) => bpe(a, input)?,
        Command::Mix(a) => mix(a)?,
        Command::Sample(a) => return sample(a, input, cfg.seed, cfg.output.as_deref()),
        Command::Lenstats => tsv(cfg, lenstats(input)?),
        Command::Eval(a) => eval(a, cfg)?,
        Command::Errors(a) => tsv(cfg, errors(a)?),
        Command::Variety(a) => tsv(cfg, variety(a, input)?),
        Command::Pr4(a) => tsv(cfg, pr4(a)?),
        Command::Signif(a) => tsv(cfg, signif(a, cfg.seed)?),
        Command::Lrsched(a) => tsv(cfg, lrsched(a)?),
        Command::Report(a) => tsv(cfg, report(a)?),
    };
    write_output(cfg.output.as_deref(), &text)
}

fn tsv(cfg: &RunConfig, text: String) -> String {
    if cfg.pretty {
        align_columns(&text)
    } else {
        text
    }
}

fn join_lines<S: AsRef<str>>(lines: impl IntoIterator<Item = S>) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(l.as_ref());
        out.push('\n');
    }
    out
}

/// Applies `f(line_number, line)` to every input line in parallel, keeping order.
fn map_lines(input: Option<&Path>, f: impl Fn(usize, &str) -> Res<String> + Sync) -> Res<String> {
    let text = read_text(input)?;
    let lines: Vec<&str> = text.lines().collect();
    let out = lines
        .par_iter()
        .enumerate()
        .map(|(i, l)| f(i + 1, l))
        .collect::<Res<Vec<String>>>()?;
    Ok(join_lines(out))
}

fn at_line(path: Option<&Path>, line: usize, e: Error) -> CliError {
    CliError::input(&display_name(path), format!("line {line}: {e}"))
}

fn in_file(path: &Path, e: Error) -> CliError {
    CliError::input(&path.display().to_string(), e)
}

fn one_action(flags: &[(&str, bool)]) -> Res<()> {
    let set: Vec<&str> = flags.iter().filter(|(_, on)| *on).map(|(n, _)| *n).collect();
    if set.len() != 1 {
        let names: Vec<String> = flags.iter().map(|(n, _)| format!("--{n}")).collect();
        return Err(CliError::Usage(format!("exactly one of {} is required", names.join(", "))));
    }
    Ok(())
}

fn model_path(model: &Option<std::path::PathBuf>) -> Res<&Path> {
    model
        .as_deref()
        .ok_or_else(|| CliError::Usage("--apply requires --model FILE".into()))
}

fn truecase(a: &TruecaseArgs, input: Option<&Path>) -> Res<String> {
    one_action(&[("learn", a.learn), ("apply", a.apply)])?;
    if a.learn {
        let corpus = read_sentences(input)?;
        return Ok(learn_truecase(&corpus).to_text());
    }
    let path = model_path(&a.model)?;
    let model = TruecaseModel::from_text(&read_text(Some(path))?).map_err(|e| in_file(path, e))?;
    map_lines(input, |_, l| Ok(join_tokens(&apply_truecase(&model, &split_tokens(l)))))
}

fn bpe(a: &BpeArgs, input: Option<&Path>) -> Res<String> {
    one_action(&[("learn", a.learn.is_some()), ("apply", a.apply), ("undo", a.undo)])?;
    if let Some(n) = a.learn {
        let corpus = read_sentences(input)?;
        let joint = match &a.joint {
            Some(p) => read_sentences(Some(p))?,
            None => Vec::new(),
        };
        return Ok(learn_bpe(&corpus, &joint, n).to_text());
    }
    if a.undo {
        return map_lines(input, |i, l| {
            undo_bpe(&split_tokens(l))
                .map(|s| join_tokens(&s))
                .map_err(|e| at_line(input, i, e))
        });
    }
    let path = model_path(&a.model)?;
    let model = BpeModel::from_text(&read_text(Some(path))?).map_err(|e| in_file(path, e))?;
    map_lines(input, |_, l| Ok(join_tokens(&apply_bpe(&model, &split_tokens(l)))))
}

fn load_corpus(
    tsv: Option<&Path>,
    src: Option<&Path>,
    tgt: Option<&Path>,
    label: &str,
    flag: &str,
) -> Res<ParallelCorpus> {
    match (tsv, src, tgt) {
        (Some(p), _, _) => ParallelCorpus::from_tsv(&read_text(Some(p))?).map_err(|e| in_file(p, e)),
        (None, Some(s), Some(t)) => {
            let (src, tgt) = (read_sentences(Some(s))?, read_sentences(Some(t))?);
            Ok(ParallelCorpus::with_label(src, tgt, label)?)
        }
        _ => Err(CliError::Usage(format!(
            "corpus {flag} needs --{flag} FILE or --{flag}-src FILE --{flag}-tgt FILE"
        ))),
    }
}

fn mix(a: &MixArgs) -> Res<String> {
    let ca = load_corpus(a.a.as_deref(), a.a_src.as_deref(), a.a_tgt.as_deref(), &a.a_label, "a")?;
    let cb = load_corpus(a.b.as_deref(), a.b_src.as_deref(), a.b_tgt.as_deref(), &a.b_label, "b")?;
    let out = match a.mode {
        MixMode::Alt => {
            let order = match a.order {
                Order::AFirst => BlockOrder::AFirst,
                Order::BFirst => BlockOrder::BFirst,
            };
            mix_alternating(&ca, &cb, param(MixPlan::new(a.block, order))?)?
        }
        MixMode::Full => match a.order {
            Order::AFirst => mix_full(&ca, &cb)?,
            Order::BFirst => mix_full(&cb, &ca)?,
        },
    };
    Ok(out.to_tsv())
}

fn sample(a: &SampleArgs, input: Option<&Path>, seed: u64, out: Option<&Path>) -> Res<()> {
    let corpus = match (&a.src, &a.tgt) {
        (Some(s), Some(t)) => ParallelCorpus::with_label(read_sentences(Some(s))?, read_sentences(Some(t))?, &a.label)?,
        _ => ParallelCorpus::from_tsv(&read_text(input)?).map_err(|e| CliError::input(&display_name(input), e))?,
    };
    let (picked, rest) = sample_lines(&corpus, a.k, seed)?;
    write_output(out, &picked.to_tsv())?;
    if let Some(p) = &a.rest {
        write_output(Some(p), &rest.to_tsv())?;
    }
    Ok(())
}

fn lenstats(input: Option<&Path>) -> Res<String> {
    let side = read_sentences(input)?;
    let st = length_stats(&side).map_err(|e| CliError::input(&display_name(input), e))?;
    let mut out = format!(
        "sentences\t{}\ntokens\t{}\nmean\t{}\nlength\tcount\n",
        st.sentences,
        st.tokens,
        format_fixed(st.mean, 4)
    );
    for (len, count) in &st.histogram {
        let _ = writeln!(out, "{len}\t{count}");
    }
    Ok(out)
}

fn read_pair(hyp: &Path, reference: &Path) -> Res<(Vec<Sentence>, Vec<Sentence>)> {
    Ok((read_sentences(Some(hyp))?, read_sentences(Some(reference))?))
}

fn eval(a: &EvalArgs, cfg: &RunConfig) -> Res<String> {
    let (hyps, refs) = read_pair(&a.hyp, &a.reference)?;
    let names: Vec<MetricName> = match a.metric {
        MetricArg::All => MetricName::ALL.to_vec(),
        MetricArg::Bleu => vec![MetricName::Bleu],
        MetricArg::Ter => vec![MetricName::Ter],
        MetricArg::Chrf => vec![MetricName::Chrf],
        MetricArg::Meteor => vec![MetricName::MeteorLite],
    };
    let opts = MetricOptions {
        chrf_beta: a.beta,
        chrf_max_n: a.max_n,
    };
    let scores = names
        .into_iter()
        .map(|m| param(evaluate_named(m, &hyps, &refs, opts)))
        .collect::<Res<Vec<MetricScore>>>()?;
    if a.json {
        let mut s = serde_json::to_string_pretty(&scores).expect("scores serialize");
        s.push('\n');
        return Ok(s);
    }
    Ok(tsv(cfg, scores.iter().map(render_score_line).collect()))
}

fn errors(a: &ErrorsArgs) -> Res<String> {
    let (hyps, refs) = read_pair(&a.hyp, &a.reference)?;
    if a.per_sentence {
        if hyps.len() != refs.len() {
            classify_corpus(&refs, &hyps)?;
        }
        let mut out = String::from("line");
        for c in ErrorClass::ALL {
            let _ = write!(out, "\t{0}_ref\t{0}_hyp", c.name());
        }
        out.push('\n');
        let rows = refs
            .par_iter()
            .zip(&hyps)
            .map(|(r, h)| classify_sentence(r, h, &wer_align(r, h)))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, s) in rows.iter().enumerate() {
            let _ = write!(out, "{}", i + 1);
            for c in ErrorClass::ALL {
                let _ = write!(out, "\t{}\t{}", s.counts.reference_count(c), s.counts.hypothesis_count(c));
            }
            out.push('\n');
        }
        return Ok(out);
    }
    let counts = classify_corpus(&refs, &hyps)?;
    let rates = error_rates(&counts)?;
    let label = a.label.clone().unwrap_or_else(|| file_label(&a.hyp));
    Ok(render_comparison(&[ReportRow::new(label).with_error_rates(&rates)])?)
}

fn file_label(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn read_tagged(path: Option<&Path>) -> Res<Vec<TaggedSentence>> {
    read_text(path)?
        .lines()
        .enumerate()
        .map(|(i, l)| parse_tagged_line(l).map_err(|e| at_line(path, i + 1, e)))
        .collect()
}

fn variety(a: &VarietyArgs, input: Option<&Path>) -> Res<String> {
    let tagged = if a.tagged {
        read_tagged(input)?
    } else {
        read_sentences(input)?.into_par_iter().map(TaggedSentence::tag).collect()
    };
    let words: Vec<Vec<&str>> = tagged.iter().map(|s| s.tokens().iter().map(String::as_str).collect()).collect();
    let counts = param(pos_ngram_variety(&tagged, a.n_max))?;
    let mut out = format!("measure\tvalue\nvocab\t{}\n", vocab_size(&words));
    for (n, c) in counts.per_n.iter().enumerate() {
        let _ = writeln!(out, "pos{}\t{c}", n + 1);
    }
    let _ = writeln!(out, "pos_total\t{}", counts.total);
    Ok(out)
}

fn pr4(a: &Pr4Args) -> Res<String> {
    let mode = match a.mode {
        ModeArg::Multiset => CountMode::Multiset,
        ModeArg::Distinct => CountMode::Distinct,
    };
    let load = |p: &Path| -> Res<Vec<TaggedSentence>> {
        if a.tagged {
            read_tagged(Some(p))
        } else {
            Ok(read_sentences(Some(p))?.into_iter().map(TaggedSentence::tag).collect())
        }
    };
    let (h, r) = (load(&a.hyp)?, load(&a.reference)?);
    let pr = match a.unit {
        Unit::Word => {
            let words = |c: &[TaggedSentence]| c.iter().map(|s| s.tokens().to_vec()).collect::<Vec<Sentence>>();
            param(ngram_precision_recall(&words(&h), &words(&r), a.n, mode))?
        }
        Unit::Pos => {
            let tags = |c: &[TaggedSentence]| c.iter().map(|s| s.tags().to_vec()).collect::<Vec<Vec<PosTag>>>();
            param(ngram_precision_recall(&tags(&h), &tags(&r), a.n, mode))?
        }
    };
    let unit = match a.unit {
        Unit::Word => "word",
        Unit::Pos => "pos",
    };
    let mode = match a.mode {
        ModeArg::Multiset => "multiset",
        ModeArg::Distinct => "distinct",
    };
    Ok(format!(
        "unit\tmode\tn\tprecision\trecall\tmatches\thyp_total\tref_total\n{unit}\t{mode}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        a.n,
        format_fixed(pr.precision, 4),
        format_fixed(pr.recall, 4),
        pr.matches,
        pr.hyp_total,
        pr.ref_total
    ))
}

fn signif(a: &SignifArgs, seed: u64) -> Res<String> {
    let hyp_a = read_sentences(Some(&a.hyp_a))?;
    let (hyp_b, refs) = read_pair(&a.hyp_b, &a.reference)?;
    let metric = match a.metric {
        SignifMetric::Bleu => MetricName::Bleu,
        SignifMetric::Ter => MetricName::Ter,
        SignifMetric::Chrf => MetricName::Chrf,
        SignifMetric::Meteor => MetricName::MeteorLite,
    };
    let cfg = BootstrapConfig {
        resamples: a.resamples,
        seed,
        metric,
    };
    let r = param(paired_bootstrap(&hyp_a, &hyp_b, &refs, &cfg))?;
    Ok(format!(
        "delta\tp_value\tflag\n{}\t{}\t{}\n",
        format_fixed(r.delta, 4),
        format_fixed(r.p_value, 4),
        if r.no_difference { "no_difference" } else { "-" }
    ))
}

fn lrsched(a: &LrschedArgs) -> Res<String> {
    let spec = param(ScheduleSpec::new(a.base_epochs, a.base_start, a.base_factor, a.k))?;
    let s = lr_schedule(&spec);
    let mut out = format!(
        "decay_start_epoch\t{}\ndecay_factor\t{}\nepochs\t{}\nepoch\tmultiplier\n",
        s.decay_start_epoch,
        s.decay_factor,
        s.epochs()
    );
    for (e, m) in s.multipliers.iter().enumerate() {
        let _ = writeln!(out, "{}\t{m}", e + 1);
    }
    Ok(out)
}

fn report(a: &ReportArgs) -> Res<String> {
    let refs = read_sentences(Some(&a.reference))?;
    let mut rows = Vec::new();
    for spec in &a.systems {
        let (label, path) = parse_system(spec)?;
        let hyps = read_sentences(Some(&path))?;
        let mut row = ReportRow::new(label);
        for m in MetricName::ALL {
            row = row.with_score(&evaluate_named(m, &hyps, &refs, MetricOptions::default())?);
        }
        if a.errors {
            row = row.with_error_rates(&error_rates(&classify_corpus(&refs, &hyps)?)?);
        }
        rows.push(row);
    }
    Ok(render_comparison(&rows)?)
}
