//! Paired bootstrap resampling over test-set lines.
//!
//! Resample `b` draws `n` line indices with replacement from ChaCha8 seeded
//! by `seed_from_u64(seed)`, using `gen_range(0..n)`. Resamples are drawn in
//! order from one stream, so a larger `B` extends rather than changes the
//! earlier resamples. Per-line metric statistics are computed once; each
//! resample only re-sums them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::check_aligned;
use crate::metrics::{sum_stats, Bleu, Chrf, CorpusMetric, MeteorLite, MetricName, MetricOptions, Ter};
use crate::{Error, Result, Sentence};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub seed: u64,
    pub metric: MetricName,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            resamples: 1000,
            seed: 0,
            metric: MetricName::Bleu,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub metric: MetricName,
    /// metric(a) − metric(b) on the full test set.
    pub delta: f64,
    /// Share of resamples whose delta is zero or has the opposite sign.
    pub p_value: f64,
    /// Set when the observed delta is exactly zero.
    pub no_difference: bool,
    pub resamples: usize,
}

/// Endless stream of resamples of `0..n`.
pub fn resample_indices(n: usize, seed: u64) -> impl Iterator<Item = Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || (0..n).map(|_| rng.gen_range(0..n)).collect())
}

fn run<M: CorpusMetric>(
    metric: &M,
    hyp_a: &[Sentence],
    hyp_b: &[Sentence],
    refs: &[Sentence],
    cfg: &BootstrapConfig,
) -> Result<BootstrapResult> {
    let sa = metric.corpus_stats(hyp_a, refs)?;
    let sb = metric.corpus_stats(hyp_b, refs)?;
    let delta = metric.score(&sum_stats::<M>(sa.iter())).value - metric.score(&sum_stats::<M>(sb.iter())).value;
    if delta == 0.0 {
        return Ok(BootstrapResult {
            metric: cfg.metric,
            delta,
            p_value: 1.0,
            no_difference: true,
            resamples: cfg.resamples,
        });
    }

    let draws: Vec<Vec<usize>> = resample_indices(refs.len(), cfg.seed).take(cfg.resamples).collect();
    let against = draws
        .par_iter()
        .map(|idx| {
            let a = metric.score(&sum_stats::<M>(idx.iter().map(|&i| &sa[i]))).value;
            let b = metric.score(&sum_stats::<M>(idx.iter().map(|&i| &sb[i]))).value;
            let d = a - b;
            if delta > 0.0 {
                d <= 0.0
            } else {
                d >= 0.0
            }
        })
        .filter(|&flip| flip)
        .count();

    Ok(BootstrapResult {
        metric: cfg.metric,
        delta,
        p_value: against as f64 / cfg.resamples as f64,
        no_difference: false,
        resamples: cfg.resamples,
    })
}

/// One-sided paired bootstrap test of system A against system B.
pub fn paired_bootstrap(
    hyp_a: &[Sentence],
    hyp_b: &[Sentence],
    refs: &[Sentence],
    cfg: &BootstrapConfig,
) -> Result<BootstrapResult> {
    check_aligned("system A", hyp_a, "references", refs)?;
    check_aligned("system B", hyp_b, "references", refs)?;
    if refs.len() < 2 {
        return Err(Error::InvalidParameter("bootstrap needs at least 2 lines".into()));
    }
    if cfg.resamples == 0 {
        return Err(Error::InvalidParameter("resample count must be at least 1".into()));
    }
    match cfg.metric {
        MetricName::Bleu => run(&Bleu, hyp_a, hyp_b, refs, cfg),
        MetricName::Ter => run(&Ter, hyp_a, hyp_b, refs, cfg),
        MetricName::MeteorLite => run(&MeteorLite, hyp_a, hyp_b, refs, cfg),
        MetricName::Chrf => {
            let o = MetricOptions::default();
            run(&Chrf::new(o.chrf_beta, o.chrf_max_n)?, hyp_a, hyp_b, refs, cfg)
        }
    }
}
