use std::hint::black_box;

use btforge_bench::{corpus, raw_lines};
use btforge_core::textprep::{apply_bpe, learn_bpe, tokenize};
use criterion::{criterion_group, criterion_main, Criterion};

fn textprep(c: &mut Criterion) {
    let raw = raw_lines(2000, 11);
    let text = corpus(2000, 12);
    let model = learn_bpe(&text, &text, 200);
    let mut g = c.benchmark_group("textprep_2k_lines");
    g.sample_size(10);
    g.bench_function("tokenize", |b| {
        b.iter(|| raw.iter().map(|l| tokenize(black_box(l)).len()).sum::<usize>())
    });
    g.bench_function("learn_bpe_200", |b| b.iter(|| learn_bpe(black_box(&text), &[], 200)));
    g.bench_function("apply_bpe_200", |b| {
        b.iter(|| text.iter().map(|s| apply_bpe(&model, black_box(s)).len()).sum::<usize>())
    });
    g.finish();
}

criterion_group!(benches, textprep);
criterion_main!(benches);
