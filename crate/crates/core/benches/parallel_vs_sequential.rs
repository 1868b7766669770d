//! Compares the rayon-backed paths against the sequential fallback on the
//! three data-parallel workloads: invariance fuzzing walks, constraint-row
//! sampling, and batch corpus evaluation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gausslink::families::corpus_seeds;
use gausslink::formula::builtin;
use gausslink::lab::{build_constraints, enumerate_patterns, verify_invariance, SampleConfig, VerifyConfig};
use gausslink::par::map_items;
use gausslink::{evaluate_many, Formula};

fn bench_verify(c: &mut Criterion) {
    let seeds = corpus_seeds();
    let formulas = builtin::seven();
    let refs: Vec<&Formula> = formulas.iter().collect();
    let mut group = c.benchmark_group("verify_invariance");
    for (label, parallel) in [("parallel", true), ("sequential", false)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &parallel| {
            let cfg = VerifyConfig { walks: 2, steps: 8, seed: 42, ceiling: 18, parallel };
            b.iter(|| verify_invariance(&refs, &seeds, &cfg));
        });
    }
    group.finish();
}

fn bench_constraints(c: &mut Criterion) {
    let seeds = corpus_seeds();
    let basis = enumerate_patterns(2).unwrap();
    let mut group = c.benchmark_group("build_constraints");
    group.sample_size(10);
    for (label, parallel) in [("parallel", true), ("sequential", false)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &parallel| {
            let cfg = SampleConfig { samples: 40, seed: 7, max_arrows: 18, parallel };
            b.iter(|| build_constraints(&basis, &seeds, &cfg));
        });
    }
    group.finish();
}

fn bench_corpus_eval(c: &mut Criterion) {
    let seeds = corpus_seeds();
    let diagrams: Vec<_> = seeds.into_iter().map(|(_, d)| d).collect();
    let formulas = builtin::seven();
    let refs: Vec<&Formula> = formulas.iter().collect();
    let mut group = c.benchmark_group("corpus_eval");
    for (label, parallel) in [("parallel", true), ("sequential", false)] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &parallel| {
            b.iter(|| map_items(parallel, &diagrams, |d| evaluate_many(&refs, d)));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_verify, bench_constraints, bench_corpus_eval);
criterion_main!(benches);
