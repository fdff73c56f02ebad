use std::hint::black_box;

use charvar_core::cohomology::h_dims;
use charvar_core::modules::decompose_sl;
use charvar_core::pipeline::{analyze, AnalysisRequest, CheckSet};
use charvar_core::reps::hyperbolic::{polygon_group, triangle_group, DEFAULT_SEED};
use charvar_core::reps::Embedding;
use charvar_core::RankPolicy;
use criterion::{criterion_group, criterion_main, Criterion};

fn builders(c: &mut Criterion) {
    c.bench_function("triangle_group(3,3,4)", |b| b.iter(|| triangle_group(black_box(3), 3, 4).unwrap()));
    c.bench_function("polygon_group(3,3,3,3)", |b| {
        b.iter(|| polygon_group(black_box(&[3, 3, 3, 3]), DEFAULT_SEED).unwrap())
    });
}

fn cohomology(c: &mut Criterion) {
    let rho = polygon_group(&[3, 3, 3, 3], DEFAULT_SEED).unwrap().rep;
    let dec = decompose_sl(&rho, Embedding::Standard).unwrap();
    let policy = RankPolicy::default();
    c.bench_function("h_dims g0 S2(3,3,3,3)", |b| b.iter(|| h_dims(black_box(&dec.g0), &policy).unwrap()));
    c.bench_function("decompose_sl S2(3,3,3,3)", |b| {
        b.iter(|| decompose_sl(black_box(&rho), Embedding::Standard).unwrap())
    });
}

fn end_to_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    group.sample_size(20);
    for sig in ["S2(3,3,4)", "S2(3,3,3,3)", "O(g=2;b=0;cone=[3])"] {
        let mut req = AnalysisRequest::signature(sig);
        req.checks = CheckSet::analyze();
        group.bench_function(sig, |b| b.iter(|| analyze(black_box(&req)).unwrap()));
    }
    let full = {
        let mut r = AnalysisRequest::signature("S2(3,3,3,3)");
        r.checks = CheckSet::full();
        r
    };
    group.bench_function("S2(3,3,3,3) full checks", |b| b.iter(|| analyze(black_box(&full)).unwrap()));
    group.finish();
}

criterion_group!(benches, builders, cohomology, end_to_end);
criterion_main!(benches);
