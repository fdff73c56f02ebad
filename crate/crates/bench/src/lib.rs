//! Criterion benchmarks for charvar-core; see `benches/pipeline.rs`.
