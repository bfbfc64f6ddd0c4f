//! Criterion benchmarks for the `nlcs-core` kernels; see `benches/kernels.rs`.
