//! Criterion benchmarks for `chromavar-core`; see `benches/`.
