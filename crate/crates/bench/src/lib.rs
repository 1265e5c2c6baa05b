//! Benchmarks for `linkage-core`; see `benches/`.
