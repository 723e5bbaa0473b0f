//! Benchmarks for the stratification pipeline live in `benches/`.
