//! Criterion benchmarks for the search routines; see `benches/`.
