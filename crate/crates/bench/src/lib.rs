//! Criterion benchmarks for the closure and commutator kernels; see `benches/`.
