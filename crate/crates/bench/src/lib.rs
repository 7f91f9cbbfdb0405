//! Benchmark workloads; see `benches/`.
