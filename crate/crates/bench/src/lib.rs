//! Criterion benchmarks for the counting engines. See `benches/engines.rs`.
