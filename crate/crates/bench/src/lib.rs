//! Benchmark-only crate; the timed code lives in `benches/solvers.rs`.
