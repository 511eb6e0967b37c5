//! Benchmarks only; see `benches/designs.rs`.
