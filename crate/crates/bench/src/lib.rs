//! Criterion benchmarks for `qlk-core`; run with `cargo bench -p qlk-bench`.
