//! Command-line front end: configuration, output writers and the flux
//! micro-benchmark.

pub mod bench;
pub mod config;
pub mod output;

pub use bench::{bench_fluxes, BenchRow};
pub use config::RunConfig;
