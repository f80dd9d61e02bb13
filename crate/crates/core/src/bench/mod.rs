//! Reference oracle, synthetic data, benchmark generation and timing.

pub mod generators;
pub mod naive;
pub mod runner;
pub mod synth;

pub use generators::{
    gen_decider_benchmark, gen_query_benchmark, BenchError, DeciderBenchmarkCase, QueryBenchmarkCase, Side,
};
pub use naive::naive_dp_decide;
pub use runner::{run_benchmark, RunRecord};
pub use synth::{synth_dataset, SynthParams};
