//! Experiment harness: scenario configuration, the brute-force oracle,
//! regret analytics, the smoothness probe, and batch execution.

pub mod experiment;
pub mod holder;
pub mod oracle;
pub mod regret;
pub mod report;
pub mod scenario;

pub use experiment::{
    run_experiment, run_fixed_grid_eps_greedy, run_fixed_grid_ucb1, sweep, ExperimentResult, SeedSummary,
    SweepReport, CSV_HEADER,
};
pub use holder::{holder_probe, HolderProbeReport};
pub use oracle::{oracle_optimal, DEFAULT_ORACLE_RESOLUTION};
pub use regret::{
    cumulative_regret, cumulative_regret_series, enrich_trace, regret_exponent_fit, RegretStep, RegretSummary,
    RegretTrace, SegmentOracle,
};
pub use report::{report, render_table, summarize_trace_file, Report, TraceFileSummary};
pub use scenario::{Algorithm, ChangeSpec, ScenarioConfig};
