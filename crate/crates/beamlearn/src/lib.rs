//! Blind learning of mmWave beam directions with continuum-armed bandits.
//!
//! A receiver with a uniform planar array wants to find the (azimuth,
//! elevation) beam pair an incumbent transmitter is using, with no prior
//! channel knowledge and only noisy SNR estimates as feedback. The action
//! space is continuous, so the core learner — Beam Learning Bandits —
//! discretizes it adaptively: doubling rounds, a per-round grid whose
//! resolution follows the Hölder smoothness of the expected SNR, and a fresh
//! UCB1 instance per round. A sliding-window variant tracks transmitters
//! that move their beams over time.
//!
//! The crate is organized as a library plus one thin `beamlearn` CLI:
//!
//! - [`array`]: planar-array geometry and response vectors
//! - [`channel`]: ray-based channel synthesis
//! - [`environment`]: SNR costs and stochastic reward estimation
//! - [`bandit`]: finite-armed UCB1 and ε-greedy machinery
//! - [`blb`]: the adaptive-discretization learner
//! - [`drift`]: the sliding-window variant for time-varying beams
//! - [`harness`]: scenarios, oracle, regret analytics, probes, batch runs
//!
//! The `examples/` directory holds one runnable example per capability; see
//! the README for the map.

pub mod array;
pub mod bandit;
pub mod blb;
pub mod channel;
pub mod drift;
pub mod environment;
pub mod error;
pub mod harness;
pub mod rng;

#[doc(hidden)]
pub mod testutil;

pub use array::{array_response, steer, PlanarArrayConfig, Strategy};
pub use bandit::{epsilon_schedule, ArmSet, ArmStats};
pub use blb::{build_grid, discretization_m, run_blb, GridSpec, HolderParams, RoundRecord, RunTrace, StepRecord};
pub use channel::{synthesize_channel, ChannelRealization, PathComponent};
pub use drift::{run_drifting_blb, selected_elevation_series, ChangeSchedule, DriftConfig};
pub use environment::{aligned_reward_cap, EnvTimeline, Environment};
pub use error::{Error, Result};
pub use harness::{
    holder_probe, oracle_optimal, run_experiment, sweep, Algorithm, RegretTrace, ScenarioConfig,
};
pub use rng::{RewardRng, RngStreams, Stream};
