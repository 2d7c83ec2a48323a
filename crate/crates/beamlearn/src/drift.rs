//! Sliding-window ("drifting") variant for time-varying beam directions.
//!
//! Plain BLB averages over a round's whole history, so once the transmitter
//! moves its beam the stale statistics keep pointing at the old direction.
//! The drifting variant splits every round into frames of `W` steps that
//! overlap by half:
//!
//! ```text
//! frame 1   [0 ──────────── W)            acts on [0, W)
//! frame 2        [W/2 ──────────── 3W/2)  warms on [W/2, W),  acts on [W, 3W/2)
//! frame 3               [W ──────────── 2W)   warms on [W, 3W/2), acts on [3W/2, 2W)
//! ```
//!
//! A frame's statistics are reset to zero when it is born. During its first
//! half (the passive slot) the previous frame is still acting, but the new
//! frame's statistics absorb every observed reward; when it takes over it
//! already has `W/2` fresh observations and can exploit immediately. Each
//! acting frame keeps updating through its own active slot, so any one step
//! feeds exactly two frames: the acting one and the warming one.
//!
//! Rounds shorter than `W` run as a single all-active frame, and a frame
//! whose active slot is cut off by the round boundary simply never acts.

use crate::bandit::ArmSet;
use crate::blb::{build_grid, discretization_m, round_schedule, HolderParams, RoundRecord, RunTrace, StepRecord};
use crate::channel::{synthesize_channel, PathComponent};
use crate::environment::{EnvTimeline, Environment};
use crate::error::{Error, Result};
use crate::rng::RewardRng;

/// Window configuration for the drifting learner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftConfig {
    window: u64,
    holder: HolderParams,
}

impl DriftConfig {
    pub fn new(window: u64, holder: HolderParams) -> Result<Self> {
        if window < 2 || window % 2 != 0 {
            return Err(Error::invalid(format!("window must be even and ≥ 2, got {window}")));
        }
        Ok(Self { window, holder })
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn holder(&self) -> &HolderParams {
        &self.holder
    }
}

impl Default for DriftConfig {
    fn default() -> Self {
        Self { window: 250, holder: HolderParams::default() }
    }
}

/// A list of (step, replacement path set) pairs describing when the
/// transmitter's geometry changes. The reward at step `t` uses the paths
/// after every entry with step ≤ t.
#[derive(Debug, Clone, Default)]
pub struct ChangeSchedule {
    entries: Vec<(u64, Vec<PathComponent>)>,
}

impl ChangeSchedule {
    pub fn new(entries: Vec<(u64, Vec<PathComponent>)>) -> Result<Self> {
        let mut last = 0;
        for (step, paths) in &entries {
            if *step <= last.max(1) {
                return Err(Error::invalid(format!(
                    "change steps must be strictly increasing and > 1, got {step}"
                )));
            }
            if paths.is_empty() {
                return Err(Error::invalid("a change entry must fully specify the new paths"));
            }
            last = *step;
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(u64, Vec<PathComponent>)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expand into an environment timeline: each entry re-synthesizes the
    /// channel while keeping the base precoder, powers, and reward cap.
    pub fn apply(&self, base: &Environment) -> Result<EnvTimeline> {
        let mut changes = Vec::with_capacity(self.entries.len());
        for (step, paths) in &self.entries {
            let channel = synthesize_channel(base.channel().bs_config(), base.channel().ue_config(), paths)?;
            let env = Environment::new(
                channel,
                base.precoder().clone(),
                base.tx_power(),
                base.noise_power(),
                base.samples_per_dwell(),
                base.reward_cap(),
            )?;
            changes.push((*step, env));
        }
        EnvTimeline::with_changes(base.clone(), changes)
    }
}

/// Acting frame id at round-relative step `tau` for window `w`
/// (frames are 1-based).
fn acting_frame(tau: u64, w: u64) -> u32 {
    if tau < w {
        1
    } else {
        (2 * tau / w) as u32
    }
}

/// Run the drifting learner: BLB's outer doubling schedule with framed
/// statistics inside every round.
pub fn run_drifting_blb(timeline: &EnvTimeline, n: u64, cfg: &DriftConfig, rng: &mut RewardRng) -> Result<RunTrace> {
    if n == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let w = cfg.window();
    let half = w / 2;
    let mut steps = Vec::with_capacity(n as usize);
    let mut rounds = Vec::new();

    for (round_index, t_start, t_end) in round_schedule(n) {
        let round_len = t_end - t_start + 1;
        let m = discretization_m(t_start, cfg.holder());
        let grid = build_grid(m)?;
        let framed = round_len >= w;

        let mut acting = ArmSet::new(grid.strategies().to_vec())?;
        let mut acting_id = 1u32;
        let mut warming: Option<ArmSet> = None;

        let mut env = timeline.env_at(t_start);
        let mut gains: Vec<_> = grid.strategies().iter().map(|s| env.beam_gain(s)).collect();

        for tau in 0..round_len {
            if framed && tau >= half && tau % half == 0 {
                if tau == half {
                    warming = Some(ArmSet::new(grid.strategies().to_vec())?);
                } else {
                    acting = warming.take().expect("a warming frame precedes every takeover");
                    acting_id = acting_frame(tau, w);
                    warming = Some(ArmSet::new(grid.strategies().to_vec())?);
                }
            }

            let t = t_start + tau;
            let current = timeline.env_at(t);
            if !std::ptr::eq(current, env) {
                env = current;
                for (g, s) in gains.iter_mut().zip(grid.strategies()) {
                    *g = env.beam_gain(s);
                }
            }

            let idx = acting.ucb1_select();
            let snr = env.estimate_snr_from_gain(gains[idx], rng);
            acting.ucb1_update(idx, snr)?;
            if let Some(frame) = warming.as_mut() {
                frame.ucb1_update(idx, snr)?;
            }
            steps.push(StepRecord {
                step: t,
                round: round_index,
                m,
                strategy: *acting.strategy(idx),
                reward: env.normalize_snr(snr),
                frame: acting_id,
            });
        }

        rounds.push(RoundRecord {
            round_index,
            t_start,
            t_end,
            m,
            covering_radius: grid.covering_radius(),
            final_stats: acting.arms().map(|(_, st)| *st).collect(),
        });
    }

    Ok(RunTrace { steps, rounds })
}

/// Elevation of the played strategy at each step, for tracking plots.
pub fn selected_elevation_series(trace: &RunTrace) -> Vec<(u64, f64)> {
    trace.steps.iter().map(|rec| (rec.step, rec.strategy.elevation())).collect()
}
