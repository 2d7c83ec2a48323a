//! Beam Learning Bandits: a continuum-armed bandit solved by adaptive
//! discretization.
//!
//! Time is split into doubling rounds T = 1, 2, 4, …. Each round builds a
//! fresh M×M grid over (azimuth, elevation) with
//!
//! ```text
//! M = ⌈( √(T/ln T) · L_H · 2^(α_H/2) )^(1/(1+α_H)) ⌉      (M = 1 when T = 1)
//! ```
//!
//! and runs a fresh UCB1 instance on it for the round's steps. The grid
//! resolution is tied to the Hölder smoothness of the expected SNR: smoother
//! cost surfaces tolerate coarser grids, so exploration is spent where the
//! discretization error actually shrinks the achievable reward.

use std::f64::consts::PI;

use crate::array::Strategy;
use crate::bandit::{ArmSet, ArmStats};
use crate::environment::EnvTimeline;
use crate::error::{Error, Result};
use crate::rng::RewardRng;

/// Hölder continuity parameters of the normalized expected cost:
/// `|C̄(s) − C̄(s′)| ≤ l_h·‖s − s′‖^alpha_h` for nearby strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderParams {
    l_h: f64,
    alpha_h: f64,
}

impl HolderParams {
    pub fn new(l_h: f64, alpha_h: f64) -> Result<Self> {
        if !l_h.is_finite() || l_h <= 0.0 {
            return Err(Error::invalid("Hölder constant must be positive"));
        }
        if !alpha_h.is_finite() || !(alpha_h > 0.0 && alpha_h <= 1.0) {
            return Err(Error::invalid("Hölder exponent must lie in (0, 1]"));
        }
        Ok(Self { l_h, alpha_h })
    }

    pub fn l_h(&self) -> f64 {
        self.l_h
    }

    pub fn alpha_h(&self) -> f64 {
        self.alpha_h
    }
}

impl Default for HolderParams {
    /// L_H = 4, α_H = 1 — loose upper bounds that work across the antenna
    /// configurations exercised here.
    fn default() -> Self {
        Self { l_h: 4.0, alpha_h: 1.0 }
    }
}

/// Per-round discretization parameter.
pub fn discretization_m(t_round: u64, h: &HolderParams) -> u32 {
    assert!(t_round >= 1, "round duration starts at 1");
    if t_round == 1 {
        return 1;
    }
    let t = t_round as f64;
    let inner = (t / t.ln()).sqrt() * h.l_h * 2.0_f64.powf(h.alpha_h / 2.0);
    inner.powf(1.0 / (1.0 + h.alpha_h)).ceil() as u32
}

/// The M² strategies of one round's grid, azimuth-major.
#[derive(Debug, Clone)]
pub struct GridSpec {
    m: u32,
    strategies: Vec<Strategy>,
}

impl GridSpec {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn strategies(&self) -> &[Strategy] {
        &self.strategies
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    /// Largest distance from any point of the domain to its nearest grid
    /// strategy (azimuth treated periodically).
    pub fn covering_radius(&self) -> f64 {
        let m = self.m as f64;
        ((PI / m).powi(2) + (PI / (2.0 * m)).powi(2)).sqrt()
    }
}

/// Cartesian grid 2π·{1/M, …, 1} × (−π/2 + π·{1/M, …, 1}).
pub fn build_grid(m: u32) -> Result<GridSpec> {
    if m == 0 {
        return Err(Error::invalid("grid resolution must be at least 1"));
    }
    let mf = m as f64;
    let mut strategies = Vec::with_capacity((m * m) as usize);
    for ka in 1..=m {
        let azimuth = 2.0 * PI * ka as f64 / mf;
        for ke in 1..=m {
            let elevation = -PI / 2.0 + PI * ke as f64 / mf;
            strategies.push(Strategy::new(azimuth, elevation)?);
        }
    }
    Ok(GridSpec { m, strategies })
}

/// One step of a learning run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    /// 1-based global step index.
    pub step: u64,
    /// 0-based doubling-round index.
    pub round: u32,
    /// Grid resolution in force at this step.
    pub m: u32,
    pub strategy: Strategy,
    /// Normalized reward observed at this step.
    pub reward: f64,
    /// Statistics frame that drove the selection (always 1 outside the
    /// drifting variant).
    pub frame: u32,
}

/// Bookkeeping for one doubling round.
#[derive(Debug, Clone)]
pub struct RoundRecord {
    pub round_index: u32,
    pub t_start: u64,
    pub t_end: u64,
    pub m: u32,
    /// Worst-case distance from the optimum to the nearest grid arm.
    pub covering_radius: f64,
    /// Per-arm statistics at round end (the last acting frame's, for the
    /// drifting variant).
    pub final_stats: Vec<ArmStats>,
}

/// A full run: the per-step trace plus round records.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub steps: Vec<StepRecord>,
    pub rounds: Vec<RoundRecord>,
}

impl RunTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Iterator over the doubling-round schedule for horizon `n`:
/// yields (round_index, t_start, t_end) with t_end inclusive.
pub(crate) fn round_schedule(n: u64) -> impl Iterator<Item = (u32, u64, u64)> {
    let mut t = 1u64;
    let mut index = 0u32;
    std::iter::from_fn(move || {
        if t > n {
            return None;
        }
        let start = t;
        let end = (2 * t - 1).min(n);
        let item = (index, start, end);
        t *= 2;
        index += 1;
        Some(item)
    })
}

/// Run BLB for `n` steps against the environment timeline.
///
/// Each round selects with UCB1 over that round's fresh grid. The feedback
/// driving the indices is the raw SNR estimate of the dwelled direction; the
/// trace records its cap-normalized clip for reporting. The timeline may
/// change mid-run; plain BLB keeps learning across changes (which is exactly
/// the failure mode the drifting variant repairs).
pub fn run_blb(timeline: &EnvTimeline, n: u64, h: &HolderParams, rng: &mut RewardRng) -> Result<RunTrace> {
    if n == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let mut steps = Vec::with_capacity(n as usize);
    let mut rounds = Vec::new();

    for (round_index, t_start, t_end) in round_schedule(n) {
        let m = discretization_m(t_start, h);
        let grid = build_grid(m)?;
        let mut set = ArmSet::new(grid.strategies().to_vec())?;

        let mut env = timeline.env_at(t_start);
        let mut gains: Vec<_> = grid.strategies().iter().map(|s| env.beam_gain(s)).collect();

        for t in t_start..=t_end {
            let current = timeline.env_at(t);
            if !std::ptr::eq(current, env) {
                env = current;
                for (g, s) in gains.iter_mut().zip(grid.strategies()) {
                    *g = env.beam_gain(s);
                }
            }
            let idx = set.ucb1_select();
            let snr = env.estimate_snr_from_gain(gains[idx], rng);
            set.ucb1_update(idx, snr)?;
            steps.push(StepRecord {
                step: t,
                round: round_index,
                m,
                strategy: *set.strategy(idx),
                reward: env.normalize_snr(snr),
                frame: 1,
            });
        }

        rounds.push(RoundRecord {
            round_index,
            t_start,
            t_end,
            m,
            covering_radius: grid.covering_radius(),
            final_stats: set.arms().map(|(_, st)| *st).collect(),
        });
    }

    Ok(RunTrace { steps, rounds })
}
