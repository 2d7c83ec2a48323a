//! Regret analytics: enriching raw traces with noiseless costs, cumulative
//! regret series, and power-law exponent fits.
//!
//! Regret is measured against the noiseless expected cost, not the noisy
//! rewards: R_t = Σ_{τ≤t} (oracle_τ − C̄(s_τ)). For time-varying scenarios
//! the oracle is recomputed after every change point.

use crate::array::Strategy;
use crate::blb::{RoundRecord, RunTrace};
use crate::environment::EnvTimeline;
use crate::error::{Error, Result};

use super::oracle::oracle_optimal;

/// One enriched trace step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegretStep {
    pub step: u64,
    pub round: u32,
    pub m: u32,
    pub strategy: Strategy,
    /// Normalized stochastic reward observed by the learner.
    pub reward: f64,
    /// Noiseless normalized expected cost of the played strategy.
    pub expected_cost: f64,
    /// Cumulative regret up to and including this step.
    pub cum_regret: f64,
}

/// Oracle for one stationary segment of the timeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentOracle {
    /// First step the segment governs.
    pub start: u64,
    pub strategy: Strategy,
    pub value: f64,
}

/// Run-level summary attached to an enriched trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretSummary {
    /// Time-weighted mean oracle value over the run (the plain oracle value
    /// for stationary scenarios).
    pub oracle_value: f64,
    pub segment_oracles: Vec<SegmentOracle>,
    pub final_avg_reward: f64,
    pub final_cum_regret: f64,
    pub reward_cap: f64,
    pub horizon: u64,
}

/// A raw run trace enriched with costs, regret, and oracle context.
#[derive(Debug, Clone)]
pub struct RegretTrace {
    pub steps: Vec<RegretStep>,
    pub rounds: Vec<RoundRecord>,
    pub summary: RegretSummary,
}

impl RegretTrace {
    /// Cumulative-average reward after each step.
    pub fn running_average_reward(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                acc += s.reward;
                acc / (i + 1) as f64
            })
            .collect()
    }

    pub fn regret_series(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.cum_regret).collect()
    }
}

/// Cumulative regret against a constant oracle value.
pub fn cumulative_regret(oracle_value: f64, per_step_expected_costs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    per_step_expected_costs
        .iter()
        .map(|c| {
            acc += oracle_value - c;
            acc
        })
        .collect()
}

/// Cumulative regret against a per-step oracle series (nonstationary runs).
pub fn cumulative_regret_series(oracle_values: &[f64], per_step_expected_costs: &[f64]) -> Result<Vec<f64>> {
    if oracle_values.len() != per_step_expected_costs.len() {
        return Err(Error::contract(format!(
            "oracle series length {} does not match cost series length {}",
            oracle_values.len(),
            per_step_expected_costs.len()
        )));
    }
    let mut acc = 0.0;
    Ok(oracle_values
        .iter()
        .zip(per_step_expected_costs)
        .map(|(o, c)| {
            acc += o - c;
            acc
        })
        .collect())
}

/// Least-squares slope of ln R_t against ln t over steps in
/// `[fit_range.0, fit_range.1]`. Steps with nonpositive regret are excluded;
/// failing to retain at least two points is an error.
pub fn regret_exponent_fit(regret: &[f64], fit_range: (u64, u64)) -> Result<f64> {
    let (lo, hi) = fit_range;
    if lo == 0 || lo > hi {
        return Err(Error::invalid(format!("bad fit range [{lo}, {hi}]")));
    }
    let points: Vec<(f64, f64)> = regret
        .iter()
        .enumerate()
        .map(|(i, r)| (i as u64 + 1, *r))
        .filter(|(t, r)| *t >= lo && *t <= hi && *r > 0.0)
        .map(|(t, r)| ((t as f64).ln(), r.ln()))
        .collect();
    if points.len() < 2 {
        return Err(Error::invalid("fewer than two positive regret points in fit range"));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (x, y) in &points {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x) * (x - mean_x);
    }
    if sxx == 0.0 {
        return Err(Error::invalid("degenerate fit range"));
    }
    Ok(sxy / sxx)
}

/// Enrich a raw run with noiseless costs, per-segment oracles, and the
/// cumulative regret series.
pub fn enrich_trace(run: &RunTrace, timeline: &EnvTimeline, oracle_resolution: u32) -> Result<RegretTrace> {
    if run.steps.is_empty() {
        return Err(Error::invalid("cannot enrich an empty trace"));
    }

    let mut segment_oracles = Vec::with_capacity(timeline.segments().len());
    for (start, env) in timeline.segments() {
        let (strategy, value) = oracle_optimal(env, oracle_resolution)?;
        segment_oracles.push(SegmentOracle { start: *start, strategy, value });
    }
    let oracle_at = |step: u64| -> f64 {
        let mut value = segment_oracles[0].value;
        for seg in &segment_oracles {
            if seg.start <= step {
                value = seg.value;
            } else {
                break;
            }
        }
        value
    };

    let costs: Vec<f64> = run
        .steps
        .iter()
        .map(|rec| timeline.env_at(rec.step).expected_cost(&rec.strategy))
        .collect();
    let oracle_series: Vec<f64> = run.steps.iter().map(|rec| oracle_at(rec.step)).collect();
    let regret = cumulative_regret_series(&oracle_series, &costs)?;

    let steps: Vec<RegretStep> = run
        .steps
        .iter()
        .zip(costs.iter().zip(regret.iter()))
        .map(|(rec, (cost, cum))| RegretStep {
            step: rec.step,
            round: rec.round,
            m: rec.m,
            strategy: rec.strategy,
            reward: rec.reward,
            expected_cost: *cost,
            cum_regret: *cum,
        })
        .collect();

    let n = steps.len() as f64;
    let final_avg_reward = steps.iter().map(|s| s.reward).sum::<f64>() / n;
    let oracle_value = oracle_series.iter().sum::<f64>() / n;
    let summary = RegretSummary {
        oracle_value,
        segment_oracles,
        final_avg_reward,
        final_cum_regret: *regret.last().unwrap(),
        reward_cap: timeline.env_at(1).reward_cap(),
        horizon: steps.len() as u64,
    };

    Ok(RegretTrace { steps, rounds: run.rounds.clone(), summary })
}
