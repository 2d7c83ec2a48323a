//! End-to-end experiment execution: algorithm dispatch, trace enrichment,
//! CSV/summary emission, and multi-seed sweeps.

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::bandit::ArmSet;
use crate::blb::{build_grid, run_blb, RunTrace, StepRecord};
use crate::drift::{run_drifting_blb, DriftConfig};
use crate::environment::EnvTimeline;
use crate::error::{Error, Result};
use crate::rng::{RngStreams, RewardRng};

use super::oracle::DEFAULT_ORACLE_RESOLUTION;
use super::regret::{enrich_trace, RegretTrace};
use super::scenario::{Algorithm, ScenarioConfig};
use rand_chacha::ChaCha8Rng;

/// Result of one scenario run.
#[derive(Debug)]
pub struct ExperimentResult {
    pub config: ScenarioConfig,
    pub trace: RegretTrace,
    pub csv_path: Option<PathBuf>,
    pub summary_path: Option<PathBuf>,
}

/// UCB1 on a fixed `resolution × resolution` grid: no rounds, one instance
/// over the whole horizon (global time).
pub fn run_fixed_grid_ucb1(
    timeline: &EnvTimeline,
    n: u64,
    resolution: u32,
    rng: &mut RewardRng,
) -> Result<RunTrace> {
    run_fixed_grid(timeline, n, resolution, rng, |set, _t| set.ucb1_select())
}

/// Decaying-ε greedy on a fixed grid, exploring with probability ε₀^(t/10)
/// on the global step counter.
pub fn run_fixed_grid_eps_greedy(
    timeline: &EnvTimeline,
    n: u64,
    resolution: u32,
    epsilon0: f64,
    rng: &mut RewardRng,
    exploration: &mut ChaCha8Rng,
) -> Result<RunTrace> {
    run_fixed_grid(timeline, n, resolution, rng, move |set, t| {
        set.epsilon_greedy_select(t, epsilon0, exploration)
    })
}

fn run_fixed_grid(
    timeline: &EnvTimeline,
    n: u64,
    resolution: u32,
    rng: &mut RewardRng,
    mut select: impl FnMut(&ArmSet, u64) -> usize,
) -> Result<RunTrace> {
    if n == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let grid = build_grid(resolution)?;
    let mut set = ArmSet::new(grid.strategies().to_vec())?;
    let mut env = timeline.env_at(1);
    let mut gains: Vec<_> = grid.strategies().iter().map(|s| env.beam_gain(s)).collect();
    let mut steps = Vec::with_capacity(n as usize);
    for t in 1..=n {
        let current = timeline.env_at(t);
        if !std::ptr::eq(current, env) {
            env = current;
            for (g, s) in gains.iter_mut().zip(grid.strategies()) {
                *g = env.beam_gain(s);
            }
        }
        let idx = select(&set, t);
        let snr = env.estimate_snr_from_gain(gains[idx], rng);
        set.ucb1_update(idx, snr)?;
        steps.push(StepRecord {
            step: t,
            round: 0,
            m: resolution,
            strategy: *set.strategy(idx),
            reward: env.normalize_snr(snr),
            frame: 1,
        });
    }
    Ok(RunTrace { steps, rounds: Vec::new() })
}

/// Run one configured scenario end to end. When `out_dir` is given, the
/// per-step trace CSV and a summary record are written into it.
pub fn run_experiment(cfg: &ScenarioConfig, out_dir: Option<&Path>) -> Result<ExperimentResult> {
    cfg.validate()?;
    let timeline = cfg.build_timeline()?;
    let streams = RngStreams::new(cfg.seed);
    let mut reward_rng = streams.reward();

    let run = match cfg.algorithm {
        Algorithm::Blb => run_blb(&timeline, cfg.horizon, &cfg.holder, &mut reward_rng)?,
        Algorithm::DriftingBlb => {
            let drift = DriftConfig::new(cfg.window, cfg.holder).map_err(|e| Error::config(e.to_string()))?;
            run_drifting_blb(&timeline, cfg.horizon, &drift, &mut reward_rng)?
        }
        Algorithm::Ucb1Grid => run_fixed_grid_ucb1(&timeline, cfg.horizon, cfg.grid_resolution, &mut reward_rng)?,
        Algorithm::EpsGreedyGrid => {
            let mut exploration = streams.exploration();
            run_fixed_grid_eps_greedy(
                &timeline,
                cfg.horizon,
                cfg.grid_resolution,
                cfg.epsilon0,
                &mut reward_rng,
                &mut exploration,
            )?
        }
    };

    let trace = enrich_trace(&run, &timeline, DEFAULT_ORACLE_RESOLUTION)?;

    let (csv_path, summary_path) = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let stem = format!("{}_seed{}", cfg.algorithm.tag(), cfg.seed);
            let csv = dir.join(format!("{stem}.csv"));
            write_trace_csv(&trace, &csv)?;
            let summary = dir.join(format!("{stem}_summary.txt"));
            write_summary(cfg, &trace, &summary)?;
            (Some(csv), Some(summary))
        }
        None => (None, None),
    };

    Ok(ExperimentResult { config: cfg.clone(), trace, csv_path, summary_path })
}

/// Fixed trace CSV schema; floats carry 12 significant digits.
pub const CSV_HEADER: &str = "step,round,m,azimuth_rad,elevation_rad,reward,expected_cost,cum_regret,snr";

fn fmt_f(x: f64) -> String {
    format!("{x:.11e}")
}

/// Write the enriched per-step trace. Byte-identical output for identical
/// (config, seed) pairs.
pub fn write_trace_csv(trace: &RegretTrace, path: &Path) -> Result<()> {
    let mut out = String::with_capacity(trace.steps.len() * 96 + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    let cap = trace.summary.reward_cap;
    for s in &trace.steps {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            s.step,
            s.round,
            s.m,
            fmt_f(s.strategy.azimuth()),
            fmt_f(s.strategy.elevation()),
            fmt_f(s.reward),
            fmt_f(s.expected_cost),
            fmt_f(s.cum_regret),
            fmt_f(s.reward * cap),
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

fn write_summary(cfg: &ScenarioConfig, trace: &RegretTrace, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    let s = &trace.summary;
    write!(f, "{}", cfg.to_config_string())?;
    writeln!(f, "oracle_value = {}", fmt_f(s.oracle_value))?;
    writeln!(f, "oracle_snr = {}", fmt_f(s.oracle_value * s.reward_cap))?;
    for seg in &s.segment_oracles {
        writeln!(
            f,
            "segment_oracle = {}:{}:{}:{}",
            seg.start,
            fmt_f(seg.strategy.azimuth()),
            fmt_f(seg.strategy.elevation()),
            fmt_f(seg.value)
        )?;
    }
    writeln!(f, "final_avg_reward = {}", fmt_f(s.final_avg_reward))?;
    writeln!(f, "final_avg_snr = {}", fmt_f(s.final_avg_reward * s.reward_cap))?;
    writeln!(f, "final_cum_regret = {}", fmt_f(s.final_cum_regret))?;
    writeln!(f, "reward_cap = {}", fmt_f(s.reward_cap))?;
    Ok(())
}

/// Final numbers of one sweep member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedSummary {
    pub seed: u64,
    pub final_avg_reward: f64,
    pub final_cum_regret: f64,
    pub oracle_value: f64,
}

/// Aggregate statistics over a seed list.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub per_seed: Vec<SeedSummary>,
    pub mean_final_avg_reward: f64,
    pub std_final_avg_reward: f64,
    pub mean_final_cum_regret: f64,
    pub std_final_cum_regret: f64,
    pub mean_oracle_value: f64,
    /// Per-step mean and standard deviation of the running-average reward
    /// and of cumulative regret, aggregated across seeds.
    pub avg_reward_curve: Vec<(f64, f64)>,
    pub regret_curve: Vec<(f64, f64)>,
    pub aggregate_csv: Option<PathBuf>,
}

/// Run the scenario once per seed (in parallel) and aggregate. Aggregation
/// touches only completed traces in seed-list order, so the report is
/// independent of scheduling.
pub fn sweep(cfg: &ScenarioConfig, seeds: &[u64], out_dir: Option<&Path>) -> Result<SweepReport> {
    if seeds.is_empty() {
        return Err(Error::invalid("sweep needs at least one seed"));
    }
    let results: Vec<Result<ExperimentResult>> = seeds
        .par_iter()
        .map(|seed| {
            let mut child = cfg.clone();
            child.seed = *seed;
            run_experiment(&child, out_dir).map_err(|e| {
                Error::contract(format!("seed {seed} failed: {e}"))
            })
        })
        .collect();
    let mut traces = Vec::with_capacity(seeds.len());
    for r in results {
        traces.push(r?);
    }

    let per_seed: Vec<SeedSummary> = traces
        .iter()
        .map(|r| SeedSummary {
            seed: r.config.seed,
            final_avg_reward: r.trace.summary.final_avg_reward,
            final_cum_regret: r.trace.summary.final_cum_regret,
            oracle_value: r.trace.summary.oracle_value,
        })
        .collect();

    let mean_std = |values: Vec<f64>| -> (f64, f64) {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        (mean, var.sqrt())
    };

    let (mean_r, std_r) = mean_std(per_seed.iter().map(|s| s.final_avg_reward).collect());
    let (mean_g, std_g) = mean_std(per_seed.iter().map(|s| s.final_cum_regret).collect());
    let (mean_o, _) = mean_std(per_seed.iter().map(|s| s.oracle_value).collect());

    let horizon = traces[0].trace.steps.len();
    let avg_curves: Vec<Vec<f64>> = traces.iter().map(|r| r.trace.running_average_reward()).collect();
    let regret_curves: Vec<Vec<f64>> = traces.iter().map(|r| r.trace.regret_series()).collect();
    let pointwise = |curves: &[Vec<f64>]| -> Vec<(f64, f64)> {
        (0..horizon)
            .map(|i| {
                let column: Vec<f64> = curves.iter().map(|c| c[i]).collect();
                let n = column.len() as f64;
                let mean = column.iter().sum::<f64>() / n;
                let var = if column.len() > 1 {
                    column.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
                } else {
                    0.0
                };
                (mean, var.sqrt())
            })
            .collect()
    };
    let avg_reward_curve = pointwise(&avg_curves);
    let regret_curve = pointwise(&regret_curves);

    let aggregate_csv = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("sweep_{}.csv", cfg.algorithm.tag()));
            let mut out = String::with_capacity(horizon * 64 + 64);
            out.push_str("step,avg_reward_mean,avg_reward_std,regret_mean,regret_std\n");
            for i in 0..horizon {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    i + 1,
                    fmt_f(avg_reward_curve[i].0),
                    fmt_f(avg_reward_curve[i].1),
                    fmt_f(regret_curve[i].0),
                    fmt_f(regret_curve[i].1),
                ));
            }
            std::fs::write(&path, out)?;
            Some(path)
        }
        None => None,
    };

    Ok(SweepReport {
        per_seed,
        mean_final_avg_reward: mean_r,
        std_final_avg_reward: std_r,
        mean_final_cum_regret: mean_g,
        std_final_cum_regret: std_g,
        mean_oracle_value: mean_o,
        avg_reward_curve,
        regret_curve,
        aggregate_csv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::scenario::ChangeSpec;

    fn small_cfg(algorithm: Algorithm) -> ScenarioConfig {
        let mut cfg = ScenarioConfig::default();
        cfg.bs_config = crate::array::PlanarArrayConfig::critically_spaced(4, 4).unwrap();
        cfg.ue_config = crate::array::PlanarArrayConfig::critically_spaced(2, 2).unwrap();
        cfg.horizon = 400;
        cfg.grid_resolution = 4;
        cfg.algorithm = algorithm;
        cfg.seed = 3;
        cfg
    }

    #[test]
    fn fixed_grid_arms_match_build_grid() {
        let cfg = small_cfg(Algorithm::Ucb1Grid);
        let tl = cfg.build_timeline().unwrap();
        let mut rng = RngStreams::new(cfg.seed).reward();
        let trace = run_fixed_grid_ucb1(&tl, 40, cfg.grid_resolution, &mut rng).unwrap();
        let grid = build_grid(cfg.grid_resolution).unwrap();
        assert_eq!(grid.len(), 16);
        // the first |arms| selections initialize arms in grid order
        for (i, rec) in trace.steps.iter().take(16).enumerate() {
            assert_eq!(rec.strategy, grid.strategies()[i]);
        }
        assert!(trace.steps.iter().all(|r| r.m == cfg.grid_resolution && r.round == 0));
    }

    #[test]
    fn every_algorithm_runs_and_enriches() {
        for alg in [Algorithm::Blb, Algorithm::DriftingBlb, Algorithm::Ucb1Grid, Algorithm::EpsGreedyGrid] {
            let mut cfg = small_cfg(alg);
            cfg.window = 100;
            let result = run_experiment(&cfg, None).unwrap();
            assert_eq!(result.trace.steps.len() as u64, cfg.horizon);
            let s = &result.trace.summary;
            assert!(s.oracle_value > 0.0);
            assert!(s.final_avg_reward >= 0.0 && s.final_avg_reward <= 1.0);
        }
    }

    #[test]
    fn oracle_dominates_every_step() {
        let cfg = small_cfg(Algorithm::Blb);
        let result = run_experiment(&cfg, None).unwrap();
        let oracle = result.trace.summary.oracle_value;
        for step in &result.trace.steps {
            assert!(
                step.expected_cost <= oracle + 1e-6,
                "step {} cost {} exceeds oracle {}",
                step.step,
                step.expected_cost,
                oracle
            );
        }
    }

    #[test]
    fn stationary_regret_is_nondecreasing() {
        let cfg = small_cfg(Algorithm::EpsGreedyGrid);
        let result = run_experiment(&cfg, None).unwrap();
        let regret = result.trace.regret_series();
        for w in regret.windows(2) {
            assert!(w[1] >= w[0] - 1e-9);
        }
    }

    #[test]
    fn csv_is_deterministic_and_parseable() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = small_cfg(Algorithm::Blb);
        let a = run_experiment(&cfg, Some(&dir.path().join("a"))).unwrap();
        let b = run_experiment(&cfg, Some(&dir.path().join("b"))).unwrap();
        let bytes_a = std::fs::read(a.csv_path.unwrap()).unwrap();
        let bytes_b = std::fs::read(b.csv_path.unwrap()).unwrap();
        assert_eq!(bytes_a, bytes_b);
        let text = String::from_utf8(bytes_a).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(lines.count() as u64, cfg.horizon);
    }

    #[test]
    fn changing_environment_recomputes_oracle() {
        let mut cfg = small_cfg(Algorithm::DriftingBlb);
        cfg.window = 100;
        cfg.horizon = 600;
        cfg.change_schedule = Some(ChangeSpec::At(vec![(300, -0.9)]));
        let result = run_experiment(&cfg, None).unwrap();
        assert_eq!(result.trace.summary.segment_oracles.len(), 2);
    }

    #[test]
    fn sweep_aggregates_are_order_independent_facts() {
        let cfg = small_cfg(Algorithm::Ucb1Grid);
        let single = sweep(&cfg, &[5], None).unwrap();
        let direct = {
            let mut c = cfg.clone();
            c.seed = 5;
            run_experiment(&c, None).unwrap()
        };
        assert_eq!(single.per_seed.len(), 1);
        assert_eq!(single.mean_final_avg_reward, direct.trace.summary.final_avg_reward);
        assert_eq!(single.std_final_avg_reward, 0.0);

        let dup = sweep(&cfg, &[7, 7], None).unwrap();
        assert_eq!(dup.per_seed[0].final_avg_reward, dup.per_seed[1].final_avg_reward);
        assert!(dup.std_final_avg_reward.abs() < 1e-15);
        assert!(dup.std_final_cum_regret.abs() < 1e-12);
    }

    #[test]
    fn empty_seed_list_rejected() {
        let cfg = small_cfg(Algorithm::Blb);
        assert!(sweep(&cfg, &[], None).is_err());
    }
}
