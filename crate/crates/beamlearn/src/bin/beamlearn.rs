//! Thin command-line front end over the `beamlearn` library.
//!
//! Subcommands: `run`, `sweep`, `oracle`, `probe-holder`, `report`.
//! Exit codes: 0 success, 2 configuration error, 3 runtime contract
//! violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use beamlearn::harness::{
    holder_probe, oracle_optimal, render_table, report, run_experiment, sweep, ScenarioConfig,
    DEFAULT_ORACLE_RESOLUTION,
};
use beamlearn::{Error, RngStreams};

#[derive(Parser)]
#[command(name = "beamlearn", version, about = "Blind mmWave beam-direction learning experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Scenario options shared by every subcommand. CLI flags override values
/// from `--config`.
#[derive(Args, Debug, Clone)]
struct ScenarioArgs {
    /// Flat key = value scenario file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// blb | drifting-blb | ucb1-grid | eps-greedy-grid
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    horizon: Option<u64>,
    /// BS array as YxZ or YxZ@spacing, e.g. 8x8@0.5.
    #[arg(long)]
    bs_array: Option<String>,
    /// UE array as YxZ or YxZ@spacing.
    #[arg(long)]
    ue_array: Option<String>,
    #[arg(long)]
    num_paths: Option<usize>,
    #[arg(long)]
    mean_path_power: Option<f64>,
    #[arg(long)]
    snr_db: Option<f64>,
    /// First arrival as "azimuth, elevation" in radians.
    #[arg(long)]
    first_path_aoa: Option<String>,
    /// Hölder parameters as "L_H, alpha_H".
    #[arg(long)]
    holder: Option<String>,
    #[arg(long)]
    grid_resolution: Option<u32>,
    #[arg(long)]
    epsilon0: Option<f64>,
    #[arg(long)]
    window: Option<u64>,
    #[arg(long)]
    samples_per_dwell: Option<u32>,
    /// "every <period>" or "at step=elev; step=elev" or "none".
    #[arg(long)]
    change_schedule: Option<String>,
}

impl ScenarioArgs {
    fn resolve(&self) -> Result<ScenarioConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ScenarioConfig::from_file(path)?,
            None => ScenarioConfig::default(),
        };
        let mut set = |key: &str, value: Option<String>| -> Result<(), Error> {
            if let Some(v) = value {
                cfg.set_field(key, &v)?;
            }
            Ok(())
        };
        set("seed", self.seed.map(|v| v.to_string()))?;
        set("algorithm", self.algorithm.clone())?;
        set("horizon", self.horizon.map(|v| v.to_string()))?;
        set("bs_config", self.bs_array.clone())?;
        set("ue_config", self.ue_array.clone())?;
        set("num_paths", self.num_paths.map(|v| v.to_string()))?;
        set("mean_path_power", self.mean_path_power.map(|v| v.to_string()))?;
        set("snr_db", self.snr_db.map(|v| v.to_string()))?;
        set("first_path_aoa", self.first_path_aoa.clone())?;
        set("holder", self.holder.clone())?;
        set("grid_resolution", self.grid_resolution.map(|v| v.to_string()))?;
        set("epsilon0", self.epsilon0.map(|v| v.to_string()))?;
        set("window", self.window.map(|v| v.to_string()))?;
        set("samples_per_dwell", self.samples_per_dwell.map(|v| v.to_string()))?;
        set("change_schedule", self.change_schedule.clone())?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its trace CSV plus a summary record.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Output directory for the CSV and summary.
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Run one scenario across several seeds and aggregate.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Seeds as a comma list ("1,2,3") or inclusive range ("1..20").
        #[arg(long, default_value = "1..20")]
        seeds: String,
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
    /// Print the brute-force optimal direction and its value.
    Oracle {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_RESOLUTION)]
        resolution: u32,
    },
    /// Empirically probe the smoothness of the expected cost.
    ProbeHolder {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = 100_000)]
        pairs: usize,
    },
    /// Summarize previously written trace CSVs.
    Report {
        /// Trace CSV files.
        #[arg(required = true)]
        traces: Vec<PathBuf>,
    },
}

fn parse_seeds(spec: &str) -> Result<Vec<u64>, Error> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| Error::Config(format!("bad seed range '{spec}'")))?;
        let hi: u64 = hi.trim().parse().map_err(|_| Error::Config(format!("bad seed range '{spec}'")))?;
        if hi < lo {
            return Err(Error::Config(format!("empty seed range '{spec}'")));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::Config(format!("bad seed '{s}'"))))
        .collect()
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { scenario, out } => {
            let cfg = scenario.resolve()?;
            let result = run_experiment(&cfg, Some(&out))?;
            let s = &result.trace.summary;
            println!("algorithm        : {}", cfg.algorithm);
            println!("seed             : {}", cfg.seed);
            println!("horizon          : {}", s.horizon);
            println!("oracle value     : {:.6} (snr {:.6})", s.oracle_value, s.oracle_value * s.reward_cap);
            println!("final avg reward : {:.6} (snr {:.6})", s.final_avg_reward, s.final_avg_reward * s.reward_cap);
            println!("final cum regret : {:.4}", s.final_cum_regret);
            if let Some(path) = &result.csv_path {
                println!("trace csv        : {}", path.display());
            }
            if let Some(path) = &result.summary_path {
                println!("summary          : {}", path.display());
            }
            Ok(())
        }
        Command::Sweep { scenario, seeds, out } => {
            let cfg = scenario.resolve()?;
            let seeds = parse_seeds(&seeds)?;
            let report = sweep(&cfg, &seeds, Some(&out))?;
            println!("algorithm             : {}", cfg.algorithm);
            println!("seeds                 : {}", seeds.len());
            println!("mean oracle value     : {:.6}", report.mean_oracle_value);
            println!(
                "final avg reward      : {:.6} ± {:.6}",
                report.mean_final_avg_reward, report.std_final_avg_reward
            );
            println!(
                "final cum regret      : {:.4} ± {:.4}",
                report.mean_final_cum_regret, report.std_final_cum_regret
            );
            if let Some(path) = &report.aggregate_csv {
                println!("aggregate csv         : {}", path.display());
            }
            Ok(())
        }
        Command::Oracle { scenario, resolution } => {
            let cfg = scenario.resolve()?;
            let timeline = cfg.build_timeline()?;
            for (i, (start, env)) in timeline.segments().iter().enumerate() {
                let (s, value) = oracle_optimal(env, resolution)?;
                println!(
                    "segment {i} (from step {start}): azimuth {:.6} rad, elevation {:.6} rad, value {:.6}, snr {:.6}",
                    s.azimuth(),
                    s.elevation(),
                    value,
                    value * env.reward_cap()
                );
            }
            Ok(())
        }
        Command::ProbeHolder { scenario, delta, pairs } => {
            let cfg = scenario.resolve()?;
            let timeline = cfg.build_timeline()?;
            let env = timeline.env_at(1);
            let mut rng = RngStreams::new(cfg.seed).probe();
            let probe = holder_probe(env, &cfg.holder, pairs, delta, &mut rng)?;
            println!("pairs            : {}", probe.pairs);
            println!("delta            : {}", probe.delta);
            println!("alpha_h          : {}", probe.alpha_h);
            println!("configured L_H   : {}", cfg.holder.l_h());
            println!("empirical L_H    : {:.6}", probe.max_ratio);
            println!("mean ratio       : {:.6}", probe.mean_ratio);
            for (q, v) in &probe.quantiles {
                println!("quantile {:>5.2}   : {:.6}", q, v);
            }
            println!(
                "within bound     : {}",
                if probe.max_ratio <= cfg.holder.l_h() { "yes" } else { "no" }
            );
            Ok(())
        }
        Command::Report { traces } => {
            let rep = report(&traces)?;
            print!("{}", render_table(&rep));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
