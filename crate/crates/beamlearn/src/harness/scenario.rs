//! Scenario configuration: defaults, the flat `key = value` config-file
//! format, and deterministic environment construction from a seed.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;

use crate::array::{steer, PlanarArrayConfig, Strategy};
use crate::blb::HolderParams;
use crate::channel::{synthesize_channel, PathComponent};
use crate::drift::ChangeSchedule;
use crate::environment::{EnvTimeline, Environment};
use crate::error::{Error, Result};
use crate::rng::RngStreams;

/// Which learner a scenario runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Blb,
    DriftingBlb,
    Ucb1Grid,
    EpsGreedyGrid,
}

impl Algorithm {
    pub fn tag(&self) -> &'static str {
        match self {
            Algorithm::Blb => "blb",
            Algorithm::DriftingBlb => "drifting-blb",
            Algorithm::Ucb1Grid => "ucb1-grid",
            Algorithm::EpsGreedyGrid => "eps-greedy-grid",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "blb" => Ok(Algorithm::Blb),
            "drifting-blb" => Ok(Algorithm::DriftingBlb),
            "ucb1-grid" => Ok(Algorithm::Ucb1Grid),
            "eps-greedy-grid" => Ok(Algorithm::EpsGreedyGrid),
            other => Err(Error::config(format!(
                "unknown algorithm '{other}' (expected blb, drifting-blb, ucb1-grid, eps-greedy-grid)"
            ))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// How the transmit geometry changes over a run.
#[derive(Debug, Clone, PartialEq)]
pub enum ChangeSpec {
    /// Redraw the first path's arrival elevation uniformly over
    /// [−π/2, π/2] at `start`, `start + period`, `start + 2·period`, ….
    Every { period: u64, start: u64 },
    /// Pin the first path's arrival elevation to the given values at the
    /// given steps.
    At(Vec<(u64, f64)>),
}

impl FromStr for ChangeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("every") {
            let (period_text, start_text) = match rest.split_once("from") {
                Some((p, f)) => (p, Some(f)),
                None => (rest, None),
            };
            let period: u64 = period_text
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad change period in '{s}'")))?;
            if period == 0 {
                return Err(Error::config("change period must be positive"));
            }
            let start = match start_text {
                Some(f) => f
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(format!("bad change start in '{s}'")))?,
                None => period,
            };
            return Ok(ChangeSpec::Every { period, start });
        }
        if let Some(rest) = s.strip_prefix("at") {
            let mut entries = Vec::new();
            for part in rest.split(';') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (step, elevation) = part
                    .split_once('=')
                    .ok_or_else(|| Error::config(format!("expected step=elevation, got '{part}'")))?;
                let step: u64 = step
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(format!("bad change step '{step}'")))?;
                let elevation: f64 = elevation
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(format!("bad change elevation '{elevation}'")))?;
                entries.push((step, elevation));
            }
            if entries.is_empty() {
                return Err(Error::config("empty change list"));
            }
            return Ok(ChangeSpec::At(entries));
        }
        Err(Error::config(format!(
            "unknown change schedule '{s}' (expected 'every <period>' or 'at step=elev; ...')"
        )))
    }
}

impl fmt::Display for ChangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChangeSpec::Every { period, start } if start == period => write!(f, "every {period}"),
            ChangeSpec::Every { period, start } => write!(f, "every {period} from {start}"),
            ChangeSpec::At(entries) => {
                let parts: Vec<String> = entries.iter().map(|(s, e)| format!("{s}={e}")).collect();
                write!(f, "at {}", parts.join("; "))
            }
        }
    }
}

/// Full description of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub bs_config: PlanarArrayConfig,
    pub ue_config: PlanarArrayConfig,
    pub num_paths: usize,
    pub mean_path_power: f64,
    pub snr_db: f64,
    pub first_path_aoa: (f64, f64),
    pub holder: HolderParams,
    pub horizon: u64,
    pub algorithm: Algorithm,
    pub grid_resolution: u32,
    pub epsilon0: f64,
    pub window: u64,
    pub seed: u64,
    pub samples_per_dwell: u32,
    pub change_schedule: Option<ChangeSpec>,
}

impl Default for ScenarioConfig {
    /// N_BS = 64 (8×8), N_UE = 16 (4×4), five Rayleigh paths with unit mean
    /// power, SNR = −20 dB, first arrival at (π/3, π/3), L_H = 4, α_H = 1.
    fn default() -> Self {
        Self {
            bs_config: PlanarArrayConfig::critically_spaced(8, 8).unwrap(),
            ue_config: PlanarArrayConfig::critically_spaced(4, 4).unwrap(),
            num_paths: 5,
            mean_path_power: 1.0,
            snr_db: -20.0,
            first_path_aoa: (PI / 3.0, PI / 3.0),
            holder: HolderParams::default(),
            horizon: 20_000,
            algorithm: Algorithm::Blb,
            grid_resolution: 10,
            epsilon0: 0.9,
            window: 250,
            seed: 1,
            samples_per_dwell: 10,
            change_schedule: None,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_paths == 0 {
            return Err(Error::config("num_paths must be at least 1"));
        }
        if !self.mean_path_power.is_finite() || self.mean_path_power <= 0.0 {
            return Err(Error::config("mean_path_power must be positive"));
        }
        if !self.snr_db.is_finite() {
            return Err(Error::config("snr_db must be finite"));
        }
        Strategy::new(self.first_path_aoa.0, self.first_path_aoa.1)
            .map_err(|e| Error::config(format!("first_path_aoa: {e}")))?;
        if self.horizon == 0 {
            return Err(Error::config("horizon must be at least 1"));
        }
        if self.grid_resolution == 0 {
            return Err(Error::config("grid_resolution must be at least 1"));
        }
        if !(self.epsilon0 > 0.0 && self.epsilon0 < 1.0) {
            return Err(Error::config("epsilon0 must lie in (0, 1)"));
        }
        if self.window < 2 || self.window % 2 != 0 {
            return Err(Error::config("window must be even and ≥ 2"));
        }
        if self.samples_per_dwell == 0 {
            return Err(Error::config("samples_per_dwell must be at least 1"));
        }
        Ok(())
    }

    /// Transmit power with σ² = 1: P = 10^(snr_db/10).
    pub fn tx_power(&self) -> f64 {
        10.0_f64.powf(self.snr_db / 10.0)
    }

    /// Deterministically draw the base path set from the seed's channel
    /// stream: Rayleigh gains everywhere, the first arrival pinned to
    /// `first_path_aoa`, every other angle uniform over its domain.
    pub fn draw_paths<R: Rng>(&self, rng: &mut R) -> Result<Vec<PathComponent>> {
        let mut paths = Vec::with_capacity(self.num_paths);
        for i in 0..self.num_paths {
            let gain = PathComponent::rayleigh_gain(self.mean_path_power, rng);
            let (aoa_az, aoa_el) = if i == 0 {
                self.first_path_aoa
            } else {
                (rng.random_range(0.0..2.0 * PI), rng.random_range(-PI / 2.0..PI / 2.0))
            };
            let aod_az = rng.random_range(0.0..2.0 * PI);
            let aod_el = rng.random_range(-PI / 2.0..PI / 2.0);
            paths.push(PathComponent::new(gain, aoa_az, aoa_el, aod_az, aod_el)?);
        }
        Ok(paths)
    }

    /// Build the base environment: ray channel from the seeded paths, BS
    /// precoder steered along the first path's departure, default reward cap.
    pub fn build_environment(&self, streams: &RngStreams) -> Result<Environment> {
        self.validate()?;
        let mut channel_rng = streams.channel();
        let paths = self.draw_paths(&mut channel_rng)?;
        let channel = synthesize_channel(&self.bs_config, &self.ue_config, &paths)?;
        let first = &paths[0];
        let precoder = steer(&self.bs_config, &Strategy::new(first.aod_azimuth, first.aod_elevation)?);
        Environment::with_default_cap(
            channel,
            precoder,
            self.tx_power(),
            1.0,
            self.samples_per_dwell,
            self.mean_path_power,
        )
    }

    /// Expand the change specification into a concrete schedule against the
    /// base paths (only the first path's arrival elevation moves).
    pub fn build_change_schedule(&self, streams: &RngStreams) -> Result<Option<ChangeSchedule>> {
        let Some(spec) = &self.change_schedule else {
            return Ok(None);
        };
        let mut channel_rng = streams.channel();
        let base_paths = self.draw_paths(&mut channel_rng)?;
        let entries: Vec<(u64, f64)> = match spec {
            ChangeSpec::Every { period, start } => {
                let mut schedule_rng = streams.schedule();
                (0..)
                    .map(|k| start + k * period)
                    .take_while(|step| *step <= self.horizon)
                    .map(|step| (step, schedule_rng.random_range(-PI / 2.0..PI / 2.0)))
                    .collect()
            }
            ChangeSpec::At(entries) => entries.clone(),
        };
        let mut changes = Vec::with_capacity(entries.len());
        for (step, elevation) in entries {
            if !(step >= 1 && step <= self.horizon) {
                return Err(Error::config(format!("change step {step} outside [1, horizon]")));
            }
            let mut paths = base_paths.clone();
            paths[0] = PathComponent::new(
                paths[0].gain,
                paths[0].aoa_azimuth,
                elevation,
                paths[0].aod_azimuth,
                paths[0].aod_elevation,
            )?;
            changes.push((step, paths));
        }
        Ok(Some(ChangeSchedule::new(changes)?))
    }

    /// Full environment timeline for this scenario.
    pub fn build_timeline(&self) -> Result<EnvTimeline> {
        let streams = RngStreams::new(self.seed);
        let base = self.build_environment(&streams)?;
        match self.build_change_schedule(&streams)? {
            Some(schedule) => schedule.apply(&base),
            None => Ok(EnvTimeline::constant(base)),
        }
    }

    /// Parse a flat `key = value` config file. Unknown keys are rejected.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_config_str(&text)
    }

    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set_field(key.trim(), value.trim())
                .map_err(|e| Error::config(format!("line {}: {e}", lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Apply one `key = value` assignment (also used for CLI overrides).
    pub fn set_field(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "bs_config" => self.bs_config = parse_array(value)?,
            "ue_config" => self.ue_config = parse_array(value)?,
            "num_paths" => self.num_paths = parse_num(key, value)?,
            "mean_path_power" => self.mean_path_power = parse_num(key, value)?,
            "snr_db" => self.snr_db = parse_num(key, value)?,
            "first_path_aoa" => self.first_path_aoa = parse_pair(value)?,
            "holder" => {
                let (l_h, alpha_h) = parse_pair(value)?;
                self.holder = HolderParams::new(l_h, alpha_h).map_err(|e| Error::config(e.to_string()))?;
            }
            "horizon" => self.horizon = parse_num(key, value)?,
            "algorithm" => self.algorithm = value.parse()?,
            "grid_resolution" => self.grid_resolution = parse_num(key, value)?,
            "epsilon0" => self.epsilon0 = parse_num(key, value)?,
            "window" => self.window = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "samples_per_dwell" => self.samples_per_dwell = parse_num(key, value)?,
            "change_schedule" => {
                self.change_schedule = if value == "none" { None } else { Some(value.parse()?) }
            }
            other => return Err(Error::config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Render as the same flat format `from_config_str` accepts.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let arr = |c: &PlanarArrayConfig| format!("{}x{}@{}", c.y_count(), c.z_count(), c.spacing_ratio());
        out.push_str(&format!("bs_config = {}\n", arr(&self.bs_config)));
        out.push_str(&format!("ue_config = {}\n", arr(&self.ue_config)));
        out.push_str(&format!("num_paths = {}\n", self.num_paths));
        out.push_str(&format!("mean_path_power = {}\n", self.mean_path_power));
        out.push_str(&format!("snr_db = {}\n", self.snr_db));
        out.push_str(&format!("first_path_aoa = {}, {}\n", self.first_path_aoa.0, self.first_path_aoa.1));
        out.push_str(&format!("holder = {}, {}\n", self.holder.l_h(), self.holder.alpha_h()));
        out.push_str(&format!("horizon = {}\n", self.horizon));
        out.push_str(&format!("algorithm = {}\n", self.algorithm));
        out.push_str(&format!("grid_resolution = {}\n", self.grid_resolution));
        out.push_str(&format!("epsilon0 = {}\n", self.epsilon0));
        out.push_str(&format!("window = {}\n", self.window));
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("samples_per_dwell = {}\n", self.samples_per_dwell));
        match &self.change_schedule {
            Some(spec) => out.push_str(&format!("change_schedule = {spec}\n")),
            None => out.push_str("change_schedule = none\n"),
        }
        out
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::config(format!("bad value '{value}' for {key}")))
}

/// `YxZ` or `YxZ@spacing`, e.g. `8x8` or `4x4@0.5`.
fn parse_array(value: &str) -> Result<PlanarArrayConfig> {
    let (grid, spacing) = match value.split_once('@') {
        Some((g, s)) => (
            g,
            s.parse::<f64>()
                .map_err(|_| Error::config(format!("bad spacing in '{value}'")))?,
        ),
        None => (value, 0.5),
    };
    let (y, z) = grid
        .split_once('x')
        .ok_or_else(|| Error::config(format!("expected YxZ array shape, got '{value}'")))?;
    let y: usize = y.trim().parse().map_err(|_| Error::config(format!("bad Y in '{value}'")))?;
    let z: usize = z.trim().parse().map_err(|_| Error::config(format!("bad Z in '{value}'")))?;
    PlanarArrayConfig::new(y, z, spacing).map_err(|e| Error::config(e.to_string()))
}

fn parse_pair(value: &str) -> Result<(f64, f64)> {
    let (a, b) = value
        .split_once(',')
        .ok_or_else(|| Error::config(format!("expected 'a, b', got '{value}'")))?;
    let a: f64 = a.trim().parse().map_err(|_| Error::config(format!("bad number '{a}'")))?;
    let b: f64 = b.trim().parse().map_err(|_| Error::config(format!("bad number '{b}'")))?;
    Ok((a, b))
}
