//! Aggregation of previously written trace CSVs into a summary table.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::experiment::CSV_HEADER;

/// Summary of one trace file.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFileSummary {
    pub path: PathBuf,
    pub steps: u64,
    pub final_avg_reward: f64,
    pub final_cum_regret: f64,
    pub final_avg_snr: f64,
}

/// Combined report over several trace files.
#[derive(Debug, Clone)]
pub struct Report {
    pub files: Vec<TraceFileSummary>,
    pub mean_final_avg_reward: f64,
    pub std_final_avg_reward: f64,
    pub mean_final_cum_regret: f64,
}

/// Parse one trace CSV produced by the experiment runner.
pub fn summarize_trace_file(path: &Path) -> Result<TraceFileSummary> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != CSV_HEADER {
        return Err(Error::config(format!(
            "{} does not look like a trace CSV (unexpected header)",
            path.display()
        )));
    }
    let mut steps = 0u64;
    let mut reward_sum = 0.0;
    let mut snr_sum = 0.0;
    let mut last_regret = 0.0;
    for (i, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 9 {
            return Err(Error::config(format!("{}:{}: expected 9 columns", path.display(), i + 2)));
        }
        let parse = |idx: usize| -> Result<f64> {
            cols[idx]
                .parse()
                .map_err(|_| Error::config(format!("{}:{}: bad number '{}'", path.display(), i + 2, cols[idx])))
        };
        reward_sum += parse(5)?;
        last_regret = parse(7)?;
        snr_sum += parse(8)?;
        steps += 1;
    }
    if steps == 0 {
        return Err(Error::config(format!("{} holds no steps", path.display())));
    }
    Ok(TraceFileSummary {
        path: path.to_path_buf(),
        steps,
        final_avg_reward: reward_sum / steps as f64,
        final_cum_regret: last_regret,
        final_avg_snr: snr_sum / steps as f64,
    })
}

/// Summarize several trace CSVs and aggregate their final numbers.
pub fn report(paths: &[PathBuf]) -> Result<Report> {
    if paths.is_empty() {
        return Err(Error::config("report needs at least one trace CSV"));
    }
    let files: Vec<TraceFileSummary> = paths
        .iter()
        .map(|p| summarize_trace_file(p))
        .collect::<Result<_>>()?;
    let n = files.len() as f64;
    let mean_r = files.iter().map(|f| f.final_avg_reward).sum::<f64>() / n;
    let var_r = if files.len() > 1 {
        files.iter().map(|f| (f.final_avg_reward - mean_r).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let mean_g = files.iter().map(|f| f.final_cum_regret).sum::<f64>() / n;
    Ok(Report {
        files,
        mean_final_avg_reward: mean_r,
        std_final_avg_reward: var_r.sqrt(),
        mean_final_cum_regret: mean_g,
    })
}

/// Render the report as a fixed-width text table.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<40} {:>8} {:>14} {:>14} {:>14}\n",
        "trace", "steps", "avg_reward", "avg_snr", "cum_regret"
    ));
    for f in &report.files {
        let name = f
            .path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| f.path.display().to_string());
        out.push_str(&format!(
            "{:<40} {:>8} {:>14.6} {:>14.6} {:>14.4}\n",
            name, f.steps, f.final_avg_reward, f.final_avg_snr, f.final_cum_regret
        ));
    }
    out.push_str(&format!(
        "mean final avg reward = {:.6} (std {:.6}), mean final regret = {:.4}\n",
        report.mean_final_avg_reward, report.std_final_avg_reward, report.mean_final_cum_regret
    ));
    out
}
