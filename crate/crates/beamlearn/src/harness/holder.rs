//! Empirical smoothness probe for the normalized expected cost.
//!
//! Samples nearby strategy pairs and reports the distribution of
//! `|C̄(s) − C̄(s′)| / ‖s − s′‖^α_H`. The maximum is an empirical lower bound
//! on the true Hölder constant; staying below the configured `L_H` is
//! evidence that the learner's smoothness assumption holds for the scenario.

use std::f64::consts::PI;

use rand::Rng;

use crate::array::Strategy;
use crate::blb::HolderParams;
use crate::environment::Environment;
use crate::error::{Error, Result};

/// Distribution summary from one probe run.
#[derive(Debug, Clone)]
pub struct HolderProbeReport {
    pub pairs: usize,
    pub delta: f64,
    pub alpha_h: f64,
    /// Empirical Hölder constant: the largest observed ratio.
    pub max_ratio: f64,
    pub mean_ratio: f64,
    /// (quantile, ratio) points of the observed distribution.
    pub quantiles: Vec<(f64, f64)>,
}

/// Probe `num_pairs` strategy pairs at separation ≤ `delta`.
pub fn holder_probe<R: Rng>(
    env: &Environment,
    holder: &HolderParams,
    num_pairs: usize,
    delta: f64,
    rng: &mut R,
) -> Result<HolderProbeReport> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::invalid("probe delta must be positive"));
    }
    if num_pairs == 0 {
        return Err(Error::invalid("probe needs at least one pair"));
    }

    let mut ratios = Vec::with_capacity(num_pairs);
    while ratios.len() < num_pairs {
        let s = Strategy::new(
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(-PI / 2.0..PI / 2.0),
        )?;
        // offset uniform over the disc of radius delta, re-drawn until the
        // perturbed strategy stays inside the domain
        let s2 = loop {
            let radius = delta * rng.random::<f64>().sqrt();
            let angle = rng.random_range(0.0..2.0 * PI);
            let az = s.azimuth() + radius * angle.cos();
            let el = s.elevation() + radius * angle.sin();
            if let Ok(candidate) = Strategy::new(az, el) {
                break candidate;
            }
        };
        let dist = s.distance(&s2);
        if dist < 1e-12 {
            // zero-distance guard: the ratio is 0/0, skip the pair
            continue;
        }
        let diff = (env.expected_cost(&s) - env.expected_cost(&s2)).abs();
        ratios.push(diff / dist.powf(holder.alpha_h()));
    }

    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let quantile = |q: f64| -> f64 {
        let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
        sorted[idx]
    };
    Ok(HolderProbeReport {
        pairs: num_pairs,
        delta,
        alpha_h: holder.alpha_h(),
        max_ratio: *sorted.last().unwrap(),
        mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
        quantiles: vec![
            (0.50, quantile(0.50)),
            (0.90, quantile(0.90)),
            (0.99, quantile(0.99)),
            (1.00, *sorted.last().unwrap()),
        ],
    })
}
