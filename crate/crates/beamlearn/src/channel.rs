//! Ray-based narrowband MIMO channel synthesis.
//!
//! The channel between an `N_BS`-element transmitter and an `N_UE`-element
//! receiver is a sum of `L` planar-wave paths:
//!
//! ```text
//! H = √(N_BS·N_UE / L) · Σ_l  α_l · a_UE(aoa_l) · a_BS(aod_l)^H
//! ```
//!
//! Millimeter-wave channels are sparse, so `L` is expected to stay well below
//! `min(N_BS, N_UE)`; larger values are accepted with a warning.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::array::{response_unchecked, PlanarArrayConfig};
use crate::error::{Error, Result};

/// One propagation path: complex gain plus arrival/departure directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathComponent {
    pub gain: Complex64,
    pub aoa_azimuth: f64,
    pub aoa_elevation: f64,
    pub aod_azimuth: f64,
    pub aod_elevation: f64,
}

impl PathComponent {
    pub fn new(
        gain: Complex64,
        aoa_azimuth: f64,
        aoa_elevation: f64,
        aod_azimuth: f64,
        aod_elevation: f64,
    ) -> Result<Self> {
        if !gain.re.is_finite() || !gain.im.is_finite() {
            return Err(Error::invalid("path gain must be finite"));
        }
        for (name, az) in [("aoa", aoa_azimuth), ("aod", aod_azimuth)] {
            if !az.is_finite() || !(0.0..=2.0 * PI).contains(&az) {
                return Err(Error::invalid(format!("{name} azimuth {az} outside [0, 2π]")));
            }
        }
        for (name, el) in [("aoa", aoa_elevation), ("aod", aod_elevation)] {
            if !el.is_finite() || !(-PI / 2.0..=PI / 2.0).contains(&el) {
                return Err(Error::invalid(format!("{name} elevation {el} outside [−π/2, π/2]")));
            }
        }
        Ok(Self { gain, aoa_azimuth, aoa_elevation, aod_azimuth, aod_elevation })
    }

    /// Rayleigh-fading gain with mean power `mean_power`:
    /// `α = √mean_power · (g₁ + j·g₂)/√2`, `g_i` standard normal.
    pub fn rayleigh_gain<R: Rng>(mean_power: f64, rng: &mut R) -> Complex64 {
        let g1: f64 = rng.sample(StandardNormal);
        let g2: f64 = rng.sample(StandardNormal);
        Complex64::new(g1, g2) * (mean_power / 2.0).sqrt()
    }
}

/// A synthesized channel matrix together with its generating paths.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    matrix: DMatrix<Complex64>,
    paths: Vec<PathComponent>,
    bs_config: PlanarArrayConfig,
    ue_config: PlanarArrayConfig,
}

impl ChannelRealization {
    /// The `N_UE × N_BS` channel matrix.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn paths(&self) -> &[PathComponent] {
        &self.paths
    }

    pub fn bs_config(&self) -> &PlanarArrayConfig {
        &self.bs_config
    }

    pub fn ue_config(&self) -> &PlanarArrayConfig {
        &self.ue_config
    }

    pub fn n_bs(&self) -> usize {
        self.bs_config.elements()
    }

    pub fn n_ue(&self) -> usize {
        self.ue_config.elements()
    }
}

/// Assemble the ray-based channel from explicit path components.
pub fn synthesize_channel(
    bs_config: &PlanarArrayConfig,
    ue_config: &PlanarArrayConfig,
    paths: &[PathComponent],
) -> Result<ChannelRealization> {
    if paths.is_empty() {
        return Err(Error::invalid("channel synthesis needs at least one path"));
    }
    let n_bs = bs_config.elements();
    let n_ue = ue_config.elements();
    if paths.len() > n_bs.min(n_ue) {
        log::warn!(
            "path count {} exceeds min(N_BS, N_UE) = {}; sparse-channel assumption is violated",
            paths.len(),
            n_bs.min(n_ue)
        );
    }

    let scale = ((n_bs * n_ue) as f64 / paths.len() as f64).sqrt();
    let mut matrix = DMatrix::<Complex64>::zeros(n_ue, n_bs);
    for path in paths {
        let a_ue = response_unchecked(ue_config, path.aoa_azimuth, path.aoa_elevation);
        let a_bs = response_unchecked(bs_config, path.aod_azimuth, path.aod_elevation);
        let weight = path.gain * Complex64::from(scale);
        // rank-one update: weight · a_ue · a_bs^H
        matrix.gerc(weight, &a_ue, &a_bs, Complex64::from(1.0));
    }

    Ok(ChannelRealization {
        matrix,
        paths: paths.to_vec(),
        bs_config: *bs_config,
        ue_config: *ue_config,
    })
}
