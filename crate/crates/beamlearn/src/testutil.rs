//! Reference evaluators used by the test suites.
//!
//! Everything here recomputes quantities from scratch with plain scalar
//! loops, independent of the production linear-algebra path, so the two
//! routes can be checked against each other.

use num_complex::Complex64;

use crate::array::{PlanarArrayConfig, Strategy};
use crate::channel::PathComponent;
use nalgebra::DVector;

/// Scalar response-vector element `(m, n)` of an array, from the phase
/// formula alone.
fn element(cfg: &PlanarArrayConfig, azimuth: f64, elevation: f64, m: usize, n: usize) -> Complex64 {
    let phase = 2.0 * std::f64::consts::PI
        * cfg.spacing_ratio()
        * (m as f64 * azimuth.sin() * elevation.sin() + n as f64 * elevation.cos());
    Complex64::from_polar(1.0 / (cfg.elements() as f64).sqrt(), phase)
}

/// Normalized expected SNR evaluated as an explicit triple sum over paths
/// and array elements: assembles each channel entry on the fly and applies
/// the receive weights one scalar at a time.
#[allow(clippy::too_many_arguments)]
pub fn triple_sum_cost(
    bs: &PlanarArrayConfig,
    ue: &PlanarArrayConfig,
    paths: &[PathComponent],
    precoder: &DVector<Complex64>,
    tx_power: f64,
    noise_power: f64,
    reward_cap: f64,
    s: &Strategy,
) -> f64 {
    let n_bs = bs.elements();
    let n_ue = ue.elements();
    let scale = ((n_bs * n_ue) as f64 / paths.len() as f64).sqrt();

    let mut acc = Complex64::new(0.0, 0.0);
    for iu in 0..n_ue {
        let (mu, nu) = (iu / ue.z_count(), iu % ue.z_count());
        let w = element(ue, s.azimuth(), s.elevation(), mu, nu);
        for ib in 0..n_bs {
            let (mb, nb) = (ib / bs.z_count(), ib % bs.z_count());
            let mut h = Complex64::new(0.0, 0.0);
            for p in paths {
                let a_ue = element(ue, p.aoa_azimuth, p.aoa_elevation, mu, nu);
                let a_bs = element(bs, p.aod_azimuth, p.aod_elevation, mb, nb);
                h += p.gain * a_ue * a_bs.conj();
            }
            acc += w.conj() * h * scale * precoder[ib];
        }
    }
    tx_power / noise_power * acc.norm_sqr() / reward_cap
}
