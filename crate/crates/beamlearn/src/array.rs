//! Uniform planar arrays: geometry, beam directions, and response vectors.
//!
//! A planar array with `Y` horizontal and `Z` vertical elements presents a
//! unit-norm response vector toward an (azimuth, elevation) direction. The
//! element at grid position `(m, n)` carries the phase
//!
//! ```text
//! 2π · (d/λ) · (m·sin(azimuth)·sin(elevation) + n·cos(elevation))
//! ```
//!
//! Vector entries are laid out m-major with n varying fastest; the receive
//! weight vector and the channel steering vectors share the convention, so
//! any consistent order gives the same inner products.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Geometry of one uniform planar array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarArrayConfig {
    y_count: usize,
    z_count: usize,
    spacing_ratio: f64,
}

impl PlanarArrayConfig {
    /// `spacing_ratio` is the inter-element spacing in wavelengths (d/λ).
    pub fn new(y_count: usize, z_count: usize, spacing_ratio: f64) -> Result<Self> {
        if y_count == 0 || z_count == 0 {
            return Err(Error::invalid("array must have at least one element per axis"));
        }
        if !spacing_ratio.is_finite() || spacing_ratio <= 0.0 {
            return Err(Error::invalid(format!(
                "spacing ratio must be positive and finite, got {spacing_ratio}"
            )));
        }
        Ok(Self { y_count, z_count, spacing_ratio })
    }

    /// Critically spaced array, d = λ/2.
    pub fn critically_spaced(y_count: usize, z_count: usize) -> Result<Self> {
        Self::new(y_count, z_count, 0.5)
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn z_count(&self) -> usize {
        self.z_count
    }

    pub fn spacing_ratio(&self) -> f64 {
        self.spacing_ratio
    }

    /// Total element count N = Y·Z.
    pub fn elements(&self) -> usize {
        self.y_count * self.z_count
    }
}

/// One beam direction: a single bandit arm.
///
/// Azimuth lives in [0, 2π], elevation in [−π/2, π/2], both in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strategy {
    azimuth: f64,
    elevation: f64,
}

impl Strategy {
    pub const AZIMUTH_RANGE: (f64, f64) = (0.0, 2.0 * PI);
    pub const ELEVATION_RANGE: (f64, f64) = (-PI / 2.0, PI / 2.0);

    pub fn new(azimuth: f64, elevation: f64) -> Result<Self> {
        if !azimuth.is_finite() || !(0.0..=2.0 * PI).contains(&azimuth) {
            return Err(Error::invalid(format!("azimuth {azimuth} outside [0, 2π]")));
        }
        if !elevation.is_finite() || !(-PI / 2.0..=PI / 2.0).contains(&elevation) {
            return Err(Error::invalid(format!("elevation {elevation} outside [−π/2, π/2]")));
        }
        Ok(Self { azimuth, elevation })
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }

    /// Euclidean distance in the (azimuth, elevation) plane.
    pub fn distance(&self, other: &Strategy) -> f64 {
        let da = self.azimuth - other.azimuth;
        let de = self.elevation - other.elevation;
        (da * da + de * de).sqrt()
    }
}

/// Unit-norm response vector of `cfg` toward the given direction.
///
/// Entry `(m, n)` (m-major, n fastest) is
/// `exp(j·2π·(d/λ)·(m·sin(az)·sin(el) + n·cos(el))) / √N`.
pub fn array_response(cfg: &PlanarArrayConfig, azimuth: f64, elevation: f64) -> Result<DVector<Complex64>> {
    if !azimuth.is_finite() || !elevation.is_finite() {
        return Err(Error::invalid("array response angles must be finite"));
    }
    Ok(response_unchecked(cfg, azimuth, elevation))
}

/// Response vector for a validated [`Strategy`].
pub fn steer(cfg: &PlanarArrayConfig, s: &Strategy) -> DVector<Complex64> {
    response_unchecked(cfg, s.azimuth, s.elevation)
}

pub(crate) fn response_unchecked(cfg: &PlanarArrayConfig, azimuth: f64, elevation: f64) -> DVector<Complex64> {
    let n_total = cfg.elements();
    let scale = 1.0 / (n_total as f64).sqrt();
    let wave = 2.0 * PI * cfg.spacing_ratio;
    let horiz = azimuth.sin() * elevation.sin();
    let vert = elevation.cos();
    DVector::from_iterator(
        n_total,
        (0..cfg.y_count).flat_map(|m| {
            (0..cfg.z_count).map(move |n| {
                let phase = wave * (m as f64 * horiz + n as f64 * vert);
                Complex64::from_polar(scale, phase)
            })
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_element_is_unity() {
        let cfg = PlanarArrayConfig::critically_spaced(1, 1).unwrap();
        let v = array_response(&cfg, 1.234, -0.7).unwrap();
        assert_eq!(v.len(), 1);
        assert_relative_eq!(v[0].re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(v[0].im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn first_element_is_uniform_amplitude() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let y = rng.random_range(1..6_usize);
            let z = rng.random_range(1..6_usize);
            let cfg = PlanarArrayConfig::critically_spaced(y, z).unwrap();
            let az = rng.random_range(0.0..2.0 * PI);
            let el = rng.random_range(-PI / 2.0..PI / 2.0);
            let v = array_response(&cfg, az, el).unwrap();
            let expected = 1.0 / (cfg.elements() as f64).sqrt();
            assert_eq!(v[0], Complex64::new(expected, 0.0));
        }
    }

    #[test]
    fn two_element_broadside_null() {
        // Y=2, Z=1, d=λ/2, azimuth=elevation=π/2: second element phase is π.
        let cfg = PlanarArrayConfig::critically_spaced(2, 1).unwrap();
        let v = array_response(&cfg, PI / 2.0, PI / 2.0).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert_relative_eq!(v[0].re, inv_sqrt2, epsilon = 1e-12);
        assert_relative_eq!(v[0].im, 0.0, epsilon = 1e-12);
        assert_relative_eq!(v[1].re, -inv_sqrt2, epsilon = 1e-12);
        assert_relative_eq!(v[1].im, 0.0, max_relative = 1e-12, epsilon = 1e-12);
    }

    #[test]
    fn layout_is_m_major_n_fastest() {
        let cfg = PlanarArrayConfig::new(2, 3, 0.5).unwrap();
        let az = 0.9;
        let el = 0.4;
        let v = array_response(&cfg, az, el).unwrap();
        let wave = 2.0 * PI * 0.5;
        for m in 0..2 {
            for n in 0..3 {
                let phase = wave * (m as f64 * az.sin() * el.sin() + n as f64 * el.cos());
                let expected = Complex64::from_polar(1.0 / 6.0_f64.sqrt(), phase);
                let got = v[m * 3 + n];
                assert_relative_eq!(got.re, expected.re, epsilon = 1e-14);
                assert_relative_eq!(got.im, expected.im, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn unit_norm_over_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let y = rng.random_range(1..9_usize);
            let z = rng.random_range(1..9_usize);
            let spacing = rng.random_range(0.1..1.5);
            let cfg = PlanarArrayConfig::new(y, z, spacing).unwrap();
            let az = rng.random_range(0.0..2.0 * PI);
            let el = rng.random_range(-PI / 2.0..PI / 2.0);
            let v = array_response(&cfg, az, el).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = PlanarArrayConfig::critically_spaced(2, 2).unwrap();
        assert!(array_response(&cfg, f64::NAN, 0.0).is_err());
        assert!(array_response(&cfg, 0.0, f64::INFINITY).is_err());
        assert!(PlanarArrayConfig::new(0, 2, 0.5).is_err());
        assert!(PlanarArrayConfig::new(2, 2, 0.0).is_err());
        assert!(PlanarArrayConfig::new(2, 2, -0.5).is_err());
    }

    #[test]
    fn strategy_domain_checks() {
        assert!(Strategy::new(0.0, 0.0).is_ok());
        assert!(Strategy::new(2.0 * PI, PI / 2.0).is_ok());
        assert!(Strategy::new(-0.1, 0.0).is_err());
        assert!(Strategy::new(0.0, 1.6).is_err());
        assert!(Strategy::new(f64::NAN, 0.0).is_err());
    }
}
