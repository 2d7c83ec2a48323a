//! Dev-only oracle stage diagnostics (removed before release).

use std::f64::consts::PI;

use beamlearn::{steer, Environment, PathComponent, PlanarArrayConfig, Strategy};
use num_complex::Complex64;

fn cost(env: &Environment, az: f64, el: f64) -> f64 {
    env.expected_cost(&Strategy::new(az.rem_euclid(2.0 * PI), el.clamp(-PI / 2.0, PI / 2.0)).unwrap())
}

fn main() {
    let cfg = PlanarArrayConfig::critically_spaced(4, 4).unwrap();
    let aoa = (1.1, 0.55);
    let path = PathComponent::new(Complex64::new(1.0, 0.0), aoa.0, aoa.1, 2.0, 0.1).unwrap();
    let ch = beamlearn::synthesize_channel(&cfg, &cfg, &[path]).unwrap();
    let f = steer(&cfg, &Strategy::new(2.0, 0.1).unwrap());
    let env = Environment::with_default_cap(ch, f, 1.0, 1.0, 10, 1.0).unwrap();

    let resolution = 64u64;
    let r_az = resolution;
    let r_el = resolution / 2;
    let mut az_step = 2.0 * PI / r_az as f64;
    let mut el_step = PI / r_el as f64;

    let mut best = (0.0, 0.0);
    let mut best_value = f64::NEG_INFINITY;
    for ka in 1..=r_az {
        let az = 2.0 * PI * ka as f64 / r_az as f64;
        for ke in 1..=r_el {
            let el = -PI / 2.0 + PI * ke as f64 / r_el as f64;
            let v = cost(&env, az, el);
            if v > best_value {
                best_value = v;
                best = (az, el);
            }
        }
    }
    println!("coarse: value {best_value:.12} at az {:.8} el {:.8}", best.0, best.1);

    for stage in 0..3 {
        let fine_az = az_step / 10.0;
        let fine_el = el_step / 10.0;
        let (ca, ce) = best;
        for ia in -10..=10_i64 {
            for ie in -10..=10_i64 {
                let az = (ca + ia as f64 * fine_az).rem_euclid(2.0 * PI);
                let el = (ce + ie as f64 * fine_el).clamp(-PI / 2.0, PI / 2.0);
                let v = cost(&env, az, el);
                if v > best_value {
                    best_value = v;
                    best = (az, el);
                }
            }
        }
        println!("stage {stage}: value {best_value:.12} at az {:.8} el {:.8} (fine_az {fine_az:.6})", best.0, best.1);
        az_step = fine_az;
        el_step = fine_el;
    }

    // exhaustive micro-scan around the true mirror peak for reference
    let mirror = PI - aoa.0;
    let mut ref_best = f64::NEG_INFINITY;
    let mut at = (0.0, 0.0);
    for ia in -400..=400_i64 {
        for ie in -400..=400_i64 {
            let az = mirror + ia as f64 * 1e-4;
            let el = aoa.1 + ie as f64 * 1e-4;
            let v = cost(&env, az, el);
            if v > ref_best {
                ref_best = v;
                at = (az, el);
            }
        }
    }
    println!("reference peak: {ref_best:.12} at az {:.8} el {:.8}", at.0, at.1);
}
