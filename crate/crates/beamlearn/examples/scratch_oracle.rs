//! Dev-only oracle diagnostics (removed before release).

use beamlearn::harness::oracle_optimal;
use beamlearn::{steer, Environment, PathComponent, PlanarArrayConfig, Strategy};
use num_complex::Complex64;

fn main() {
    let cfg = PlanarArrayConfig::critically_spaced(4, 4).unwrap();
    let aoa = (1.1, 0.55);
    let path = PathComponent::new(Complex64::new(1.0, 0.0), aoa.0, aoa.1, 2.0, 0.1).unwrap();
    let ch = beamlearn::synthesize_channel(&cfg, &cfg, &[path]).unwrap();
    let f = steer(&cfg, &Strategy::new(2.0, 0.1).unwrap());
    let env = Environment::with_default_cap(ch, f, 1.0, 1.0, 10, 1.0).unwrap();

    println!("cost at exact aoa      : {:.12}", env.expected_cost(&Strategy::new(aoa.0, aoa.1).unwrap()));
    let mirror = std::f64::consts::PI - aoa.0;
    println!("cost at mirror         : {:.12}", env.expected_cost(&Strategy::new(mirror, aoa.1).unwrap()));

    for resolution in [32u32, 64, 128, 256] {
        let (s, v) = oracle_optimal(&env, resolution).unwrap();
        println!(
            "res {resolution:>3}: value {v:.12}  az {:.8} el {:.8}  (direct {:.8} mirror {:.8})",
            s.azimuth(),
            s.elevation(),
            aoa.0,
            mirror
        );
    }
}
