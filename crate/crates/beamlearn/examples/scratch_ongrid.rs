//! Dev-only on-grid dominance diagnostics (removed before release).

use std::f64::consts::PI;

use beamlearn::{
    build_grid, run_blb, steer, synthesize_channel, EnvTimeline, Environment, HolderParams, PathComponent,
    PlanarArrayConfig, RewardRng, Strategy,
};
use num_complex::Complex64;

fn main() {
    let side = 8;
    let cfg = PlanarArrayConfig::critically_spaced(side, side).unwrap();
    let aoa = (PI / 2.0, PI / 2.0);
    let path = PathComponent::new(Complex64::new(1.0, 0.0), aoa.0, aoa.1, 1.3, 0.2).unwrap();
    let ch = synthesize_channel(&cfg, &cfg, &[path]).unwrap();
    let f = steer(&cfg, &Strategy::new(1.3, 0.2).unwrap());
    let env = Environment::with_default_cap(ch, f, 2.5 / 4096.0, 1.0, 10, 1.0).unwrap();
    let tl = EnvTimeline::constant(env.clone());

    let grid = build_grid(16).unwrap();
    let target = grid
        .strategies()
        .iter()
        .position(|s| (s.azimuth() - PI / 2.0).abs() < 1e-12 && (s.elevation() - PI / 2.0).abs() < 1e-12)
        .unwrap();
    println!("target arm {target} cost {:.4}", env.expected_cost(&grid.strategies()[target]));
    let mut ranked: Vec<(usize, f64)> = grid
        .strategies()
        .iter()
        .enumerate()
        .map(|(i, s)| (i, env.expected_cost(s)))
        .collect();
    ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    println!("top arms by cost:");
    for (i, c) in ranked.iter().take(6) {
        let s = grid.strategies()[*i];
        println!("  arm {i}: cost {c:.4} az {:.4} el {:.4}", s.azimuth(), s.elevation());
    }

    let h = HolderParams::default();
    for seed in 0..6 {
        let mut rng = RewardRng::from_seed(100 + seed);
        let trace = run_blb(&tl, 32767, &h, &mut rng).unwrap();
        let round = trace.rounds.iter().find(|r| r.t_start == 16384).unwrap();
        let mut plays: Vec<(usize, u64, f64)> = round
            .final_stats
            .iter()
            .enumerate()
            .map(|(i, st)| (i, st.plays, st.mean_reward))
            .collect();
        plays.sort_by_key(|(_, p, _)| std::cmp::Reverse(*p));
        print!("seed {seed}: ");
        for (i, p, m) in plays.iter().take(4) {
            print!("arm {i} ({p} plays, mean {m:.3})  ");
        }
        println!();
    }
}
