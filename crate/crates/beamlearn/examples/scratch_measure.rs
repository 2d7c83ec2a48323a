//! Dev-only measurement harness (removed before release).

use beamlearn::harness::{oracle_optimal, run_fixed_grid_eps_greedy, run_fixed_grid_ucb1, ScenarioConfig};
use beamlearn::{run_blb, run_drifting_blb, DriftConfig, HolderParams, RngStreams};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "drift".into());
    match which.as_str() {
        "drift" => drift_vs_plain(),
        "fig4" => fig4(),
        "slope" => slope(),
        "fig5" => fig5(),
        "track" => track(),
        _ => eprintln!("unknown probe {which}"),
    }
}

// Fig. 5 analog: N_UE = 64, gap comparison vs the Fig. 4 analog.
fn fig5() {
    for ue in [4usize, 8] {
        let n = 20_000u64;
        let seeds: Vec<u64> = (1..=20).collect();
        let mut blb_avg = 0.0;
        let mut best_grid = f64::NEG_INFINITY;
        let mut grid_sums = [[0.0; 3]; 2];
        for &seed in &seeds {
            let mut cfg = ScenarioConfig::default();
            cfg.ue_config = beamlearn::PlanarArrayConfig::critically_spaced(ue, ue).unwrap();
            cfg.seed = seed;
            cfg.horizon = n;
            let tl = cfg.build_timeline().unwrap();
            let streams = RngStreams::new(seed);
            let mut rng = streams.reward();
            let trace = run_blb(&tl, n, &cfg.holder, &mut rng).unwrap();
            blb_avg += trace.steps.iter().map(|r| r.reward).sum::<f64>() / n as f64;
            for (gi, m) in [5u32, 10, 20].iter().enumerate() {
                let mut rng = streams.reward();
                let t = run_fixed_grid_ucb1(&tl, n, *m, &mut rng).unwrap();
                grid_sums[0][gi] += t.steps.iter().map(|r| r.reward).sum::<f64>() / n as f64;
                let mut rng = streams.reward();
                let mut er = streams.exploration();
                let t = run_fixed_grid_eps_greedy(&tl, n, *m, 0.9, &mut rng, &mut er).unwrap();
                grid_sums[1][gi] += t.steps.iter().map(|r| r.reward).sum::<f64>() / n as f64;
            }
        }
        let k = seeds.len() as f64;
        blb_avg /= k;
        for gi in 0..2 {
            for mi in 0..3 {
                best_grid = best_grid.max(grid_sums[gi][mi] / k);
            }
        }
        println!(
            "N_UE={:>3}: blb {blb_avg:.5}  best_grid {best_grid:.5}  gap {:+.5}",
            ue * ue,
            blb_avg - best_grid
        );
    }
}

// Criterion-7 style tracking probe.
fn track() {
    use beamlearn::harness::ChangeSpec;
    use beamlearn::selected_elevation_series;
    let n = 16_384u64;
    let period = 2_000u64;
    let w = 250u64;
    let seeds: Vec<u64> = (1..=20).collect();
    let mut drift_ok = 0usize;
    let mut plain_ok = 0usize;
    let mut events_total = 0usize;
    for &seed in &seeds {
        let mut cfg = ScenarioConfig::default();
        cfg.bs_config = beamlearn::PlanarArrayConfig::critically_spaced(8, 8).unwrap();
        cfg.ue_config = beamlearn::PlanarArrayConfig::critically_spaced(8, 8).unwrap();
        cfg.seed = seed;
        cfg.horizon = n;
        cfg.change_schedule = Some(ChangeSpec::Every { period, start: 9800 });
        cfg.snr_db = -10.0;
        let tl = cfg.build_timeline().unwrap();
        let streams = RngStreams::new(seed);

        let mut rng = streams.reward();
        let drift = run_drifting_blb(&tl, n, &DriftConfig::default(), &mut rng).unwrap();
        let mut rng = streams.reward();
        let plain = run_blb(&tl, n, &cfg.holder, &mut rng).unwrap();

        for (start, env) in tl.segments().iter().skip(1) {
            let start = *start;
            let end = start + 2 * w + 500;
            if end > n {
                continue;
            }
            events_total += 1;
            let (s_opt, _) = oracle_optimal(env, 128).unwrap();
            let d_el = tracked_elevation(&drift, start + 2 * w, start + 2 * w + 500, &s_opt);
            let p_el = tracked_elevation(&plain, start + 2 * w, start + 2 * w + 500, &s_opt);
            let el_opt = s_opt.elevation();
            if (d_el - el_opt).abs() <= 0.25 {
                drift_ok += 1;
            }
            if (p_el - el_opt).abs() <= 0.25 {
                plain_ok += 1;
            }
            if seed <= 6 {
                println!(
                    "seed {seed} change@{start}: el_opt {el_opt:+.3}  drift {d_el:+.3} ({})  plain {p_el:+.3} ({})",
                    if (d_el - el_opt).abs() <= 0.25 { "ok" } else { "MISS" },
                    if (p_el - el_opt).abs() <= 0.25 { "ok" } else { "MISS" },
                );
            }
        }
    }
    println!(
        "events {events_total}: drifting converged {drift_ok} ({:.0}%), plain converged {plain_ok} ({:.0}%)",
        100.0 * drift_ok as f64 / events_total as f64,
        100.0 * plain_ok as f64 / events_total as f64
    );
}

/// Modal played arm over [from, to), expressed as the elevation of its
/// beam-symmetry image whose azimuth is closest to the reference strategy.
fn tracked_elevation(trace: &beamlearn::RunTrace, from: u64, to: u64, reference: &beamlearn::Strategy) -> f64 {
    use std::collections::HashMap;
    let mut counts: HashMap<(u64, u64), (usize, f64, f64)> = HashMap::new();
    for rec in trace.steps.iter().filter(|r| r.step >= from && r.step < to) {
        let key = (rec.strategy.azimuth().to_bits(), rec.strategy.elevation().to_bits());
        let e = counts.entry(key).or_insert((0, rec.strategy.azimuth(), rec.strategy.elevation()));
        e.0 += 1;
    }
    let (_, az, el) = counts.values().max_by_key(|(c, _, _)| *c).copied().unwrap_or((0, 0.0, 0.0));
    let pi = std::f64::consts::PI;
    let wrap = |a: f64| -> f64 {
        let d = (a - reference.azimuth()).rem_euclid(2.0 * pi);
        d.min(2.0 * pi - d)
    };
    // images of the same physical beam: (az, el), (π−az, el), (az+π, −el), (2π−az, −el)
    let images = [
        (az, el),
        ((pi - az).rem_euclid(2.0 * pi), el),
        ((az + pi).rem_euclid(2.0 * pi), -el),
        ((2.0 * pi - az).rem_euclid(2.0 * pi), -el),
    ];
    images
        .iter()
        .min_by(|a, b| wrap(a.0).partial_cmp(&wrap(b.0)).unwrap())
        .map(|(_, e)| *e)
        .unwrap()
}

// Stationary tail comparison at reference defaults across n choices.
fn drift_vs_plain() {
    for n in [511u64, 1023, 2047, 4095, 8191] {
        let mut plain_tail = 0.0;
        let mut drift_tail = 0.0;
        let seeds = 20;
        for seed in 1..=seeds {
            let mut cfg = ScenarioConfig::default();
            cfg.seed = seed;
            cfg.horizon = n;
            let tl = cfg.build_timeline().unwrap();
            let streams = RngStreams::new(seed);
            let h = HolderParams::default();
            let mut rng = streams.reward();
            let plain = run_blb(&tl, n, &h, &mut rng).unwrap();
            let mut rng = streams.reward();
            let drift = run_drifting_blb(&tl, n, &DriftConfig::default(), &mut rng).unwrap();
            let w = 250usize;
            plain_tail += plain.steps[plain.len() - w..].iter().map(|r| r.reward).sum::<f64>() / w as f64;
            drift_tail += drift.steps[drift.len() - w..].iter().map(|r| r.reward).sum::<f64>() / w as f64;
        }
        plain_tail /= seeds as f64;
        drift_tail /= seeds as f64;
        println!(
            "n={n:>5}  plain_tail={plain_tail:.5}  drift_tail={drift_tail:.5}  rel_diff={:+.2}%",
            (drift_tail - plain_tail) / plain_tail * 100.0
        );
    }
}

// Reference-default comparison: BLB vs fixed grids, 20 seeds, n = 2e4.
fn fig4() {
    let n = 20_000u64;
    let seeds: Vec<u64> = (1..=20).collect();
    let mut blb_avg = 0.0;
    let mut oracle_avg = 0.0;
    let mut grid_avgs = [[0.0; 3]; 2];
    for &seed in &seeds {
        let mut cfg = ScenarioConfig::default();
        cfg.seed = seed;
        cfg.horizon = n;
        let tl = cfg.build_timeline().unwrap();
        let streams = RngStreams::new(seed);
        let (_, oracle) = oracle_optimal(tl.env_at(1), 256).unwrap();
        oracle_avg += oracle;

        let mut rng = streams.reward();
        let trace = run_blb(&tl, n, &cfg.holder, &mut rng).unwrap();
        blb_avg += trace.steps.iter().map(|r| r.reward).sum::<f64>() / n as f64;

        for (gi, m) in [5u32, 10, 20].iter().enumerate() {
            let mut rng = streams.reward();
            let t = run_fixed_grid_ucb1(&tl, n, *m, &mut rng).unwrap();
            grid_avgs[0][gi] += t.steps.iter().map(|r| r.reward).sum::<f64>() / n as f64;
            let mut rng = streams.reward();
            let mut er = streams.exploration();
            let t = run_fixed_grid_eps_greedy(&tl, n, *m, 0.9, &mut rng, &mut er).unwrap();
            grid_avgs[1][gi] += t.steps.iter().map(|r| r.reward).sum::<f64>() / n as f64;
        }
    }
    let k = seeds.len() as f64;
    println!("oracle        : {:.5}", oracle_avg / k);
    println!("blb           : {:.5}  (ratio {:.3})", blb_avg / k, blb_avg / oracle_avg);
    for (gi, name) in ["ucb1", "eps"].iter().enumerate() {
        for (mi, m) in [5, 10, 20].iter().enumerate() {
            println!("{name}-{m:<2}       : {:.5}", grid_avgs[gi][mi] / k);
        }
    }
}

// Regret growth at reference defaults, n = 1e5.
fn slope() {
    use beamlearn::harness::{enrich_trace, regret_exponent_fit};
    let n = 100_000u64;
    let seeds = 20u64;
    let mut mean_regret = vec![0.0f64; n as usize];
    for seed in 1..=seeds {
        let mut cfg = ScenarioConfig::default();
        cfg.seed = seed;
        cfg.horizon = n;
        let tl = cfg.build_timeline().unwrap();
        let streams = RngStreams::new(seed);
        let mut rng = streams.reward();
        let run = run_blb(&tl, n, &cfg.holder, &mut rng).unwrap();
        let trace = enrich_trace(&run, &tl, 256).unwrap();
        for (i, s) in trace.steps.iter().enumerate() {
            mean_regret[i] += s.cum_regret / seeds as f64;
        }
        if seed == 1 {
            println!(
                "seed1: oracle {:.4}, final avg reward {:.4}",
                trace.summary.oracle_value, trace.summary.final_avg_reward
            );
        }
    }
    let slope = regret_exponent_fit(&mean_regret, (1_000, 100_000)).unwrap();
    let r_n_over_n = mean_regret[(n - 1) as usize] / n as f64;
    let r_tenth = mean_regret[(n / 10 - 1) as usize] / (n / 10) as f64;
    println!("slope [1e3,1e5]     : {slope:.4}");
    println!("R_n/n               : {r_n_over_n:.5}");
    println!("R_(n/10)/(n/10)     : {r_tenth:.5}");
    println!("ratio               : {:.4}", r_n_over_n / r_tenth);
}
