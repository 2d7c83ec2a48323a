//! Finite-armed bandit machinery: per-arm statistics, UCB1 selection and
//! update, and the decaying-ε greedy baseline.
//!
//! UCB1 plays every arm once, then picks the arm maximizing
//! `mean + √(2·ln(t)/u)` where `t` is the total play count of this instance
//! and `u` the arm's own count. All ties break toward the lowest index so a
//! given state always selects the same arm.

use rand::Rng;

use crate::array::Strategy;
use crate::error::{Error, Result};

/// Running statistics of one arm. An unplayed arm reports mean 0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ArmStats {
    pub plays: u64,
    pub mean_reward: f64,
}

/// An ordered set of arms with shared play count.
#[derive(Debug, Clone)]
pub struct ArmSet {
    arms: Vec<(Strategy, ArmStats)>,
    total_plays: u64,
}

impl ArmSet {
    pub fn new(strategies: Vec<Strategy>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::invalid("arm set must not be empty"));
        }
        Ok(Self {
            arms: strategies.into_iter().map(|s| (s, ArmStats::default())).collect(),
            total_plays: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    pub fn total_plays(&self) -> u64 {
        self.total_plays
    }

    pub fn strategy(&self, index: usize) -> &Strategy {
        &self.arms[index].0
    }

    pub fn stats(&self, index: usize) -> &ArmStats {
        &self.arms[index].1
    }

    pub fn arms(&self) -> impl Iterator<Item = &(Strategy, ArmStats)> {
        self.arms.iter()
    }

    /// UCB1 choice: lowest-index unplayed arm during initialization, then
    /// the maximizer of `mean + √(2·ln(total)/plays)`.
    pub fn ucb1_select(&self) -> usize {
        if let Some(idx) = self.arms.iter().position(|(_, st)| st.plays == 0) {
            return idx;
        }
        let t = self.total_plays as f64;
        let mut best = 0;
        let mut best_index = f64::NEG_INFINITY;
        for (i, (_, st)) in self.arms.iter().enumerate() {
            let bonus = (2.0 * t.ln() / st.plays as f64).sqrt();
            let index = st.mean_reward + bonus;
            if index > best_index {
                best_index = index;
                best = i;
            }
        }
        best
    }

    /// Record `reward` for the played arm; running-mean update.
    ///
    /// Rewards are nonnegative cost feedback. The SNR estimates the learners
    /// feed in are unnormalized, so no upper bound is imposed; means stay in
    /// [0, 1] whenever every observed reward does.
    pub fn ucb1_update(&mut self, index: usize, reward: f64) -> Result<()> {
        if index >= self.arms.len() {
            return Err(Error::contract(format!("arm index {index} out of range")));
        }
        if !reward.is_finite() || reward < 0.0 {
            return Err(Error::contract(format!("reward {reward} must be finite and nonnegative")));
        }
        let st = &mut self.arms[index].1;
        st.plays += 1;
        st.mean_reward += (reward - st.mean_reward) / st.plays as f64;
        self.total_plays += 1;
        Ok(())
    }

    /// ε-greedy choice with the decaying schedule ε₀^(t/10): explore with a
    /// uniformly random arm, otherwise exploit the best empirical mean.
    /// Unplayed arms count as mean 0.
    pub fn epsilon_greedy_select<R: Rng>(&self, global_t: u64, epsilon0: f64, rng: &mut R) -> usize {
        if rng.random::<f64>() < epsilon_schedule(epsilon0, global_t) {
            return rng.random_range(0..self.arms.len());
        }
        let mut best = 0;
        let mut best_mean = f64::NEG_INFINITY;
        for (i, (_, st)) in self.arms.iter().enumerate() {
            if st.mean_reward > best_mean {
                best_mean = st.mean_reward;
                best = i;
            }
        }
        best
    }
}

/// Exploration probability at global step `t`: ε₀^(t/10).
pub fn epsilon_schedule(epsilon0: f64, global_t: u64) -> f64 {
    epsilon0.powf(global_t as f64 / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arms(n: usize) -> ArmSet {
        let strategies = (0..n)
            .map(|i| Strategy::new(0.1 + i as f64 * 0.1, 0.0).unwrap())
            .collect();
        ArmSet::new(strategies).unwrap()
    }

    fn force(set: &mut ArmSet, index: usize, rewards: &[f64]) {
        for &r in rewards {
            set.ucb1_update(index, r).unwrap();
        }
    }

    #[test]
    fn empty_set_rejected() {
        assert!(ArmSet::new(vec![]).is_err());
    }

    #[test]
    fn unplayed_arm_selected_first() {
        let mut set = arms(3);
        force(&mut set, 0, &[0.5]);
        force(&mut set, 2, &[0.9]);
        assert_eq!(set.ucb1_select(), 1);
    }

    #[test]
    fn equal_plays_prefer_higher_mean() {
        let mut set = arms(2);
        force(&mut set, 0, &[0.7, 0.7]);
        force(&mut set, 1, &[0.3, 0.3]);
        assert_eq!(set.ucb1_select(), 0);
    }

    #[test]
    fn index_formula_matches_hand_evaluation() {
        // arm 0: mean 0.5 over 10 plays; arm 1: mean 0.3 over 2 plays;
        // 88 further plays land on a third arm to set total_plays = 100.
        // Indices: 0.5 + √(2·ln 100/10) ≈ 1.4597, 0.3 + √(2·ln 100/2) ≈ 2.4460.
        let mut set = arms(3);
        force(&mut set, 0, &vec![0.5; 10]);
        force(&mut set, 1, &vec![0.3; 2]);
        force(&mut set, 2, &vec![0.0; 88]);
        assert_eq!(set.total_plays(), 100);

        let t: f64 = 100.0;
        let idx0 = 0.5 + (2.0 * t.ln() / 10.0).sqrt();
        let idx1 = 0.3 + (2.0 * t.ln() / 2.0).sqrt();
        assert_relative_eq!(idx0, 1.4597, epsilon = 1e-4);
        assert_relative_eq!(idx1, 2.4460, epsilon = 1e-4);
        // arm 2's index is 0 + √(2·ln 100/88) ≈ 0.32, so arm 1 wins.
        assert_eq!(set.ucb1_select(), 1);
    }

    #[test]
    fn update_running_mean() {
        let mut set = arms(1);
        set.ucb1_update(0, 0.4).unwrap();
        assert_eq!(set.stats(0).plays, 1);
        assert_relative_eq!(set.stats(0).mean_reward, 0.4, epsilon = 1e-15);

        let mut set = arms(1);
        force(&mut set, 0, &[0.5, 0.5, 0.5, 0.5]);
        set.ucb1_update(0, 1.0).unwrap();
        assert_eq!(set.stats(0).plays, 5);
        assert_relative_eq!(set.stats(0).mean_reward, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn mean_is_order_invariant() {
        let mut a = arms(1);
        force(&mut a, 0, &[0.2, 0.8]);
        let mut b = arms(1);
        force(&mut b, 0, &[0.8, 0.2]);
        assert_relative_eq!(a.stats(0).mean_reward, 0.5, epsilon = 1e-15);
        assert_relative_eq!(b.stats(0).mean_reward, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn reward_contract_enforced() {
        let mut set = arms(2);
        assert!(set.ucb1_update(0, -0.1).is_err());
        assert!(set.ucb1_update(0, f64::NAN).is_err());
        assert!(set.ucb1_update(0, f64::INFINITY).is_err());
        assert!(set.ucb1_update(5, 0.5).is_err());
        assert!(set.ucb1_update(0, 1.5).is_ok());
    }

    #[test]
    fn initialization_covers_every_arm() {
        let mut set = arms(7);
        for _ in 0..7 {
            let idx = set.ucb1_select();
            set.ucb1_update(idx, 0.5).unwrap();
        }
        assert!(set.arms().all(|(_, st)| st.plays >= 1));
    }

    #[test]
    fn selection_is_deterministic() {
        let build = || {
            let mut set = arms(4);
            force(&mut set, 0, &[0.3, 0.4]);
            force(&mut set, 1, &[0.9]);
            force(&mut set, 2, &[0.1, 0.2, 0.3]);
            force(&mut set, 3, &[0.5]);
            set
        };
        assert_eq!(build().ucb1_select(), build().ucb1_select());
    }

    #[test]
    fn epsilon_schedule_values() {
        assert_relative_eq!(epsilon_schedule(0.9, 10), 0.9, epsilon = 1e-15);
        assert_relative_eq!(epsilon_schedule(0.9, 20), 0.81, epsilon = 1e-15);
        assert_relative_eq!(epsilon_schedule(0.9, 0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn epsilon_greedy_exploits_after_decay() {
        let mut set = arms(5);
        force(&mut set, 3, &[0.9, 0.9]);
        force(&mut set, 1, &[0.4]);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let picks: usize = (0..10_000)
            .filter(|i| set.epsilon_greedy_select(10_000 + i, 0.9, &mut rng) == 3)
            .count();
        assert!(picks >= 9_900, "argmax picked only {picks}/10000 times");
    }

    #[test]
    fn epsilon_greedy_explores_early() {
        // At t = 10 the exploration probability is 0.9; across 10⁴ draws the
        // non-argmax arms should be hit roughly 0.9·(4/5) of the time.
        let mut set = arms(5);
        force(&mut set, 0, &[1.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let exploratory: usize = (0..10_000)
            .filter(|_| set.epsilon_greedy_select(10, 0.9, &mut rng) != 0)
            .count();
        let expected = 0.9 * 0.8 * 10_000.0;
        assert!(
            (exploratory as f64 - expected).abs() < 4.0 * (10_000.0_f64 * 0.72 * 0.28).sqrt(),
            "exploration count {exploratory} far from {expected}"
        );
    }

    #[test]
    fn logarithmic_regret_on_two_arm_bernoulli() {
        // Means 0.9 / 0.1; cumulative regret at 10⁵ stays under 60·ln(n) and
        // the 10⁴ → 10⁵ growth ratio stays below 1.6 on a 20-seed average.
        let horizon = 100_000_u64;
        let checkpoint = 10_000_u64;
        let mut regret_at_checkpoint = 0.0;
        let mut regret_at_end = 0.0;
        let seeds = 20;
        for seed in 0..seeds {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let mut set = arms(2);
            let means = [0.9, 0.1];
            let mut regret = 0.0;
            for t in 1..=horizon {
                let idx = set.ucb1_select();
                let reward = if rng.random::<f64>() < means[idx] { 1.0 } else { 0.0 };
                set.ucb1_update(idx, reward).unwrap();
                regret += 0.9 - means[idx];
                if t == checkpoint {
                    regret_at_checkpoint += regret;
                }
            }
            regret_at_end += regret;
        }
        let mean_checkpoint = regret_at_checkpoint / seeds as f64;
        let mean_end = regret_at_end / seeds as f64;
        assert!(
            mean_end <= 60.0 * (horizon as f64).ln(),
            "regret {mean_end} exceeds 60·ln(n) = {}",
            60.0 * (horizon as f64).ln()
        );
        assert!(
            mean_end / mean_checkpoint <= 1.6,
            "regret growth ratio {} exceeds 1.6",
            mean_end / mean_checkpoint
        );
    }
}
