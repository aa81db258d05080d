//! Repeated randomized rounding with per-trial seeds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{clustering_cost, Instance};
use crate::lp::{lp_objective, LpSolution};
use crate::rng::derive_seed;
use crate::rounding::pivot::round_random;
use crate::rounding::scheme::RoundingScheme;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub trials: usize,
    pub seed: u64,
    pub mean: f64,
    pub stddev: f64,
    /// Standard error of the mean, `stddev / sqrt(trials)`.
    pub sem: f64,
    pub min: f64,
    pub max: f64,
    pub lp: f64,
    /// `mean / lp`; 1 when both are zero, infinite when only `lp` is.
    pub ratio: f64,
}

/// Trial `t` uses seed `derive_seed(seed, t)`.
pub fn monte_carlo_ratio(
    inst: &Instance,
    x: &LpSolution,
    s: &RoundingScheme,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    monte_carlo_ratio_jobs(inst, x, s, trials, seed, 1)
}

/// As [`monte_carlo_ratio`] with trials spread over `jobs` threads. Costs are
/// reduced in trial order, so the report does not depend on `jobs`.
pub fn monte_carlo_ratio_jobs(
    inst: &Instance,
    x: &LpSolution,
    s: &RoundingScheme,
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<MonteCarloReport> {
    if trials == 0 {
        return Err(Error::InvalidInstance("at least one trial is required".into()));
    }
    let trial = |t: usize| -> Result<f64> {
        let c = round_random(inst, x, s, derive_seed(seed, t as u64))?;
        clustering_cost(inst, &c)
    };
    let costs: Vec<f64> = if jobs <= 1 {
        (0..trials).map(trial).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
        pool.install(|| (0..trials).into_par_iter().map(trial).collect::<Result<_>>())?
    };

    // Welford's streaming mean and variance.
    let (mut mean, mut m2) = (0.0, 0.0);
    for (i, &c) in costs.iter().enumerate() {
        let delta = c - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (c - mean);
    }
    let stddev = if trials > 1 { (m2 / (trials - 1) as f64).sqrt() } else { 0.0 };
    let lp = lp_objective(inst, x)?;
    let ratio = if lp > 0.0 {
        mean / lp
    } else if mean == 0.0 {
        1.0
    } else {
        f64::INFINITY
    };
    Ok(MonteCarloReport {
        trials,
        seed,
        mean,
        stddev,
        sem: stddev / (trials as f64).sqrt(),
        min: costs.iter().copied().fold(f64::INFINITY, f64::min),
        max: costs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        lp,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_complete_random, Label};
    use crate::rounding::pivot::pivot_round;

    #[test]
    fn all_plus_has_zero_mean() {
        let inst = Instance::complete(5, vec![Label::Plus; 10]).unwrap();
        let r = monte_carlo_ratio(&inst, &LpSolution::zeros(5), &RoundingScheme::complete206(), 50, 1).unwrap();
        assert_eq!(r.mean, 0.0);
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn single_trial_matches_pivot_round() {
        let inst = gen_complete_random(7, 0.5, 4);
        let x = LpSolution::constant(7, 0.4);
        let s = RoundingScheme::complete206();
        let r = monte_carlo_ratio(&inst, &x, &s, 1, 99).unwrap();
        let (c, _) = pivot_round(&inst, &x, &s, derive_seed(99, 0)).unwrap();
        assert_eq!(r.mean, clustering_cost(&inst, &c).unwrap());
        assert_eq!(r.min, r.max);
        assert_eq!(r.stddev, 0.0);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let inst = gen_complete_random(8, 0.5, 2);
        let x = LpSolution::constant(8, 0.3);
        let s = RoundingScheme::acn_linear();
        let a = monte_carlo_ratio_jobs(&inst, &x, &s, 200, 5, 1).unwrap();
        let b = monte_carlo_ratio_jobs(&inst, &x, &s, 200, 5, 4).unwrap();
        assert_eq!(a, b);
        assert!(monte_carlo_ratio(&inst, &x, &s, 0, 5).is_err());
    }
}
