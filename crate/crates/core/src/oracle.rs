//! Exact answers for small instances: optimum clustering by exhaustive
//! search and exact expectations of one pivot step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{clustering_cost, Clustering, Instance};
use crate::lp::{solve_relaxation, LpSolution, FEAS_TOL};
use crate::rounding::probs::PairProbs;
use crate::rounding::scheme::RoundingScheme;

/// Default limit on the number of vertices for [`brute_force_opt`].
pub const DEFAULT_MAX_BRUTE_N: usize = 13;
/// The environment override is refused above this.
pub const HARD_MAX_BRUTE_N: usize = 24;
pub const MAX_EXPECTATION_N: usize = 12;
pub const MAX_BRUTE_ENV: &str = "CC_MAX_BRUTE_N";

/// Enumerates the set partitions of `0..n` as restricted growth strings:
/// `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
#[derive(Clone, Debug)]
pub struct PartitionIterator {
    rgs: Vec<usize>,
    /// `prefix_max[i] = max(rgs[..=i])`.
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIterator {
    pub fn new(n: usize) -> PartitionIterator {
        PartitionIterator { rgs: vec![0; n], prefix_max: vec![0; n], started: false, done: false }
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.rgs.clone());
        }
        let n = self.rgs.len();
        // Rightmost position that can still grow.
        let Some(i) = (1..n).rev().find(|&i| self.rgs[i] <= self.prefix_max[i - 1]) else {
            self.done = true;
            return None;
        };
        self.rgs[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
        for j in i + 1..n {
            self.rgs[j] = 0;
            self.prefix_max[j] = self.prefix_max[i];
        }
        Some(self.rgs.clone())
    }
}

/// The vertex cap in effect: `CC_MAX_BRUTE_N` if set to a valid value not
/// above [`HARD_MAX_BRUTE_N`], else [`DEFAULT_MAX_BRUTE_N`].
pub fn max_brute_n() -> Result<usize> {
    match std::env::var(MAX_BRUTE_ENV) {
        Err(_) => Ok(DEFAULT_MAX_BRUTE_N),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap <= HARD_MAX_BRUTE_N => Ok(cap),
            _ => Err(Error::InvalidInstance(format!(
                "{MAX_BRUTE_ENV} must be an integer at most {HARD_MAX_BRUTE_N}, got `{v}`"
            ))),
        },
    }
}

/// Minimum-cost clustering and its cost; among optima, the first in
/// restricted-growth-string order.
pub fn brute_force_opt(inst: &Instance) -> Result<(Clustering, f64)> {
    brute_force_opt_capped(inst, max_brute_n()?)
}

/// As [`brute_force_opt`] with an explicit vertex cap.
pub fn brute_force_opt_capped(inst: &Instance, cap: usize) -> Result<(Clustering, f64)> {
    let n = inst.n();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok((Clustering::from_assignment(&[]), 0.0));
    }
    let mut plus = vec![0.0; n * n];
    let mut minus = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                (plus[u * n + v], minus[u * n + v]) = inst.weights(u, v);
            }
        }
    }
    // Any clustering bounds the optimum; accept ties so that the first
    // optimum in enumeration order is the one reported.
    let seed = clustering_cost(inst, &Clustering::single(n))?.min(clustering_cost(inst, &Clustering::singletons(n))?);
    let mut search = Search {
        n,
        plus,
        minus,
        rgs: vec![0; n],
        // base[u]: positive weight from u to assigned vertices;
        // delta[u * n + c]: sum over assigned j in cluster c of (minus - plus).
        base: vec![0.0; n],
        delta: vec![0.0; n * n],
        best_cost: seed + 1e-6,
        best: None,
    };
    search.place(0, 0, 0.0);
    let rgs = search.best.expect("some clustering is within the seed bound");
    let c = Clustering::from_assignment(&rgs);
    let cost = clustering_cost(inst, &c)?;
    Ok((c, cost))
}

struct Search {
    n: usize,
    plus: Vec<f64>,
    minus: Vec<f64>,
    rgs: Vec<usize>,
    base: Vec<f64>,
    delta: Vec<f64>,
    best_cost: f64,
    best: Option<Vec<usize>>,
}

impl Search {
    fn update(&mut self, i: usize, c: usize, sign: f64) {
        let n = self.n;
        for u in i + 1..n {
            let (p, m) = (self.plus[u * n + i], self.minus[u * n + i]);
            self.base[u] += sign * p;
            self.delta[u * n + c] += sign * (m - p);
        }
    }

    /// Assigns vertices `i..` given `k` clusters used and accumulated cost.
    fn place(&mut self, i: usize, k: usize, cost: f64) {
        let n = self.n;
        if i == n {
            if cost < self.best_cost - 1e-12 || self.best.is_none() {
                self.best_cost = cost;
                self.best = Some(self.rgs.clone());
            }
            return;
        }
        // Each unassigned vertex pays at least its cheapest option against
        // the assigned ones.
        let mut bound = cost;
        for u in i..n {
            let cheapest = (0..k).map(|c| self.delta[u * n + c]).fold(0.0, f64::min);
            bound += self.base[u] + cheapest;
        }
        if bound >= self.best_cost - 1e-12 {
            return;
        }
        for c in 0..=k {
            let add = self.base[i] + if c < k { self.delta[i * n + c] } else { 0.0 };
            self.rgs[i] = c;
            self.update(i, c, 1.0);
            self.place(i + 1, k.max(c + 1), cost + add);
            self.update(i, c, -1.0);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub opt: f64,
    pub lp: f64,
    /// `opt / lp`, reported as 1 when both vanish.
    pub ratio: f64,
    pub argmin: Clustering,
}

pub fn integrality_ratio(inst: &Instance) -> Result<IntegralityReport> {
    let (argmin, opt) = brute_force_opt(inst)?;
    let (_, stats) = solve_relaxation(inst, FEAS_TOL)?;
    let lp = stats.objective;
    let ratio = if lp.abs() <= 1e-12 {
        if opt.abs() <= 1e-12 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        opt / lp
    };
    Ok(IntegralityReport { opt, lp, ratio, argmin })
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepExpectation {
    pub e_alg_0: f64,
    pub e_lp_0: f64,
}

/// Expected cost and LP mass removed by the first pivot step, by
/// enumerating the pivot and every join/leave outcome of the other vertices.
/// Weighted instances use the mean cut probability of each pair, which is
/// exact because the pairs' coins are independent.
pub fn exact_expected_step_cost(inst: &Instance, x: &LpSolution, s: &RoundingScheme) -> Result<StepExpectation> {
    let n = inst.n();
    if n > MAX_EXPECTATION_N {
        return Err(Error::TooLarge { n, cap: MAX_EXPECTATION_N });
    }
    let pr = PairProbs::new(inst, x, s)?;
    let (mut e_alg, mut e_lp) = (0.0, 0.0);
    let mut inside = vec![false; n];
    for w in 0..n {
        let others: Vec<usize> = (0..n).filter(|&u| u != w).collect();
        for mask in 0u64..(1u64 << others.len()) {
            let mut prob = 1.0 / n as f64;
            inside.iter_mut().for_each(|b| *b = false);
            inside[w] = true;
            for (bit, &u) in others.iter().enumerate() {
                let p = pr.p(u, w);
                if mask >> bit & 1 == 1 {
                    inside[u] = true;
                    prob *= 1.0 - p;
                } else {
                    prob *= p;
                }
            }
            if prob == 0.0 {
                continue;
            }
            let (mut alg, mut lpv) = (0.0, 0.0);
            for u in 0..n {
                for v in u + 1..n {
                    if !(inside[u] || inside[v]) {
                        continue;
                    }
                    let (plus, minus) = inst.weights(u, v);
                    alg += if inside[u] && inside[v] { minus } else { plus };
                    let xv = x.get(u, v);
                    lpv += plus * xv + minus * (1.0 - xv);
                }
            }
            e_alg += prob * alg;
            e_lp += prob * lpv;
        }
    }
    Ok(StepExpectation { e_alg_0: e_alg, e_lp_0: e_lp })
}
