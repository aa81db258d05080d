//! Exact check of the expected-cost inequality for the first pivot step of
//! a concrete instance.

use serde::{Deserialize, Serialize};

use crate::certify::triple::{mixed_edge_cost, mixed_edge_lp};
use crate::error::Result;
use crate::instance::Instance;
use crate::lp::LpSolution;
use crate::rounding::probs::PairProbs;
use crate::rounding::scheme::RoundingScheme;

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepCheck {
    /// `sum of ALG(uvw) / (6n)` over all ordered triples, self-loops included.
    pub lhs: f64,
    /// `alpha * sum of LP(uvw) / (6n)`.
    pub rhs: f64,
    pub holds: bool,
}

/// `e.cost_w(u, v)` including the self-loop case `u == v`.
fn cost(inst: &Instance, pr: &PairProbs, w: usize, u: usize, v: usize) -> f64 {
    let (plus, minus) = inst.weights(u, v);
    if u == v {
        // Self-loops are positive or neutral: cost 2 p (1 - p) times lambda+.
        plus * pr.spread(u, w)
    } else {
        mixed_edge_cost(plus, minus, pr.p(u, w), pr.p(v, w))
    }
}

fn lp(inst: &Instance, x: &LpSolution, pr: &PairProbs, w: usize, u: usize, v: usize) -> f64 {
    if u == v {
        return 0.0;
    }
    let (plus, minus) = inst.weights(u, v);
    mixed_edge_lp(plus, minus, x.get(u, v), pr.p(u, w), pr.p(v, w))
}

pub fn step_inequality_check(inst: &Instance, x: &LpSolution, s: &RoundingScheme, alpha: f64) -> Result<StepCheck> {
    let pr = PairProbs::new(inst, x, s)?;
    let n = inst.n();
    let (mut alg, mut lpv) = (0.0, 0.0);
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                alg += cost(inst, &pr, w, u, v) + cost(inst, &pr, v, w, u) + cost(inst, &pr, u, v, w);
                lpv += lp(inst, x, &pr, w, u, v) + lp(inst, x, &pr, v, w, u) + lp(inst, x, &pr, u, v, w);
            }
        }
    }
    let scale = if n == 0 { 0.0 } else { 1.0 / (6.0 * n as f64) };
    let (lhs, rhs) = (alg * scale, alpha * lpv * scale);
    Ok(StepCheck { lhs, rhs, holds: lhs <= rhs + 1e-12 * (1.0 + rhs.abs()) })
}

/// `E[ALG_0]` and `E[LP_0]` from the pairwise formulas
/// `(1/n) sum_w sum_{u<v} e.cost_w(u,v)` and the same for `e.lp`.
pub fn pairwise_step_expectations(inst: &Instance, x: &LpSolution, s: &RoundingScheme) -> Result<(f64, f64)> {
    let pr = PairProbs::new(inst, x, s)?;
    let n = inst.n();
    let (mut alg, mut lpv) = (0.0, 0.0);
    for w in 0..n {
        for u in 0..n {
            for v in u + 1..n {
                alg += cost(inst, &pr, w, u, v);
                lpv += lp(inst, x, &pr, w, u, v);
            }
        }
    }
    let n = n.max(1) as f64;
    Ok((alg / n, lpv / n))
}
