//! Deterministic pivot rounding by the method of conditional expectations.
//!
//! At each step the surplus
//! `F = sum over pivots w and ordered pairs u != v of (alpha * e.lp_w(u,v) - e.cost_w(u,v))`
//! minus the self-loop costs `e.cost_w(u,u)` is a third of the sum of
//! `alpha * LP(uvw) - ALG(uvw)` over all ordered triples of remaining
//! vertices. `F` is affine in each pair's mean probability and in its
//! self-loop term `E[2p(1-p)]`, and convex in `p` once that term is tied to
//! `p`, so rounding every `p` to whichever of 0 or 1 gives the larger `F`
//! never decreases it. With all `p` integral, the pivot with the largest
//! share of `F` removes a cluster whose cost is at most `alpha` times the LP
//! mass it removes.

use serde::{Deserialize, Serialize};

use crate::certify::triple::{mixed_edge_cost, mixed_edge_lp};
use crate::error::Result;
use crate::instance::{clustering_cost, Clustering, Instance};
use crate::lp::{lp_objective, LpSolution};
use crate::rounding::pivot::{PivotStep, PivotTrace};
use crate::rounding::probs::{self_loop_weight, PairProbs};
use crate::rounding::scheme::RoundingScheme;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerandOutcome {
    pub clustering: Clustering,
    pub trace: PivotTrace,
    pub cost: f64,
    pub lp: f64,
    /// Per step: the surplus `F` before any decision, then after each one.
    pub surplus_trace: Vec<Vec<f64>>,
}

pub fn derandomize_round(inst: &Instance, x: &LpSolution, s: &RoundingScheme, alpha: f64) -> Result<Clustering> {
    derandomize_round_traced(inst, x, s, alpha).map(|o| o.clustering)
}

/// State of one step restricted to the remaining vertices, indexed locally.
struct Step {
    m: usize,
    alpha: f64,
    self_w: f64,
    plus: Vec<f64>,
    minus: Vec<f64>,
    len: Vec<f64>,
    p: Vec<f64>,
    spread: Vec<f64>,
}

impl Step {
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    /// `alpha * e.lp_w(u,v) - e.cost_w(u,v)` for `u != v`.
    fn term(&self, w: usize, u: usize, v: usize) -> f64 {
        let (uv, pu, pv) = (self.at(u, v), self.p[self.at(u, w)], self.p[self.at(v, w)]);
        self.alpha * mixed_edge_lp(self.plus[uv], self.minus[uv], self.len[uv], pu, pv)
            - mixed_edge_cost(self.plus[uv], self.minus[uv], pu, pv)
    }

    fn total(&self) -> f64 {
        let mut f = 0.0;
        for w in 0..self.m {
            for u in 0..self.m {
                f -= self.self_w * self.spread[self.at(u, w)];
                for v in 0..self.m {
                    if u != v {
                        f += self.term(w, u, v);
                    }
                }
            }
        }
        f
    }

    /// The part of `F` that depends on the pair `{a, b}`.
    fn local(&self, a: usize, b: usize) -> f64 {
        let mut f = -2.0 * self.self_w * self.spread[self.at(a, b)];
        for y in 0..self.m {
            if y != a {
                f += 2.0 * self.term(b, a, y);
            }
            if y != b {
                f += 2.0 * self.term(a, b, y);
            }
        }
        f
    }

    fn set(&mut self, a: usize, b: usize, p: f64, spread: f64) {
        let (ab, ba) = (self.at(a, b), self.at(b, a));
        self.p[ab] = p;
        self.p[ba] = p;
        self.spread[ab] = spread;
        self.spread[ba] = spread;
    }

    /// Sets `{a, b}` to the better of two states (the first wins ties) and
    /// returns the change in `F`.
    fn choose(&mut self, a: usize, b: usize, first: (f64, f64), second: (f64, f64)) -> f64 {
        let before = self.local(a, b);
        self.set(a, b, first.0, first.1);
        let f1 = self.local(a, b);
        self.set(a, b, second.0, second.1);
        let f2 = self.local(a, b);
        if f1 >= f2 {
            self.set(a, b, first.0, first.1);
            f1 - before
        } else {
            f2 - before
        }
    }
}

pub fn derandomize_round_traced(
    inst: &Instance,
    x: &LpSolution,
    s: &RoundingScheme,
    alpha: f64,
) -> Result<DerandOutcome> {
    let probs = PairProbs::new(inst, x, s)?;
    let weighted = inst.class() == crate::instance::GraphClass::WeightedComplete;
    let self_w = self_loop_weight(inst.class());
    let mut active: Vec<usize> = (0..inst.n()).collect();
    let mut trace = PivotTrace::default();
    let mut surplus_trace = Vec::new();

    while !active.is_empty() {
        let m = active.len();
        let mut st = Step {
            m,
            alpha,
            self_w,
            plus: vec![0.0; m * m],
            minus: vec![0.0; m * m],
            len: vec![0.0; m * m],
            p: vec![0.0; m * m],
            spread: vec![0.0; m * m],
        };
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let (u, v) = (active[i], active[j]);
                    let k = st.at(i, j);
                    (st.plus[k], st.minus[k]) = inst.weights(u, v);
                    st.len[k] = x.get(u, v);
                    st.p[k] = probs.p(u, v);
                    st.spread[k] = probs.spread(u, v);
                }
            }
        }

        let mut f = st.total();
        let mut history = vec![f];
        for a in 0..m {
            for b in a + 1..m {
                if weighted {
                    // Resolve the coin first, toward the + branch on ties.
                    let (fp, fm) = probs.branches(active[a], active[b]);
                    let plus = (fp, 2.0 * fp * (1.0 - fp));
                    let minus = (fm, 2.0 * fm * (1.0 - fm));
                    f += st.choose(a, b, plus, minus);
                    history.push(f);
                }
                f += st.choose(a, b, (0.0, 0.0), (1.0, 0.0));
                history.push(f);
            }
        }
        surplus_trace.push(history);

        let mut best = (0, f64::NEG_INFINITY);
        for w in 0..m {
            let mut share = 0.0;
            for u in 0..m {
                for v in u + 1..m {
                    share += st.term(w, u, v);
                }
            }
            if share > best.1 {
                best = (w, share);
            }
        }
        let w = best.0;
        let mut cluster = Vec::new();
        let mut rest = Vec::new();
        for (i, &u) in active.iter().enumerate() {
            if i == w || st.p[st.at(i, w)] == 0.0 {
                cluster.push(u);
            } else {
                rest.push(u);
            }
        }
        trace.steps.push(PivotStep { pivot: active[w], cluster });
        active = rest;
    }

    let clustering = trace.clustering(inst.n())?;
    Ok(DerandOutcome {
        cost: clustering_cost(inst, &clustering)?,
        lp: lp_objective(inst, x)?,
        clustering,
        trace,
        surplus_trace,
    })
}
