//! The randomized pivot algorithm.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Clustering, EdgeData, GraphClass, Instance, Label};
use crate::lp::LpSolution;
use crate::pairs;
use crate::rng::{self, SplitMix64};
use crate::rounding::probs::check_dims;
use crate::rounding::scheme::RoundingScheme;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotStep {
    pub pivot: usize,
    /// Members of the cluster in ascending order; contains the pivot.
    pub cluster: Vec<usize>,
}

/// Pivots and clusters in the order they were removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotTrace {
    pub steps: Vec<PivotStep>,
}

impl PivotTrace {
    /// Clusters are disjoint, cover `0..n`, and each contains its pivot.
    pub fn is_valid(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for step in &self.steps {
            if !step.cluster.contains(&step.pivot) {
                return false;
            }
            for &u in &step.cluster {
                if u >= n || seen[u] {
                    return false;
                }
                seen[u] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn clustering(&self, n: usize) -> Result<Clustering> {
        let clusters: Vec<Vec<usize>> = self.steps.iter().map(|s| s.cluster.clone()).collect();
        Clustering::from_clusters(n, &clusters)
    }
}

/// Runs the pivot loop: pick a uniform pivot among the remaining vertices
/// (kept in ascending order), then let every other remaining vertex `u`, in
/// ascending order, join with probability `1 - prob(u, pivot)`.
pub(crate) fn run_pivot(n: usize, prob: impl Fn(usize, usize) -> f64, rng: &mut SplitMix64) -> PivotTrace {
    let mut active: Vec<usize> = (0..n).collect();
    let mut trace = PivotTrace::default();
    while !active.is_empty() {
        let w = active[rng.gen_range(0..active.len())];
        let mut cluster = Vec::new();
        let mut rest = Vec::with_capacity(active.len());
        for &u in &active {
            if u == w {
                cluster.push(u);
            } else if rng.gen::<f64>() >= prob(u, w) {
                // joins with probability 1 - p
                cluster.push(u);
            } else {
                rest.push(u);
            }
        }
        trace.steps.push(PivotStep { pivot: w, cluster });
        active = rest;
    }
    trace
}

/// Randomized pivot rounding of a labeled instance. Weighted instances are
/// routed to the coin-flip variant.
pub fn pivot_round(inst: &Instance, x: &LpSolution, s: &RoundingScheme, seed: u64) -> Result<(Clustering, PivotTrace)> {
    if inst.class() == GraphClass::WeightedComplete {
        return pivot_round_weighted_traced(inst, x, s, seed);
    }
    check_dims(inst, x)?;
    s.supports(inst.class())?;
    let n = inst.n();
    let probs: Vec<f64> = pairs::iter(n)
        .zip(inst.edges())
        .map(|((u, v), e)| s.prob(e.label().expect("labeled instance"), x.get(u, v)))
        .collect();
    let mut rng = rng::stream(seed);
    let trace = run_pivot(n, |u, w| probs[pairs::index(n, u, w)], &mut rng);
    Ok((trace.clustering(n)?, trace))
}

/// Coin-flip rounding for weighted instances: each pair draws once, before
/// the pivot loop, whether it behaves as a positive pair (`f+`, with
/// probability `lambda+`) or a negative one (`f-`). Coins come from a stream
/// derived from `seed`; the pivot loop uses `seed` itself, so instances with
/// `lambda` in `{0, 1}` reproduce [`pivot_round`] on the labeled instance.
pub fn pivot_round_weighted(inst: &Instance, x: &LpSolution, s: &RoundingScheme, seed: u64) -> Result<Clustering> {
    pivot_round_weighted_traced(inst, x, s, seed).map(|(c, _)| c)
}

pub fn pivot_round_weighted_traced(
    inst: &Instance,
    x: &LpSolution,
    s: &RoundingScheme,
    seed: u64,
) -> Result<(Clustering, PivotTrace)> {
    if inst.class() != GraphClass::WeightedComplete {
        return Err(Error::InvalidInstance("coin-flip rounding needs a weighted instance".into()));
    }
    check_dims(inst, x)?;
    let n = inst.n();
    let mut coins = rng::stream(rng::derive_seed(seed, 1));
    let probs: Vec<f64> = pairs::iter(n)
        .zip(inst.edges())
        .map(|((u, v), e)| {
            let (plus, _) = e.weights();
            let label = if coins.gen::<f64>() < plus { Label::Plus } else { Label::Minus };
            s.prob(label, x.get(u, v))
        })
        .collect();
    let mut rng = rng::stream(seed);
    let trace = run_pivot(n, |u, w| probs[pairs::index(n, u, w)], &mut rng);
    Ok((trace.clustering(n)?, trace))
}

/// One randomized rounding run for any class.
pub fn round_random(inst: &Instance, x: &LpSolution, s: &RoundingScheme, seed: u64) -> Result<Clustering> {
    pivot_round(inst, x, s, seed).map(|(c, _)| c)
}

/// Labeled complete instance with the same pairs as a weighted instance whose
/// weights are all 0/1, or `None` if some weight is fractional.
pub fn induced_labeled(inst: &Instance) -> Option<Instance> {
    let labels = inst
        .edges()
        .iter()
        .map(|e| match *e {
            EdgeData::Label(l) => Some(l),
            EdgeData::Weight { plus, .. } if plus == 1.0 => Some(Label::Plus),
            EdgeData::Weight { plus, .. } if plus == 0.0 => Some(Label::Minus),
            EdgeData::Weight { .. } => None,
        })
        .collect::<Option<Vec<_>>>()?;
    Instance::complete(inst.n(), labels).ok()
}
