//! Per-pair cut probabilities derived from an LP point and a scheme.

use crate::error::{Error, Result};
use crate::instance::{EdgeData, GraphClass, Instance, Label};
use crate::lp::LpSolution;
use crate::pairs;
use crate::rounding::scheme::RoundingScheme;

/// Cut probabilities of every pair. For weighted instances `p_uv` is itself
/// random (`f+` with probability `lambda+`, else `f-`); the table then holds
/// its mean and `E[2 p (1 - p)]`, which is what self-loop terms need.
#[derive(Clone, Debug)]
pub struct PairProbs {
    n: usize,
    mean: Vec<f64>,
    spread: Vec<f64>,
    /// `(f+(x), f-(x))` per pair, used by the weighted coin flips.
    branches: Vec<(f64, f64)>,
}

pub(crate) fn check_dims(inst: &Instance, x: &LpSolution) -> Result<()> {
    if x.n() != inst.n() {
        return Err(Error::SolutionMismatch { expected: inst.n(), got: x.n() });
    }
    Ok(())
}

impl PairProbs {
    pub fn new(inst: &Instance, x: &LpSolution, s: &RoundingScheme) -> Result<PairProbs> {
        check_dims(inst, x)?;
        s.supports(inst.class())?;
        let n = inst.n();
        let m = pairs::num_pairs(n);
        let mut mean = Vec::with_capacity(m);
        let mut spread = Vec::with_capacity(m);
        let mut branches = Vec::with_capacity(m);
        for ((u, v), e) in pairs::iter(n).zip(inst.edges()) {
            let xv = x.get(u, v);
            let (fp, fm) = (s.prob(Label::Plus, xv), s.prob(Label::Minus, xv));
            let (p, sp) = match *e {
                EdgeData::Label(l) => {
                    let p = s.prob(l, xv);
                    (p, 2.0 * p * (1.0 - p))
                }
                EdgeData::Weight { plus, minus } => (
                    plus * fp + minus * fm,
                    plus * 2.0 * fp * (1.0 - fp) + minus * 2.0 * fm * (1.0 - fm),
                ),
            };
            mean.push(p);
            spread.push(sp);
            branches.push((fp, fm));
        }
        Ok(PairProbs { n, mean, spread, branches })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `E[p_uw]`, zero on the diagonal.
    pub fn p(&self, u: usize, w: usize) -> f64 {
        if u == w {
            0.0
        } else {
            self.mean[pairs::index(self.n, u, w)]
        }
    }

    /// `E[2 p_uw (1 - p_uw)]`, the self-loop cost of `u` under pivot `w`.
    pub fn spread(&self, u: usize, w: usize) -> f64 {
        if u == w {
            0.0
        } else {
            self.spread[pairs::index(self.n, u, w)]
        }
    }

    pub fn branches(&self, u: usize, w: usize) -> (f64, f64) {
        self.branches[pairs::index(self.n, u, w)]
    }
}

/// Weight of the self-loop cost term: `lambda+` of the class's self-loop.
pub(crate) fn self_loop_weight(class: GraphClass) -> f64 {
    class.self_loop().weights().0
}
