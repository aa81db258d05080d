//! Per-triangle expected cost and LP charge of one pivot step.
//!
//! For a triangle `uvw` the edges sit at positions 0 = `uv`, 1 = `vw`,
//! 2 = `uw`. The edge at position `i` is charged when the vertex opposite to
//! it is the pivot, and the relevant probabilities are those of the other two
//! edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{GraphClass, Label};
use crate::rounding::scheme::RoundingScheme;

const TRIANGLE_TOL: f64 = 1e-12;

/// Probability that the pair `uv` is violated when `w` is the pivot, where
/// `p_u`, `p_v` are the cut probabilities of `uw` and `vw`.
pub fn edge_cost_given_pivot(label: Label, p_u: f64, p_v: f64) -> f64 {
    match label {
        Label::Plus => p_u * (1.0 - p_v) + (1.0 - p_u) * p_v,
        Label::Minus => (1.0 - p_u) * (1.0 - p_v),
        Label::Neutral => 0.0,
    }
}

/// LP mass of `uv` removed when `w` is the pivot.
pub fn edge_lp_given_pivot(label: Label, x: f64, p_u: f64, p_v: f64) -> f64 {
    let removed = 1.0 - p_u * p_v;
    match label {
        Label::Plus => removed * x,
        Label::Minus => removed * (1.0 - x),
        Label::Neutral => 0.0,
    }
}

/// [`edge_cost_given_pivot`] for a pair with weights `(plus, minus)`.
pub fn mixed_edge_cost(plus: f64, minus: f64, p_u: f64, p_v: f64) -> f64 {
    plus * (p_u * (1.0 - p_v) + (1.0 - p_u) * p_v) + minus * (1.0 - p_u) * (1.0 - p_v)
}

/// [`edge_lp_given_pivot`] for a pair with weights `(plus, minus)`.
pub fn mixed_edge_lp(plus: f64, minus: f64, x: f64, p_u: f64, p_v: f64) -> f64 {
    (1.0 - p_u * p_v) * (plus * x + minus * (1.0 - x))
}

/// Unordered multiset of three edge types, stored sorted `+ < - < 0`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TriangleType([Label; 3]);

impl TriangleType {
    pub fn new(a: Label, b: Label, c: Label) -> TriangleType {
        let mut t = [a, b, c];
        t.sort();
        TriangleType(t)
    }

    pub fn labels(&self) -> [Label; 3] {
        self.0
    }

    /// Types that occur in the class: `{+,-}^3` for complete graphs, plus the
    /// types with exactly one neutral edge for k-partite graphs. Triangles
    /// with two neutral edges cannot occur and all-neutral ones cost nothing.
    pub fn admissible(class: GraphClass) -> Vec<TriangleType> {
        use Label::*;
        let mut out = vec![
            TriangleType::new(Plus, Plus, Plus),
            TriangleType::new(Plus, Plus, Minus),
            TriangleType::new(Plus, Minus, Minus),
            TriangleType::new(Minus, Minus, Minus),
        ];
        if class == GraphClass::KPartite {
            out.extend([
                TriangleType::new(Plus, Plus, Neutral),
                TriangleType::new(Plus, Minus, Neutral),
                TriangleType::new(Minus, Minus, Neutral),
            ]);
        }
        out
    }

    /// Distinct assignments of the three types to the three positions.
    pub fn orientations(&self) -> Vec<[Label; 3]> {
        let [a, b, c] = self.0;
        let mut out: Vec<[Label; 3]> = Vec::new();
        for t in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }
}

impl fmt::Display for TriangleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({},{},{})", a.symbol(), b.symbol(), c.symbol())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleCosts {
    pub alg: f64,
    pub lp: f64,
    /// `alpha * lp - alg`.
    pub surplus: f64,
}

pub fn check_triangle(lengths: [f64; 3]) -> Result<()> {
    let [x, y, z] = lengths;
    let in_box = lengths.iter().all(|&l| (-TRIANGLE_TOL..=1.0 + TRIANGLE_TOL).contains(&l));
    let metric = x <= y + z + TRIANGLE_TOL && y <= x + z + TRIANGLE_TOL && z <= x + y + TRIANGLE_TOL;
    if in_box && metric {
        Ok(())
    } else {
        Err(Error::NotATriangle(x, y, z))
    }
}

/// `ALG(uvw)`, `LP(uvw)` and the surplus for given cut probabilities per
/// position; no triangle check.
pub fn triple_costs_with_probs(types: [Label; 3], lengths: [f64; 3], probs: [f64; 3], alpha: f64) -> TripleCosts {
    let (mut alg, mut lp) = (0.0, 0.0);
    for i in 0..3 {
        let (pj, pk) = (probs[(i + 1) % 3], probs[(i + 2) % 3]);
        alg += edge_cost_given_pivot(types[i], pj, pk);
        lp += edge_lp_given_pivot(types[i], lengths[i], pj, pk);
    }
    TripleCosts { alg, lp, surplus: alpha * lp - alg }
}

/// Triple costs of an oriented triangle (`types[i]` is the type of the edge
/// with length `lengths[i]`) under scheme `s`.
pub fn triple_costs(types: [Label; 3], lengths: [f64; 3], s: &RoundingScheme, alpha: f64) -> Result<TripleCosts> {
    check_triangle(lengths)?;
    let mut probs = [0.0; 3];
    for i in 0..3 {
        probs[i] = s.eval(types[i], lengths[i])?;
    }
    Ok(triple_costs_with_probs(types, lengths, probs, alpha))
}

/// Unchecked surplus used by the grid searches.
pub(crate) fn surplus_unchecked(types: [Label; 3], lengths: [f64; 3], s: &RoundingScheme, alpha: f64) -> f64 {
    let probs = [s.prob(types[0], lengths[0]), s.prob(types[1], lengths[1]), s.prob(types[2], lengths[2])];
    triple_costs_with_probs(types, lengths, probs, alpha).surplus
}

/// Surpluses of the eight sign patterns of a weighted triangle; bit `i` of
/// the index set means position `i` is negative.
pub(crate) fn sign_pattern_surpluses(lengths: [f64; 3], s: &RoundingScheme, alpha: f64) -> [f64; 8] {
    let mut out = [0.0; 8];
    for (mask, slot) in out.iter_mut().enumerate() {
        let types = std::array::from_fn(|i| if mask >> i & 1 == 1 { Label::Minus } else { Label::Plus });
        *slot = surplus_unchecked(types, lengths, s, alpha);
    }
    out
}

/// Expectation of the pattern surpluses when position `i` is negative with
/// probability `lambda_minus[i]`, independently.
pub(crate) fn mix_patterns(patterns: &[f64; 8], lambda_minus: [f64; 3]) -> f64 {
    let mut total = 0.0;
    for (mask, &value) in patterns.iter().enumerate() {
        let mut w = 1.0;
        for (i, &m) in lambda_minus.iter().enumerate() {
            w *= if mask >> i & 1 == 1 { m } else { 1.0 - m };
        }
        total += w * value;
    }
    total
}

/// Triple costs of a weighted triangle: each pair is positive with
/// probability `1 - lambda_minus[i]` and uses `f+` then, else `f-`.
pub fn weighted_triple_costs(lambda_minus: [f64; 3], lengths: [f64; 3], s: &RoundingScheme, alpha: f64) -> Result<TripleCosts> {
    check_triangle(lengths)?;
    let mut acc = TripleCosts { alg: 0.0, lp: 0.0, surplus: 0.0 };
    for mask in 0..8usize {
        let mut w = 1.0;
        let mut types = [Label::Plus; 3];
        for i in 0..3 {
            if mask >> i & 1 == 1 {
                w *= lambda_minus[i];
                types[i] = Label::Minus;
            } else {
                w *= 1.0 - lambda_minus[i];
            }
        }
        let t = triple_costs(types, lengths, s, alpha)?;
        acc.alg += w * t.alg;
        acc.lp += w * t.lp;
        acc.surplus += w * t.surplus;
    }
    Ok(acc)
}
