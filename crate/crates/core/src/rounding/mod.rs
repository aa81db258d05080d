//! Rounding schemes and the pivot algorithm built on them.
//!
//! A scheme maps the LP length `x_uw` of a pair to the probability `p_uw`
//! that `u` is cut away from pivot `w`. [`pivot::pivot_round`] is the
//! randomized algorithm, [`derand::derandomize_round`] its deterministic
//! counterpart, and [`montecarlo::monte_carlo_ratio`] estimates the expected
//! cost over many seeds.

pub mod derand;
pub mod montecarlo;
pub mod pivot;
pub mod probs;
pub mod scheme;

pub use derand::{derandomize_round, derandomize_round_traced, DerandOutcome};
pub use montecarlo::{monte_carlo_ratio, monte_carlo_ratio_jobs, MonteCarloReport};
pub use pivot::{pivot_round, pivot_round_weighted, round_random, PivotStep, PivotTrace};
pub use probs::PairProbs;
pub use scheme::{Eligibility, Piece, PieceKind, PiecewiseFn, RoundingScheme};

use crate::error::Result;
use crate::instance::Label;

/// Probability of cutting a pair of type `label` at LP length `x`.
pub fn eval_scheme(s: &RoundingScheme, label: Label, x: f64) -> Result<f64> {
    s.eval(label, x)
}
