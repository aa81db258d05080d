//! Triple-based analysis of rounding schemes.
//!
//! [`triple`] evaluates the expected cost `ALG(uvw)` and LP charge
//! `LP(uvw)` of a pivot step restricted to one triangle. [`grid`] and
//! [`weighted`] certify a ratio by checking `alpha * LP - ALG >= 0` over
//! tight triangles and corner cases, [`bounds`] gives the necessary
//! conditions coming from single triangle families, and [`step`] checks the
//! summed inequality on a concrete instance.

pub mod bounds;
pub mod grid;
pub mod step;
pub mod triple;
pub mod weighted;

pub use bounds::{bound_curves, lower_bound_check, lower_bound_scan, Bound, BoundCurves, LowerBoundCheck};
pub use grid::{
    certify, certify_with, CertificateReport, CertifyOptions, Mode, TypeResult, Verdict, Witness, DEFAULT_GRID_STEP,
    DEFAULT_TOL,
};
pub use step::{pairwise_step_expectations, step_inequality_check, StepCheck};
pub use triple::{
    edge_cost_given_pivot, edge_lp_given_pivot, triple_costs, triple_costs_with_probs, weighted_triple_costs,
    TriangleType, TripleCosts,
};
pub use weighted::{certify_weighted_ti, certify_weighted_ti_with};
