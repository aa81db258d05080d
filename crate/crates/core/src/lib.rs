//! Correlation clustering by LP rounding.
//!
//! The crate solves the standard metric LP relaxation of correlation
//! clustering, rounds it with a pivot algorithm driven by per-edge-type
//! rounding functions, derandomizes that rounding, and numerically certifies
//! the approximation factor of a rounding scheme by checking the per-triangle
//! surplus `alpha * LP(uvw) - ALG(uvw)` over tight triangles and corner cases.
//!
//! Modules:
//!
//! * [`instance`]: complete, complete k-partite and weighted complete instances,
//!   clusterings, generators and the weighted-to-unweighted blowup.
//! * [`format`]: edge-list and JSON readers/writers.
//! * [`lp`]: the relaxation, a dense simplex and lazy triangle separation.
//! * [`rounding`]: rounding schemes, randomized/derandomized pivot rounding.
//! * [`certify`]: triple-based analysis and grid certification.
//! * [`oracle`]: exhaustive optimum and exact expectations for small inputs.

pub mod certify;
pub mod error;
pub mod format;
pub mod instance;
pub mod lp;
pub mod oracle;
pub mod pairs;
pub mod rng;
pub mod rounding;

pub use error::{Error, Result};
pub use instance::{Clustering, EdgeData, GraphClass, Instance, Label};
pub use lp::{LpSolution, LpStats};
pub use rounding::scheme::RoundingScheme;
