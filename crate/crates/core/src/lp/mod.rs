//! The metric LP relaxation
//!
//! ```text
//! min  sum_{uv} lambda+_uv x_uv + lambda-_uv (1 - x_uv)
//! s.t. x_uw <= x_uv + x_vw     for all u, v, w
//!      0 <= x_uv <= 1
//! ```
//!
//! solved by a cutting-plane loop: start from the box, solve with the dense
//! simplex, add the most violated triangle inequalities, repeat until the
//! separation oracle finds nothing above the feasibility tolerance.

mod simplex;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::pairs;

/// Triangle-inequality tolerance of a returned solution.
pub const FEAS_TOL: f64 = 1e-6;
const MAX_ROUNDS: usize = 10_000;
const MAX_SIMPLEX_ITER: usize = 5_000_000;

/// Symmetric pairwise distances with zero diagonal, one entry per pair.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    n: usize,
    x: Vec<f64>,
}

impl LpSolution {
    pub fn zeros(n: usize) -> LpSolution {
        LpSolution { n, x: vec![0.0; pairs::num_pairs(n)] }
    }

    pub fn constant(n: usize, value: f64) -> LpSolution {
        LpSolution { n, x: vec![value; pairs::num_pairs(n)] }
    }

    /// Values in pair order.
    pub fn from_pairs(n: usize, x: Vec<f64>) -> Result<LpSolution> {
        if x.len() != pairs::num_pairs(n) {
            return Err(Error::InvalidInstance(format!(
                "LP solution for n = {n} needs {} values, got {}",
                pairs::num_pairs(n),
                x.len()
            )));
        }
        Ok(LpSolution { n, x })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        if u == v {
            0.0
        } else {
            self.x[pairs::index(self.n, u, v)]
        }
    }

    pub fn set(&mut self, u: usize, v: usize, value: f64) {
        let k = pairs::index(self.n, u, v);
        self.x[k] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    /// Full symmetric matrix, row-major.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|u| (0..self.n).map(|v| self.get(u, v)).collect()).collect()
    }

    /// The 0/1 multicut metric of a clustering.
    pub fn from_clustering(c: &crate::instance::Clustering) -> LpSolution {
        let n = c.n();
        LpSolution {
            n,
            x: pairs::iter(n).map(|(u, v)| if c.together(u, v) { 0.0 } else { 1.0 }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpStats {
    pub objective: f64,
    /// Simplex pivots over all rounds.
    pub iterations: usize,
    /// Triangle inequalities added to the working relaxation.
    pub constraints_generated: usize,
    pub separation_rounds: usize,
    /// Optimum of the working relaxation after each round.
    pub round_objectives: Vec<f64>,
    /// Final working set of triangle inequalities.
    pub active_triangles: Vec<Triangle>,
}

/// The inequality `x_uw <= x_uv + x_vw`: long side `{u, w}` with `u < w`,
/// apex `v`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Violation {
    pub triangle: Triangle,
    /// `x_uw - x_uv - x_vw`.
    pub amount: f64,
}

/// Objective value of `x`; neutral pairs contribute nothing.
pub fn lp_objective(inst: &Instance, x: &LpSolution) -> Result<f64> {
    if x.n() != inst.n() {
        return Err(Error::SolutionMismatch { expected: inst.n(), got: x.n() });
    }
    Ok(inst
        .edges()
        .iter()
        .zip(x.values())
        .map(|(e, &xv)| {
            let (plus, minus) = e.weights();
            plus * xv + minus * (1.0 - xv)
        })
        .sum())
}

/// All triangle inequalities violated by more than `tol`, most violated
/// first (ties in lexicographic triangle order).
pub fn separate_triangle_violations(x: &LpSolution, tol: f64) -> Vec<Violation> {
    let n = x.n();
    let mut out = Vec::new();
    for (u, w) in pairs::iter(n) {
        let long = x.get(u, w);
        for v in 0..n {
            if v == u || v == w {
                continue;
            }
            let amount = long - x.get(u, v) - x.get(v, w);
            if amount > tol {
                out.push(Violation { triangle: Triangle { u, v, w }, amount });
            }
        }
    }
    out.sort_by(|a, b| b.amount.total_cmp(&a.amount).then(a.triangle.cmp(&b.triangle)));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    /// Largest distance of any entry outside `[0, 1]`.
    pub max_box: f64,
    /// Largest `x_uw - x_uv - x_vw` (0 when none is positive).
    pub max_triangle: f64,
    pub worst_triangle: Option<Triangle>,
}

impl ValidationReport {
    pub fn feasible(&self, tol: f64) -> bool {
        self.max_box <= tol && self.max_triangle <= tol
    }
}

/// Box and triangle-inequality check. The zero diagonal and symmetry hold
/// by construction of [`LpSolution`].
pub fn validate_solution(x: &LpSolution, _tol: f64) -> ValidationReport {
    let max_box = x
        .values()
        .iter()
        .map(|&v| (-v).max(v - 1.0).max(0.0))
        .fold(0.0, f64::max);
    let worst = separate_triangle_violations(x, 0.0).into_iter().next();
    ValidationReport {
        max_box,
        max_triangle: worst.map_or(0.0, |w| w.amount),
        worst_triangle: worst.map(|w| w.triangle),
    }
}

/// Solves the relaxation to within `tol` (clamped to at most [`FEAS_TOL`]).
pub fn solve_relaxation(inst: &Instance, tol: f64) -> Result<(LpSolution, LpStats)> {
    let n = inst.n();
    let sep_tol = tol.min(FEAS_TOL);
    if n <= 2 {
        return Ok(closed_form(inst));
    }
    let mut active: Vec<Triangle> = Vec::new();
    let mut seen: HashSet<Triangle> = HashSet::new();
    let per_round = 5 * n;

    // Warm start: seed the working set from the label-consistent integral point.
    let mut start = LpSolution::zeros(n);
    for ((u, v), e) in pairs::iter(n).zip(inst.edges()) {
        let (plus, minus) = e.weights();
        let value = if plus == 0.0 && minus == 0.0 {
            0.5
        } else if plus >= minus {
            0.0
        } else {
            1.0
        };
        start.set(u, v, value);
    }
    for viol in separate_triangle_violations(&start, sep_tol).into_iter().take(per_round) {
        if seen.insert(viol.triangle) {
            active.push(viol.triangle);
        }
    }

    let mut iterations = 0;
    let mut round_objectives = Vec::new();
    for _ in 0..MAX_ROUNDS {
        let (x, objective, iters) = solve_working_set(inst, &active)?;
        iterations += iters;
        round_objectives.push(objective);
        let violations = separate_triangle_violations(&x, sep_tol);
        if violations.is_empty() {
            let stats = LpStats {
                objective,
                iterations,
                constraints_generated: active.len(),
                separation_rounds: round_objectives.len(),
                round_objectives,
                active_triangles: active,
            };
            return Ok((x, stats));
        }
        let mut added = 0;
        for viol in violations {
            if added == per_round {
                break;
            }
            if seen.insert(viol.triangle) {
                active.push(viol.triangle);
                added += 1;
            }
        }
        if added == 0 {
            return Err(Error::Numerical(
                "separation keeps returning inequalities already in the working set".into(),
            ));
        }
    }
    Err(Error::IterationCap(MAX_ROUNDS))
}

/// Optimum of the relaxation restricted to the box and the given triangle
/// inequalities. Returns the solution, its objective and the pivot count.
pub fn solve_working_set(inst: &Instance, triangles: &[Triangle]) -> Result<(LpSolution, f64, usize)> {
    let n = inst.n();
    let np = pairs::num_pairs(n);
    let mut constant = 0.0;
    let c: Vec<f64> = inst
        .edges()
        .iter()
        .map(|e| {
            let (plus, minus) = e.weights();
            constant += minus;
            plus - minus
        })
        .collect();
    let mut rows: Vec<simplex::Row> = (0..np).map(|k| simplex::Row { coefs: vec![(k, 1.0)], rhs: 1.0 }).collect();
    for t in triangles {
        rows.push(simplex::Row {
            coefs: vec![
                (pairs::index(n, t.u, t.w), 1.0),
                (pairs::index(n, t.u, t.v), -1.0),
                (pairs::index(n, t.v, t.w), -1.0),
            ],
            rhs: 0.0,
        });
    }
    let sol = simplex::minimize(&c, &rows, MAX_SIMPLEX_ITER)?;
    let x: Vec<f64> = sol.x.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let x = LpSolution { n, x };
    let objective = lp_objective(inst, &x)?;
    if (objective - (sol.objective + constant)).abs() > 1e-6 {
        return Err(Error::Numerical(format!(
            "objective drift: tableau {} vs evaluated {objective}",
            sol.objective + constant
        )));
    }
    Ok((x, objective, sol.iterations))
}

fn closed_form(inst: &Instance) -> (LpSolution, LpStats) {
    let n = inst.n();
    let mut x = LpSolution::zeros(n);
    for ((u, v), e) in pairs::iter(n).zip(inst.edges()) {
        let (plus, minus) = e.weights();
        x.set(u, v, if minus > plus { 1.0 } else { 0.0 });
    }
    let objective = lp_objective(inst, &x).expect("sizes match");
    let stats = LpStats {
        objective,
        iterations: 0,
        constraints_generated: 0,
        separation_rounds: 0,
        round_objectives: vec![objective],
        active_triangles: Vec::new(),
    };
    (x, stats)
}
