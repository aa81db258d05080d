//! Grid certification of a rounding scheme.
//!
//! For an eligible scheme (`f+` piecewise convex, `f-` piecewise concave) the
//! surplus only needs checking on tight triangles `z = x + y` and on the
//! corner set, where every length is an endpoint of a piece of its
//! function. Ineligible schemes are checked on the full grid of the
//! triangle-inequality polytope instead.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::triple::{
    check_triangle, mix_patterns, sign_pattern_surpluses, surplus_unchecked, triple_costs_with_probs, TriangleType,
};
use crate::error::{Error, Result};
use crate::instance::{GraphClass, Label};
use crate::rounding::scheme::{Eligibility, RoundingScheme};

pub const DEFAULT_GRID_STEP: f64 = 0.005;
pub const DEFAULT_TOL: f64 = 1e-9;

/// A triangle and its surplus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Edge types per position; absent for weighted triangles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<[Label; 3]>,
    pub lengths: [f64; 3],
    /// `lambda-` per position for weighted triangles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_minus: Option<[f64; 3]>,
    pub surplus: f64,
}

fn rank(l: &Option<[Label; 3]>) -> [u8; 3] {
    l.map_or([0; 3], |ls| ls.map(|x| x.symbol() as u8))
}

impl Witness {
    /// Total order: smaller surplus first, then lexicographic lengths,
    /// weights and labels, so that reductions are order independent.
    pub fn cmp_key(&self, other: &Witness) -> Ordering {
        let lex = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        };
        self.surplus
            .total_cmp(&other.surplus)
            .then_with(|| lex(&self.lengths, &other.lengths))
            .then_with(|| lex(&self.lambda_minus.unwrap_or([0.0; 3]), &other.lambda_minus.unwrap_or([0.0; 3])))
            .then_with(|| rank(&self.labels).cmp(&rank(&other.labels)))
    }
}

pub(crate) fn min_witness(a: Witness, b: Witness) -> Witness {
    if b.cmp_key(&a) == Ordering::Less {
        b
    } else {
        a
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Tight triangles plus corner set.
    Tight,
    /// Full grid of the triangle-inequality polytope.
    FullGrid,
    /// Weighted tight triangles with a grid over `lambda-`.
    Weighted,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeResult {
    pub triangle_type: String,
    pub grid_step: f64,
    pub grid_points: usize,
    pub min_surplus: f64,
    pub witness: Witness,
    pub corner_min: f64,
    pub corner_results: Vec<Witness>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub scheme: String,
    pub alpha: f64,
    pub class: String,
    pub grid_step: f64,
    pub tol: f64,
    pub mode: Mode,
    pub eligibility: Eligibility,
    pub per_type: Vec<TypeResult>,
    pub min_surplus: f64,
    /// Worst triangle found anywhere.
    pub witness: Witness,
    pub verdict: Verdict,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub(crate) fn assemble(
        s: &RoundingScheme,
        alpha: f64,
        class: &str,
        grid_step: f64,
        tol: f64,
        mode: Mode,
        per_type: Vec<TypeResult>,
    ) -> CertificateReport {
        let witness = per_type
            .iter()
            .flat_map(|t| std::iter::once(&t.witness).chain(&t.corner_results))
            .cloned()
            .reduce(min_witness)
            .expect("at least one triangle type");
        let verdict = if per_type.iter().all(|t| t.passed) { Verdict::Pass } else { Verdict::Fail };
        CertificateReport {
            scheme: s.name.clone(),
            alpha,
            class: class.to_string(),
            grid_step,
            tol,
            mode,
            eligibility: s.eligibility(),
            per_type,
            min_surplus: witness.surplus,
            witness,
            verdict,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Use the full 3-D grid for ineligible schemes instead of refusing.
    pub full_grid_fallback: bool,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { full_grid_fallback: true, jobs: 1 }
    }
}

/// Uniform grid of step `step` on `[0, 1]` merged with `extra` points.
pub fn axis(step: f64, extra: &[f64]) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Scheme(format!("grid step must be in (0, 1], got {step}")));
    }
    let k = (1.0 / step - 1e-9).ceil() as usize;
    let mut pts: Vec<f64> = (0..=k).map(|i| (i as f64 * step).min(1.0)).collect();
    pts.push(1.0);
    pts.extend(extra.iter().copied().filter(|x| (0.0..=1.0).contains(x)));
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(pts)
}

/// Minimum of `f(i)` over `0..count`, in parallel when `jobs > 1`.
pub(crate) fn reduce_min<F>(count: usize, jobs: usize, f: F) -> Result<Option<Witness>>
where
    F: Fn(usize) -> Option<Witness> + Sync + Send,
{
    if jobs <= 1 {
        return Ok((0..count).filter_map(f).reduce(min_witness));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().filter_map(f).reduce_with(min_witness)))
}

/// Triples `(x, y, x + y)` with `x`, `y` on the axis and `x + y <= 1`.
pub(crate) fn tight_lengths(ax: &[f64], i: usize) -> impl Iterator<Item = [f64; 3]> + '_ {
    let x = ax[i];
    ax.iter()
        .take_while(move |&&y| x + y <= 1.0 + 1e-12)
        .map(move |&y| [x, y, (x + y).min(1.0)])
}

pub(crate) fn is_triangle(l: [f64; 3]) -> bool {
    check_triangle(l).is_ok()
}

pub(crate) fn rotations(l: [f64; 3]) -> [[f64; 3]; 3] {
    [l, [l[1], l[2], l[0]], [l[2], l[0], l[1]]]
}

pub fn certify(s: &RoundingScheme, alpha: f64, class: GraphClass, grid_step: f64, tol: f64) -> Result<CertificateReport> {
    certify_with(s, alpha, class, grid_step, tol, CertifyOptions::default())
}

pub fn certify_with(
    s: &RoundingScheme,
    alpha: f64,
    class: GraphClass,
    grid_step: f64,
    tol: f64,
    opts: CertifyOptions,
) -> Result<CertificateReport> {
    if class == GraphClass::WeightedComplete {
        return crate::certify::weighted::certify_weighted_ti_with(s, alpha, grid_step, tol, opts);
    }
    s.supports(class)?;
    let elig = s.eligibility();
    let mode = if elig.tight_reduction() {
        Mode::Tight
    } else if opts.full_grid_fallback {
        Mode::FullGrid
    } else {
        return Err(Error::Ineligible(format!("{elig:?}")));
    };
    let ax = axis(grid_step, &s.breakpoints())?;
    let mut per_type = Vec::new();
    for tt in TriangleType::admissible(class) {
        let orients = tt.orientations();
        let eval = |labels: [Label; 3], lengths: [f64; 3]| Witness {
            labels: Some(labels),
            lengths,
            lambda_minus: None,
            surplus: surplus_unchecked(labels, lengths, s, alpha),
        };
        let grid_points;
        let witness = match mode {
            Mode::Tight => {
                grid_points = ax.iter().map(|&x| ax.iter().filter(|&&y| x + y <= 1.0 + 1e-12).count()).sum::<usize>()
                    * orients.len();
                reduce_min(ax.len(), opts.jobs, |i| {
                    tight_lengths(&ax, i)
                        .flat_map(|l| orients.iter().map(move |&o| (o, l)))
                        .map(|(o, l)| eval(o, l))
                        .reduce(min_witness)
                })?
            }
            _ => {
                let count = std::sync::atomic::AtomicUsize::new(0);
                let w = reduce_min(ax.len(), opts.jobs, |i| {
                    let mut best: Option<Witness> = None;
                    let mut local = 0;
                    for &y in &ax {
                        for &z in &ax {
                            let l = [ax[i], y, z];
                            if check_triangle(l).is_err() {
                                continue;
                            }
                            for &o in &orients {
                                local += 1;
                                let w = eval(o, l);
                                best = Some(match best {
                                    Some(b) => min_witness(b, w),
                                    None => w,
                                });
                            }
                        }
                    }
                    count.fetch_add(local, std::sync::atomic::Ordering::Relaxed);
                    best
                })?;
                grid_points = count.into_inner();
                w
            }
        }
        .expect("the grid is never empty");

        let corner_results = corner_witnesses(s, &orients, alpha);
        let corner_min = corner_results.iter().map(|w| w.surplus).fold(f64::INFINITY, f64::min);
        per_type.push(TypeResult {
            triangle_type: tt.to_string(),
            grid_step,
            grid_points,
            passed: witness.surplus >= -tol && corner_min >= -tol,
            min_surplus: witness.surplus,
            witness,
            corner_min,
            corner_results,
        });
    }
    Ok(CertificateReport::assemble(s, alpha, class.name(), grid_step, tol, mode, per_type))
}

/// Every orientation and every choice of corner length (with one-sided
/// values at jumps) that forms a triangle.
fn corner_witnesses(s: &RoundingScheme, orients: &[[Label; 3]], alpha: f64) -> Vec<Witness> {
    let mut out = Vec::new();
    for &o in orients {
        let [c0, c1, c2] = o.map(|l| s.corner_values(l));
        for &(l0, p0) in &c0 {
            for &(l1, p1) in &c1 {
                for &(l2, p2) in &c2 {
                    let lengths = [l0, l1, l2];
                    if check_triangle(lengths).is_err() {
                        continue;
                    }
                    let t = triple_costs_with_probs(o, lengths, [p0, p1, p2], alpha);
                    out.push(Witness { labels: Some(o), lengths, lambda_minus: None, surplus: t.surplus });
                }
            }
        }
    }
    out
}

/// Minimum weighted surplus over `lambda-` triples satisfying the triangle
/// inequality, with `lambda1`, `lambda2` on `lam_axis`. For fixed `lambda1`,
/// `lambda2` the surplus is affine in `lambda3`, so its minimum over
/// `[|lambda1 - lambda2|, min(1, lambda1 + lambda2)]` is at an endpoint.
pub(crate) fn min_over_lambda(patterns: &[f64; 8], lengths: [f64; 3], lam_axis: &[f64]) -> Witness {
    let mut best: Option<Witness> = None;
    for &m1 in lam_axis {
        for &m2 in lam_axis {
            for m3 in [(m1 - m2).abs(), (m1 + m2).min(1.0)] {
                let lm = [m1, m2, m3];
                let w = Witness { labels: None, lengths, lambda_minus: Some(lm), surplus: mix_patterns(patterns, lm) };
                best = Some(match best {
                    Some(b) => min_witness(b, w),
                    None => w,
                });
            }
        }
    }
    best.expect("nonempty lambda axis")
}

pub(crate) fn weighted_point(s: &RoundingScheme, alpha: f64, lengths: [f64; 3], lam_axis: &[f64]) -> Witness {
    min_over_lambda(&sign_pattern_surpluses(lengths, s, alpha), lengths, lam_axis)
}
