//! Certification for weighted instances whose `lambda-` is a metric.
//!
//! A weighted triangle's surplus is the expectation of the eight unweighted
//! surpluses obtained by deciding independently, per edge, whether it is
//! positive (probability `lambda+`) or negative. Lengths range over tight
//! triangles on the grid plus the corner set built from the breakpoints of
//! `f+` and `f-`; the `lambda-` triple ranges over a grid in two coordinates
//! and exactly over the third.

use crate::certify::grid::{
    axis, is_triangle, min_witness, reduce_min, rotations, tight_lengths, weighted_point, CertificateReport,
    CertifyOptions, Mode, TypeResult,
};
use crate::error::{Error, Result};
use crate::rounding::scheme::RoundingScheme;

pub fn certify_weighted_ti(s: &RoundingScheme, alpha: f64, length_grid_step: f64, tol: f64) -> Result<CertificateReport> {
    certify_weighted_ti_with(s, alpha, length_grid_step, tol, CertifyOptions::default())
}

pub fn certify_weighted_ti_with(
    s: &RoundingScheme,
    alpha: f64,
    length_grid_step: f64,
    tol: f64,
    opts: CertifyOptions,
) -> Result<CertificateReport> {
    let elig = s.eligibility();
    if !elig.tight_reduction() {
        return Err(Error::Ineligible(format!("{elig:?}")));
    }
    let mut bps = s.plus.breakpoints();
    bps.extend(s.minus.breakpoints());
    let ax = axis(length_grid_step, &bps)?;
    let lam = axis(length_grid_step, &[])?;

    let witness = reduce_min(ax.len(), opts.jobs, |i| {
        tight_lengths(&ax, i)
            .flat_map(rotations)
            .map(|l| weighted_point(s, alpha, l, &lam))
            .reduce(min_witness)
    })?
    .expect("the grid is never empty");
    let grid_points: usize =
        ax.iter().map(|&x| ax.iter().filter(|&&y| x + y <= 1.0 + 1e-12).count()).sum::<usize>() * 3;

    let corners: Vec<f64> = {
        let mut c = s.corner_set(crate::instance::Label::Plus);
        c.extend(s.corner_set(crate::instance::Label::Minus));
        c.sort_by(f64::total_cmp);
        c.dedup();
        c
    };
    let mut corner_results = Vec::new();
    for &a in &corners {
        for &b in &corners {
            for &c in &corners {
                if is_triangle([a, b, c]) {
                    corner_results.push(weighted_point(s, alpha, [a, b, c], &lam));
                }
            }
        }
    }
    let corner_min = corner_results.iter().map(|w| w.surplus).fold(f64::INFINITY, f64::min);
    let result = TypeResult {
        triangle_type: "weighted".into(),
        grid_step: length_grid_step,
        grid_points,
        passed: witness.surplus >= -tol && corner_min >= -tol,
        min_surplus: witness.surplus,
        witness,
        corner_min,
        corner_results,
    };
    Ok(CertificateReport::assemble(s, alpha, "weighted", length_grid_step, tol, Mode::Weighted, vec![result]))
}
