//! Dense tableau primal simplex for `min c.x  s.t.  A x <= b, x >= 0` with
//! `b >= 0`, so the all-slack basis is feasible and no phase one is needed.
//! Entering and leaving variables follow Bland's rule.

use crate::error::{Error, Result};

/// Reduced-cost and pivot-size tolerance.
const EPS: f64 = 1e-9;
/// A basic variable below `-NEG_TOL` means the tableau has lost feasibility.
const NEG_TOL: f64 = 1e-7;

pub(crate) struct Row {
    pub coefs: Vec<(usize, f64)>,
    pub rhs: f64,
}

pub(crate) struct Solution {
    pub x: Vec<f64>,
    /// `c.x` (without any constant offset).
    pub objective: f64,
    pub iterations: usize,
}

pub(crate) fn minimize(c: &[f64], rows: &[Row], max_iter: usize) -> Result<Solution> {
    let nv = c.len();
    let m = rows.len();
    let width = nv + m + 1;
    let rhs_col = nv + m;
    let mut t = vec![0.0; m * width];
    for (i, row) in rows.iter().enumerate() {
        if row.rhs < 0.0 {
            return Err(Error::Numerical(format!("row {i} has negative right-hand side")));
        }
        let r = &mut t[i * width..(i + 1) * width];
        for &(j, a) in &row.coefs {
            r[j] += a;
        }
        r[nv + i] = 1.0;
        r[rhs_col] = row.rhs;
    }
    // Reduced costs; the slack basis has zero cost so they start as c.
    let mut d = vec![0.0; width];
    d[..nv].copy_from_slice(c);
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    let mut iterations = 0;
    loop {
        let Some(enter) = (0..nv + m).find(|&j| d[j] < -EPS) else {
            break;
        };
        if iterations >= max_iter {
            return Err(Error::IterationCap(max_iter));
        }
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i * width + enter];
            if a > EPS {
                let ratio = t[i * width + rhs_col].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best - EPS || (ratio <= best + EPS && basis[i] < basis[k]) {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Numerical("LP is unbounded".into()));
        };
        pivot(&mut t, &mut d, width, m, pr, enter);
        basis[pr] = enter;
        iterations += 1;
        if t[pr * width + rhs_col] < -NEG_TOL {
            return Err(Error::Numerical(format!(
                "basic value {} after pivot {iterations}",
                t[pr * width + rhs_col]
            )));
        }
    }

    let mut x = vec![0.0; nv];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < nv {
            x[bv] = t[i * width + rhs_col].max(0.0);
        }
    }
    let objective = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    Ok(Solution { x, objective, iterations })
}

fn pivot(t: &mut [f64], d: &mut [f64], width: usize, m: usize, pr: usize, pc: usize) {
    let inv = 1.0 / t[pr * width + pc];
    {
        let row = &mut t[pr * width..(pr + 1) * width];
        for v in row.iter_mut() {
            *v *= inv;
        }
        row[pc] = 1.0;
    }
    let pivot_row: Vec<f64> = t[pr * width..(pr + 1) * width].to_vec();
    let nz: Vec<usize> = (0..width).filter(|&j| pivot_row[j] != 0.0).collect();
    for i in 0..m {
        if i == pr {
            continue;
        }
        let f = t[i * width + pc];
        if f == 0.0 {
            continue;
        }
        let row = &mut t[i * width..(i + 1) * width];
        for &j in &nz {
            row[j] -= f * pivot_row[j];
        }
        row[pc] = 0.0;
    }
    let f = d[pc];
    if f != 0.0 {
        for &j in &nz {
            d[j] -= f * pivot_row[j];
        }
        d[pc] = 0.0;
    }
}
