//! Necessary conditions on rounding functions from single triangle families,
//! and the resulting lower bound on any achievable ratio.

use serde::{Deserialize, Serialize};

/// Value of a bound at one point.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Bound {
    Value(f64),
    /// The constraint holds for every value in `[0, 1]`.
    Vacuous,
    /// No value satisfies the constraint.
    Infeasible,
}

impl Bound {
    pub fn value(self) -> Option<f64> {
        match self {
            Bound::Value(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCurves {
    pub alpha: f64,
}

pub fn bound_curves(alpha: f64) -> BoundCurves {
    BoundCurves { alpha }
}

impl BoundCurves {
    /// From `(+,-,-)` triangles `(0, x, x)`: `f-(x) >= sqrt(1 - alpha (1 - x))`.
    pub fn f_minus_lower(&self, x: f64) -> Bound {
        let r = 1.0 - self.alpha * (1.0 - x);
        if r < 0.0 {
            Bound::Vacuous
        } else {
            Bound::Value(r.sqrt())
        }
    }

    /// From `(+,+,+)` triangles `(x, x, 0)`: `f+(x) <= 1 - sqrt(1 - alpha x)`.
    pub fn f_plus_upper(&self, x: f64) -> Bound {
        let r = 1.0 - self.alpha * x;
        if r < 0.0 {
            Bound::Vacuous
        } else {
            Bound::Value(1.0 - r.sqrt())
        }
    }

    /// From `(+,+,-)` triangles `(x, x, 2x)` with `f- = x`, for `x <= 1/2`:
    /// `f+(x)` is at least the smaller root of
    /// `A f^2 + (4 alpha x^2 - 8x) f + (1 - alpha + 4x) = 0`, `A = 1 + alpha - 2 alpha x`.
    pub fn f_plus_lower(&self, x: f64) -> Bound {
        if !(0.0..=0.5).contains(&x) {
            return Bound::Vacuous;
        }
        let a = 1.0 + self.alpha - 2.0 * self.alpha * x;
        let b = 4.0 * self.alpha * x * x - 8.0 * x;
        let c = 1.0 - self.alpha + 4.0 * x;
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Bound::Infeasible;
        }
        Bound::Value((-b - disc.sqrt()) / (2.0 * a))
    }

    pub fn tabulate(&self, step: f64) -> Vec<BoundRow> {
        let k = (1.0 / step).round() as usize;
        (0..=k)
            .map(|i| {
                let x = i as f64 / k as f64;
                BoundRow {
                    x,
                    f_minus_lower: self.f_minus_lower(x),
                    f_plus_upper: self.f_plus_upper(x),
                    f_plus_lower: self.f_plus_lower(x),
                }
            })
            .collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub x: f64,
    pub f_minus_lower: Bound,
    pub f_plus_upper: Bound,
    pub f_plus_lower: Bound,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCheck {
    pub alpha: f64,
    pub x: f64,
    /// False when `1 - alpha (1 - 2x) < 0`; the check then says nothing.
    pub applicable: bool,
    /// Exact roots of the quadratic in `f+(x)`.
    pub roots: Option<(f64, f64)>,
    /// Roots rounded outward to three decimals.
    pub root_interval: Option<(f64, f64)>,
    /// Cap on `f+(x)` from `(+,+,+)` triangles, `1 - sqrt(1 - alpha x)`.
    pub upper_bound: f64,
    /// True if no `f+(x)` in `[0, upper_bound]` satisfies the quadratic.
    pub contradiction: bool,
}

/// Combines the `(+,+,-)` triangle `(x, x, 2x)` (with the best possible
/// `f-(2x) = sqrt(1 - alpha (1 - 2x))`) and the `(+,+,+)` triangle
/// `(x, x, 0)`. The first forces `f+(x)` between the roots of
/// `A f^2 - 2 (2 - alpha x) s f + 2 s - alpha + 1 <= 0` with
/// `A = 1 + alpha - 2 alpha x`, `s = sqrt(1 - alpha (1 - 2x))`; the second
/// caps it. Disjoint ranges mean no scheme reaches ratio `alpha`.
pub fn lower_bound_check(alpha: f64, x: f64) -> LowerBoundCheck {
    let cap = match bound_curves(alpha).f_plus_upper(x) {
        Bound::Value(v) => v,
        _ => 1.0,
    };
    let mut out = LowerBoundCheck {
        alpha,
        x,
        applicable: false,
        roots: None,
        root_interval: None,
        upper_bound: cap,
        contradiction: false,
    };
    let r = 1.0 - alpha * (1.0 - 2.0 * x);
    if r < 0.0 {
        return out;
    }
    out.applicable = true;
    let s = r.sqrt();
    let a = 1.0 + alpha - 2.0 * alpha * x;
    let b = -2.0 * (2.0 - alpha * x) * s;
    let c = 2.0 * s - alpha + 1.0;
    let disc = b * b - 4.0 * a * c;
    if a <= 0.0 || disc < 0.0 {
        // With a > 0 and no real root the quadratic is positive everywhere.
        out.contradiction = a > 0.0;
        return out;
    }
    let (lo, hi) = ((-b - disc.sqrt()) / (2.0 * a), (-b + disc.sqrt()) / (2.0 * a));
    out.roots = Some((lo, hi));
    out.root_interval = Some(((lo * 1000.0).floor() / 1000.0, (hi * 1000.0).ceil() / 1000.0));
    out.contradiction = lo > cap || hi < 0.0;
    out
}

/// Points `x` on a grid of `[0, 1/2]` where [`lower_bound_check`] reports a
/// contradiction.
pub fn lower_bound_scan(alpha: f64, step: f64) -> Vec<LowerBoundCheck> {
    let k = (0.5 / step).round() as usize;
    (0..=k)
        .map(|i| lower_bound_check(alpha, 0.5 * i as f64 / k as f64))
        .filter(|c| c.contradiction)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::triple::triple_costs_with_probs;
    use crate::instance::Label::*;

    #[test]
    fn curve_examples() {
        for alpha in [1.5, 2.0, 2.06, 3.0] {
            let c = bound_curves(alpha);
            assert_eq!(c.f_minus_lower(1.0), Bound::Value(1.0));
            assert_eq!(c.f_plus_upper(0.0), Bound::Value(0.0));
        }
        assert_eq!(bound_curves(2.06).f_minus_lower(0.2), Bound::Vacuous);
        assert_eq!(bound_curves(2.06).f_plus_upper(0.9), Bound::Vacuous);
        assert_eq!(bound_curves(2.06).f_plus_lower(0.7), Bound::Vacuous);
    }

    #[test]
    fn curves_are_zero_surplus_points() {
        let alpha = 2.06;
        let c = bound_curves(alpha);
        for x in [0.1, 0.2, 0.3, 0.4] {
            let f = c.f_plus_upper(x).value().unwrap();
            let t = triple_costs_with_probs([Plus; 3], [x, x, 0.0], [f, f, 0.0], alpha);
            assert!(t.surplus.abs() < 1e-12);
            if let Bound::Value(f) = c.f_plus_lower(x) {
                let t = triple_costs_with_probs([Plus, Plus, Minus], [x, x, 2.0 * x], [f, f, 2.0 * x], alpha);
                assert!(t.surplus.abs() < 1e-10, "x = {x}: {}", t.surplus);
            }
        }
        for x in [0.6, 0.8, 0.95] {
            let f = c.f_minus_lower(x).value().unwrap();
            let t = triple_costs_with_probs([Plus, Minus, Minus], [0.0, x, x], [0.0, f, f], alpha);
            assert!(t.surplus.abs() < 1e-12);
        }
    }

    #[test]
    fn paper_point() {
        let r = lower_bound_check(2.025, 0.48);
        let (lo, hi) = r.roots.unwrap();
        assert!((lo - 0.8363).abs() < 1e-3 && (hi - 0.98695).abs() < 1e-3, "{r:?}");
        assert_eq!(r.root_interval, Some((0.836, 0.987)));
        assert!(r.upper_bound < 0.833);
        assert!(r.contradiction);
    }

    #[test]
    fn certified_ratios_do_not_contradict() {
        assert!(!lower_bound_check(2.06, 0.48).contradiction);
        assert!(!lower_bound_check(2.5, 0.48).contradiction);
        assert!(lower_bound_scan(2.06, 0.001).is_empty());
        assert!(!lower_bound_scan(2.025, 0.001).is_empty());
        assert!(!lower_bound_check(2.025, 0.1).applicable);
    }
}
