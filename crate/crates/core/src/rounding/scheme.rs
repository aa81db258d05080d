//! Rounding schemes: one piecewise function per edge type mapping an LP
//! length to the probability of cutting that pair from the pivot.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{GraphClass, Label};

/// Step of the numerical monotonicity and convexity checks.
pub const SHAPE_CHECK_STEP: f64 = 1e-3;
const SHAPE_TOL: f64 = 1e-12;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    /// `params = [c]`: `c`.
    Constant,
    /// `params = [slope, intercept]`.
    Linear,
    /// `params = [anchor, coef]`: `coef * (x - anchor)^2`.
    Quadratic,
    /// `params = [coef]`: `coef * sqrt(x)`.
    Sqrt,
}

/// One piece on `[from, to)`; the last piece of a function also covers `to`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub from: f64,
    pub to: f64,
    pub kind: PieceKind,
    pub params: Vec<f64>,
}

impl Piece {
    pub fn new(from: f64, to: f64, kind: PieceKind, params: &[f64]) -> Piece {
        Piece { from, to, kind, params: params.to_vec() }
    }

    fn eval(&self, x: f64) -> f64 {
        let p = &self.params;
        match self.kind {
            PieceKind::Constant => p[0],
            PieceKind::Linear => p[0] * x + p[1],
            PieceKind::Quadratic => p[1] * (x - p[0]) * (x - p[0]),
            PieceKind::Sqrt => p[0] * x.max(0.0).sqrt(),
        }
    }

    fn arity(&self) -> usize {
        match self.kind {
            PieceKind::Constant | PieceKind::Sqrt => 1,
            PieceKind::Linear | PieceKind::Quadratic => 2,
        }
    }
}

/// A function on `[0, 1]` given by consecutive pieces. Each threshold
/// belongs to the piece on its right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiecewiseFn {
    pieces: Vec<Piece>,
}

impl PiecewiseFn {
    pub fn new(pieces: Vec<Piece>) -> Result<PiecewiseFn> {
        let f = PiecewiseFn { pieces };
        f.check_layout()?;
        Ok(f)
    }

    pub fn identity() -> PiecewiseFn {
        PiecewiseFn { pieces: vec![Piece::new(0.0, 1.0, PieceKind::Linear, &[1.0, 0.0])] }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn check_layout(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Scheme(msg));
        let Some(first) = self.pieces.first() else {
            return bad("function has no pieces".into());
        };
        if first.from != 0.0 {
            return bad(format!("first piece starts at {}, not 0", first.from));
        }
        if self.pieces.last().map(|p| p.to) != Some(1.0) {
            return bad("last piece must end at 1".into());
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if !(p.from < p.to) {
                return bad(format!("piece {i} has empty range [{}, {}]", p.from, p.to));
            }
            if p.params.len() != p.arity() {
                return bad(format!("piece {i} ({:?}) needs {} parameters", p.kind, p.arity()));
            }
            if p.params.iter().any(|v| !v.is_finite()) {
                return bad(format!("piece {i} has a non-finite parameter"));
            }
            if let Some(next) = self.pieces.get(i + 1) {
                if next.from != p.to {
                    return bad(format!("gap or overlap between pieces {i} and {}", i + 1));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.pieces.partition_point(|p| p.from <= x).saturating_sub(1);
        self.pieces[idx].eval(x)
    }

    /// `{0, 1}` together with every piece endpoint, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0, 1.0];
        for p in &self.pieces {
            pts.push(p.from);
            pts.push(p.to);
        }
        sort_dedup(pts)
    }

    /// `(length, value)` at both ends of every piece, each end evaluated with
    /// that piece's own formula. At a jump both one-sided values appear.
    pub fn corner_values(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for p in &self.pieces {
            for x in [p.from, p.to] {
                let v = (x, p.eval(x));
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        out
    }

    fn grid(&self) -> impl Iterator<Item = f64> {
        let k = (1.0 / SHAPE_CHECK_STEP).round() as usize;
        (0..=k).map(move |i| i as f64 / k as f64)
    }

    pub fn maps_into_unit(&self) -> bool {
        self.grid()
            .chain(self.breakpoints())
            .all(|x| (-SHAPE_TOL..=1.0 + SHAPE_TOL).contains(&self.eval(x)))
    }

    pub fn is_monotone(&self) -> bool {
        let pts = sort_dedup(self.grid().chain(self.breakpoints()).collect());
        pts.windows(2).all(|w| self.eval(w[1]) >= self.eval(w[0]) - SHAPE_TOL)
    }

    /// Midpoint test on each piece, `sign = 1` for convexity and `-1` for concavity.
    fn piecewise_shape(&self, sign: f64) -> bool {
        self.pieces.iter().all(|p| {
            let span = p.to - p.from;
            let steps = ((span / SHAPE_CHECK_STEP).ceil() as usize).max(2);
            let h = span / steps as f64;
            // Stay strictly inside the piece: the right end belongs to the next one.
            let at = |i: usize| p.eval(p.from + i as f64 * h);
            (0..steps.saturating_sub(2)).all(|i| {
                let mid = at(i + 1);
                let chord = 0.5 * (at(i) + at(i + 2));
                sign * (chord - mid) >= -SHAPE_TOL
            })
        })
    }

    pub fn is_piecewise_convex(&self) -> bool {
        self.piecewise_shape(1.0)
    }

    pub fn is_piecewise_concave(&self) -> bool {
        self.piecewise_shape(-1.0)
    }
}

fn sort_dedup(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    v
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundingScheme {
    pub name: String,
    pub plus: PiecewiseFn,
    pub minus: PiecewiseFn,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neutral: Option<PiecewiseFn>,
}

/// Result of the numerical shape checks on a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eligibility {
    pub zero_at_zero: bool,
    pub maps_into_unit: bool,
    pub monotone: bool,
    pub plus_piecewise_convex: bool,
    pub minus_piecewise_concave: bool,
}

impl Eligibility {
    /// Valid rounding functions (zero at zero, into `[0,1]`, nondecreasing).
    pub fn valid(&self) -> bool {
        self.zero_at_zero && self.maps_into_unit && self.monotone
    }

    /// Valid and shaped so that tight triangles plus corners suffice.
    pub fn tight_reduction(&self) -> bool {
        self.valid() && self.plus_piecewise_convex && self.minus_piecewise_concave
    }
}

pub const PRESETS: &[&str] = &["acn_linear", "complete206", "kpartite3", "weighted_ti_150", "weighted_ti_153"];

impl RoundingScheme {
    pub fn new(name: &str, plus: PiecewiseFn, minus: PiecewiseFn, neutral: Option<PiecewiseFn>) -> RoundingScheme {
        RoundingScheme { name: name.to_string(), plus, minus, neutral }
    }

    /// `f+ = f- = x`.
    pub fn acn_linear() -> RoundingScheme {
        RoundingScheme::new("acn_linear", PiecewiseFn::identity(), PiecewiseFn::identity(), None)
    }

    /// `f+` is 0 below `a`, `((x-a)/(b-a))^2` on `[a, b]`, 1 from `b` on; `f- = x`.
    pub fn complete_quadratic(a: f64, b: f64) -> Result<RoundingScheme> {
        if !(0.0 < a && a < b && b < 1.0) {
            return Err(Error::Scheme(format!("need 0 < a < b < 1, got a = {a}, b = {b}")));
        }
        let plus = PiecewiseFn::new(vec![
            Piece::new(0.0, a, PieceKind::Constant, &[0.0]),
            Piece::new(a, b, PieceKind::Quadratic, &[a, 1.0 / ((b - a) * (b - a))]),
            Piece::new(b, 1.0, PieceKind::Constant, &[1.0]),
        ])?;
        Ok(RoundingScheme::new("complete_quadratic", plus, PiecewiseFn::identity(), None))
    }

    /// The complete-graph scheme with `a = 0.19`, `b = 0.5095`.
    pub fn complete206() -> RoundingScheme {
        let mut s = RoundingScheme::complete_quadratic(0.19, 0.5095).expect("valid parameters");
        s.name = "complete206".into();
        s
    }

    /// k-partite scheme: `f+` jumps from 0 to 1 at 1/3, `f- = x`,
    /// `f° = 3x/2` up to 2/3 and 1 beyond.
    pub fn kpartite3() -> RoundingScheme {
        let third = 1.0 / 3.0;
        let plus = PiecewiseFn::new(vec![
            Piece::new(0.0, third, PieceKind::Constant, &[0.0]),
            Piece::new(third, 1.0, PieceKind::Constant, &[1.0]),
        ])
        .expect("valid layout");
        let neutral = PiecewiseFn::new(vec![
            Piece::new(0.0, 2.0 * third, PieceKind::Linear, &[1.5, 0.0]),
            Piece::new(2.0 * third, 1.0, PieceKind::Constant, &[1.0]),
        ])
        .expect("valid layout");
        RoundingScheme::new("kpartite3", plus, PiecewiseFn::identity(), Some(neutral))
    }

    /// Weighted triangle-inequality scheme `f+ = min((4 - 2 sqrt 2) x^2, 1)`, `f- = sqrt x`.
    pub fn weighted_ti_150() -> RoundingScheme {
        let coef = 4.0 - 2.0 * std::f64::consts::SQRT_2;
        let knee = 1.0 / coef.sqrt();
        let plus = PiecewiseFn::new(vec![
            Piece::new(0.0, knee, PieceKind::Quadratic, &[0.0, coef]),
            Piece::new(knee, 1.0, PieceKind::Constant, &[1.0]),
        ])
        .expect("valid layout");
        RoundingScheme::new("weighted_ti_150", plus, sqrt_fn(), None)
    }

    /// `f+ = x^2`, `f- = sqrt x`.
    pub fn weighted_ti_153() -> RoundingScheme {
        let plus = PiecewiseFn::new(vec![Piece::new(0.0, 1.0, PieceKind::Quadratic, &[0.0, 1.0])])
            .expect("valid layout");
        RoundingScheme::new("weighted_ti_153", plus, sqrt_fn(), None)
    }

    pub fn preset(id: &str) -> Option<RoundingScheme> {
        Some(match id {
            "acn_linear" => RoundingScheme::acn_linear(),
            "complete206" => RoundingScheme::complete206(),
            "kpartite3" => RoundingScheme::kpartite3(),
            "weighted_ti_150" => RoundingScheme::weighted_ti_150(),
            "weighted_ti_153" => RoundingScheme::weighted_ti_153(),
            _ => return None,
        })
    }

    pub fn from_json(text: &str) -> Result<RoundingScheme> {
        let s: RoundingScheme = serde_json::from_str(text)?;
        s.plus.check_layout()?;
        s.minus.check_layout()?;
        if let Some(f) = &s.neutral {
            f.check_layout()?;
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schemes serialize")
    }

    pub fn function(&self, label: Label) -> Option<&PiecewiseFn> {
        match label {
            Label::Plus => Some(&self.plus),
            Label::Minus => Some(&self.minus),
            Label::Neutral => self.neutral.as_ref(),
        }
    }

    /// Cut probability of a pair of the given type at LP length `x`.
    pub fn eval(&self, label: Label, x: f64) -> Result<f64> {
        self.function(label)
            .map(|f| f.eval(x))
            .ok_or_else(|| Error::Scheme(format!("scheme `{}` has no function for neutral pairs", self.name)))
    }

    /// As [`RoundingScheme::eval`]; callers must have checked
    /// [`RoundingScheme::supports`] first.
    pub(crate) fn prob(&self, label: Label, x: f64) -> f64 {
        match label {
            Label::Plus => self.plus.eval(x),
            Label::Minus => self.minus.eval(x),
            Label::Neutral => self.neutral.as_ref().map_or(0.0, |f| f.eval(x)),
        }
    }

    pub fn supports(&self, class: GraphClass) -> Result<()> {
        if class == GraphClass::KPartite && self.neutral.is_none() {
            return Err(Error::Scheme(format!(
                "scheme `{}` has no function for neutral pairs and cannot round k-partite instances",
                self.name
            )));
        }
        Ok(())
    }

    /// Corner lengths for pairs of the given type.
    pub fn corner_set(&self, label: Label) -> Vec<f64> {
        self.function(label).map_or_else(|| vec![0.0, 1.0], PiecewiseFn::breakpoints)
    }

    /// Corner lengths with one-sided function values; see
    /// [`PiecewiseFn::corner_values`]. Types without a function use `{0, 1}`
    /// with probability 0.
    pub fn corner_values(&self, label: Label) -> Vec<(f64, f64)> {
        self.function(label)
            .map_or_else(|| vec![(0.0, 0.0), (1.0, 0.0)], PiecewiseFn::corner_values)
    }

    /// All breakpoints of all functions.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = self.plus.breakpoints();
        pts.extend(self.minus.breakpoints());
        if let Some(f) = &self.neutral {
            pts.extend(f.breakpoints());
        }
        sort_dedup(pts)
    }

    pub fn eligibility(&self) -> Eligibility {
        let fns: Vec<&PiecewiseFn> = [Some(&self.plus), Some(&self.minus), self.neutral.as_ref()]
            .into_iter()
            .flatten()
            .collect();
        Eligibility {
            zero_at_zero: fns.iter().all(|f| f.eval(0.0).abs() <= SHAPE_TOL),
            maps_into_unit: fns.iter().all(|f| f.maps_into_unit()),
            monotone: fns.iter().all(|f| f.is_monotone()),
            plus_piecewise_convex: self.plus.is_piecewise_convex(),
            minus_piecewise_concave: self.minus.is_piecewise_concave(),
        }
    }
}

fn sqrt_fn() -> PiecewiseFn {
    PiecewiseFn::new(vec![Piece::new(0.0, 1.0, PieceKind::Sqrt, &[1.0])]).expect("valid layout")
}
