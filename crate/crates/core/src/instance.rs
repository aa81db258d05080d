//! Problem instances, clusterings, cost evaluation and instance generators.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pairs;
use crate::rng;

/// Tolerance on `lambda_plus + lambda_minus == 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Largest vertex count `weighted_to_unweighted` will produce.
pub const MAX_BLOWUP_VERTICES: usize = 4096;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "0")]
    Neutral,
}

impl Label {
    pub fn symbol(self) -> char {
        match self {
            Label::Plus => '+',
            Label::Minus => '-',
            Label::Neutral => '0',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Label> {
        match s {
            "+" => Some(Label::Plus),
            "-" => Some(Label::Minus),
            "0" | "∅" => Some(Label::Neutral),
            _ => None,
        }
    }

    /// `(lambda_plus, lambda_minus)` of a labeled pair.
    pub fn weights(self) -> (f64, f64) {
        match self {
            Label::Plus => (1.0, 0.0),
            Label::Minus => (0.0, 1.0),
            Label::Neutral => (0.0, 0.0),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Complete,
    KPartite,
    WeightedComplete,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Complete => "complete",
            GraphClass::KPartite => "kpartite",
            GraphClass::WeightedComplete => "weighted",
        }
    }

    pub fn from_name(s: &str) -> Option<GraphClass> {
        match s {
            "complete" => Some(GraphClass::Complete),
            "kpartite" | "k-partite" => Some(GraphClass::KPartite),
            "weighted" | "weighted-complete" => Some(GraphClass::WeightedComplete),
            _ => None,
        }
    }

    /// Type of the implicit self-loop `(u, u)` used by the triple sums:
    /// positive on complete graphs, neutral inside a part of a k-partite graph.
    pub fn self_loop(self) -> Label {
        match self {
            GraphClass::KPartite => Label::Neutral,
            _ => Label::Plus,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum EdgeData {
    Label(Label),
    Weight { plus: f64, minus: f64 },
}

impl EdgeData {
    pub fn weights(self) -> (f64, f64) {
        match self {
            EdgeData::Label(l) => l.weights(),
            EdgeData::Weight { plus, minus } => (plus, minus),
        }
    }

    pub fn label(self) -> Option<Label> {
        match self {
            EdgeData::Label(l) => Some(l),
            EdgeData::Weight { .. } => None,
        }
    }
}

/// A correlation clustering instance on vertices `0..n`.
///
/// Edge data is stored once per unordered pair (see [`crate::pairs`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    n: usize,
    class: GraphClass,
    parts: Option<Vec<usize>>,
    edges: Vec<EdgeData>,
    triangle_inequality: bool,
}

impl Instance {
    /// Complete graph; `labels` are in pair order and must be `+` or `-`.
    pub fn complete(n: usize, labels: Vec<Label>) -> Result<Instance> {
        let inst = Instance {
            n,
            class: GraphClass::Complete,
            parts: None,
            edges: labels.into_iter().map(EdgeData::Label).collect(),
            triangle_inequality: false,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Complete k-partite graph. Intra-part pairs must be neutral, all other
    /// pairs `+` or `-`.
    pub fn kpartite(parts: Vec<usize>, labels: Vec<Label>) -> Result<Instance> {
        let inst = Instance {
            n: parts.len(),
            class: GraphClass::KPartite,
            parts: Some(parts),
            edges: labels.into_iter().map(EdgeData::Label).collect(),
            triangle_inequality: false,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Weighted complete graph from `(lambda_plus, lambda_minus)` per pair.
    /// With `triangle_inequality` set, `lambda_minus` must be a metric.
    pub fn weighted(n: usize, weights: Vec<(f64, f64)>, triangle_inequality: bool) -> Result<Instance> {
        let inst = Instance {
            n,
            class: GraphClass::WeightedComplete,
            parts: None,
            edges: weights
                .into_iter()
                .map(|(plus, minus)| EdgeData::Weight { plus, minus })
                .collect(),
            triangle_inequality,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn parts(&self) -> Option<&[usize]> {
        self.parts.as_deref()
    }

    pub fn triangle_inequality(&self) -> bool {
        self.triangle_inequality
    }

    /// Edge data in pair order.
    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }

    pub fn edge(&self, u: usize, v: usize) -> EdgeData {
        self.edges[pairs::index(self.n, u, v)]
    }

    /// `(lambda_plus, lambda_minus)` of `{u, v}`; for `u == v` the self-loop
    /// convention of the class applies.
    pub fn weights(&self, u: usize, v: usize) -> (f64, f64) {
        if u == v {
            self.class.self_loop().weights()
        } else {
            self.edge(u, v).weights()
        }
    }

    /// Label of `{u, v}` for labeled classes; the self-loop type when `u == v`.
    pub fn label(&self, u: usize, v: usize) -> Option<Label> {
        if u == v {
            Some(self.class.self_loop())
        } else {
            self.edge(u, v).label()
        }
    }

    /// Total weight of all pairs, an upper bound on any clustering cost.
    pub fn total_mass(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| {
                let (p, m) = e.weights();
                p.max(m)
            })
            .sum()
    }

    /// Checks the class invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.edges.len() != pairs::num_pairs(n) {
            return Err(Error::InvalidInstance(format!(
                "expected {} pairs for n = {n}, got {}",
                pairs::num_pairs(n),
                self.edges.len()
            )));
        }
        match self.class {
            GraphClass::Complete => {
                for ((u, v), e) in pairs::iter(n).zip(&self.edges) {
                    match e {
                        EdgeData::Label(Label::Plus | Label::Minus) => {}
                        _ => {
                            return Err(Error::InvalidInstance(format!(
                                "pair ({u}, {v}) of a complete instance must be + or -"
                            )))
                        }
                    }
                }
            }
            GraphClass::KPartite => {
                let parts = self.parts.as_ref().ok_or_else(|| {
                    Error::InvalidInstance("k-partite instance without part assignment".into())
                })?;
                if parts.len() != n {
                    return Err(Error::InvalidInstance(format!(
                        "part assignment has {} entries, expected {n}",
                        parts.len()
                    )));
                }
                for ((u, v), e) in pairs::iter(n).zip(&self.edges) {
                    let same = parts[u] == parts[v];
                    match (same, e) {
                        (true, EdgeData::Label(Label::Neutral)) => {}
                        (false, EdgeData::Label(Label::Plus | Label::Minus)) => {}
                        (true, _) => {
                            return Err(Error::InvalidInstance(format!(
                                "pair ({u}, {v}) lies inside part {} and must be neutral",
                                parts[u]
                            )))
                        }
                        (false, _) => {
                            return Err(Error::InvalidInstance(format!(
                                "pair ({u}, {v}) crosses parts and must be + or -"
                            )))
                        }
                    }
                }
            }
            GraphClass::WeightedComplete => {
                for ((u, v), e) in pairs::iter(n).zip(&self.edges) {
                    let EdgeData::Weight { plus, minus } = *e else {
                        return Err(Error::InvalidInstance(format!(
                            "pair ({u}, {v}) of a weighted instance has no weights"
                        )));
                    };
                    check_weights(plus, minus)
                        .map_err(|msg| Error::InvalidInstance(format!("pair ({u}, {v}): {msg}")))?;
                }
                if self.triangle_inequality {
                    if let Some((u, v, w)) = self.minus_metric_violation(1e-9) {
                        return Err(Error::InvalidInstance(format!(
                            "negative weights violate the triangle inequality on ({u}, {v}, {w})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple `(u, v, w)` with `lambda_minus(u,w) > lambda_minus(u,v) + lambda_minus(v,w) + tol`.
    pub fn minus_metric_violation(&self, tol: f64) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let m = |a: usize, b: usize| if a == b { 0.0 } else { self.weights(a, b).1 };
        for u in 0..n {
            for w in u + 1..n {
                for v in 0..n {
                    if v != u && v != w && m(u, w) > m(u, v) + m(v, w) + tol {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }
}

pub(crate) fn check_weights(plus: f64, minus: f64) -> std::result::Result<(), String> {
    if !(0.0..=1.0).contains(&plus) || !(0.0..=1.0).contains(&minus) {
        return Err(format!("weights ({plus}, {minus}) outside [0, 1]"));
    }
    if (plus + minus - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(format!("weights ({plus}, {minus}) do not sum to 1"));
    }
    Ok(())
}

/// A partition of `0..n` stored as a canonical cluster assignment: cluster
/// ids are numbered in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct Clustering {
    assignment: Vec<usize>,
}

impl From<Clustering> for Vec<usize> {
    fn from(c: Clustering) -> Vec<usize> {
        c.assignment
    }
}

impl From<Vec<usize>> for Clustering {
    fn from(a: Vec<usize>) -> Clustering {
        Clustering::from_assignment(&a)
    }
}

impl Clustering {
    /// Canonicalizes an arbitrary labeling of vertices.
    pub fn from_assignment(labels: &[usize]) -> Clustering {
        let mut remap = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Clustering { assignment }
    }

    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Clustering> {
        let mut labels = vec![usize::MAX; n];
        for (id, cluster) in clusters.iter().enumerate() {
            for &u in cluster {
                if u >= n || labels[u] != usize::MAX {
                    return Err(Error::InvalidInstance(format!(
                        "vertex {u} is out of range or appears in two clusters"
                    )));
                }
                labels[u] = id;
            }
        }
        if let Some(u) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidInstance(format!("vertex {u} is not clustered")));
        }
        Ok(Clustering::from_assignment(&labels))
    }

    pub fn single(n: usize) -> Clustering {
        Clustering { assignment: vec![0; n] }
    }

    pub fn singletons(n: usize) -> Clustering {
        Clustering { assignment: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, u: usize) -> usize {
        self.assignment[u]
    }

    pub fn together(&self, u: usize, v: usize) -> bool {
        self.assignment[u] == self.assignment[v]
    }

    pub fn num_clusters(&self) -> usize {
        self.assignment.iter().max().map_or(0, |m| m + 1)
    }

    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters()];
        for (u, &c) in self.assignment.iter().enumerate() {
            out[c].push(u);
        }
        out
    }
}

/// Number (or weight) of violated constraints: cut positive mass plus
/// uncut negative mass. Neutral pairs cost nothing.
pub fn clustering_cost(inst: &Instance, c: &Clustering) -> Result<f64> {
    if c.n() != inst.n() {
        return Err(Error::ClusteringMismatch { expected: inst.n(), got: c.n() });
    }
    Ok(pairs::iter(inst.n())
        .zip(inst.edges())
        .map(|((u, v), e)| {
            let (plus, minus) = e.weights();
            if c.together(u, v) {
                minus
            } else {
                plus
            }
        })
        .sum())
}

pub fn gen_complete_random(n: usize, plus_prob: f64, seed: u64) -> Instance {
    let mut rng = rng::stream(seed);
    let labels = (0..pairs::num_pairs(n))
        .map(|_| if rng.gen::<f64>() < plus_prob { Label::Plus } else { Label::Minus })
        .collect();
    Instance::complete(n, labels).expect("generated labels are + or -")
}

/// Parts are laid out consecutively: the first `part_sizes[0]` vertices form
/// part 0, and so on.
pub fn gen_kpartite_random(part_sizes: &[usize], plus_prob: f64, seed: u64) -> Result<Instance> {
    if part_sizes.iter().any(|&s| s == 0) {
        return Err(Error::InvalidInstance("part sizes must be positive".into()));
    }
    let parts: Vec<usize> = part_sizes
        .iter()
        .enumerate()
        .flat_map(|(p, &s)| std::iter::repeat(p).take(s))
        .collect();
    let mut rng = rng::stream(seed);
    let labels = pairs::iter(parts.len())
        .map(|(u, v)| {
            if parts[u] == parts[v] {
                Label::Neutral
            } else if rng.gen::<f64>() < plus_prob {
                Label::Plus
            } else {
                Label::Minus
            }
        })
        .collect();
    Instance::kpartite(parts, labels)
}

/// Planted partition with `k` near-balanced clusters (vertices are shuffled
/// and dealt round-robin); every label is flipped independently with
/// probability `corruption`. Returns the instance and the planted clustering.
pub fn gen_planted(n: usize, k: usize, corruption: f64, seed: u64) -> Result<(Instance, Clustering)> {
    if k == 0 || k > n {
        return Err(Error::InvalidInstance(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let mut rng = rng::stream(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut labels = vec![0; n];
    for (pos, &u) in order.iter().enumerate() {
        labels[u] = pos % k;
    }
    let planted = Clustering::from_assignment(&labels);
    let edges = pairs::iter(n)
        .map(|(u, v)| {
            let truth = planted.together(u, v);
            let flipped = rng.gen::<f64>() < corruption;
            if truth != flipped {
                Label::Plus
            } else {
                Label::Minus
            }
        })
        .collect();
    Ok((Instance::complete(n, edges)?, planted))
}

/// Weighted complete instance on `2n` vertices with negative weight 1/3
/// between the halves `0..n` and `n..2n` and 2/3 inside each half. The
/// negative weights form a metric.
pub fn gen_gap_triangle_ineq(n: usize) -> Instance {
    let total = 2 * n;
    let weights = pairs::iter(total)
        .map(|(u, v)| {
            let minus = if (u < n) != (v < n) { 1.0 / 3.0 } else { 2.0 / 3.0 };
            (1.0 - minus, minus)
        })
        .collect();
    Instance::weighted(total, weights, true).expect("gap weights are a metric")
}

/// Bipartite graph on `left + right` vertices; edge `(i, j)` joins left
/// vertex `i` to right vertex `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    /// Even cycle on `2 * half` vertices (`half >= 2`), or a single edge for `half == 1`.
    pub fn cycle(half: usize) -> BipartiteGraph {
        let edges = if half == 1 {
            vec![(0, 0)]
        } else {
            (0..half).flat_map(|i| [(i, i), (i, (i + 1) % half)]).collect()
        };
        BipartiteGraph { left: half, right: half, edges }
    }
}

/// Labeled k-partite instance of a bipartite graph (edges positive,
/// cross non-edges negative, same-side pairs neutral) together with the LP
/// point `x = 1/3` on edges, `1` on non-edges and `2/3` on neutral pairs, of
/// value `|E| / 3`.
pub fn gap_kpartite_lp_point(g: &BipartiteGraph) -> Result<(Instance, crate::lp::LpSolution)> {
    let n = g.left + g.right;
    let mut adjacent = vec![false; g.left * g.right];
    for &(i, j) in &g.edges {
        if i >= g.left || j >= g.right {
            return Err(Error::InvalidInstance(format!("edge ({i}, {j}) out of range")));
        }
        if std::mem::replace(&mut adjacent[i * g.right + j], true) {
            return Err(Error::InvalidInstance(format!("duplicate edge ({i}, {j})")));
        }
    }
    let parts: Vec<usize> = (0..n).map(|u| usize::from(u >= g.left)).collect();
    let mut labels = Vec::with_capacity(pairs::num_pairs(n));
    let mut x = crate::lp::LpSolution::zeros(n);
    for (u, v) in pairs::iter(n) {
        let (label, len) = if parts[u] == parts[v] {
            (Label::Neutral, 2.0 / 3.0)
        } else if adjacent[u * g.right + (v - g.left)] {
            (Label::Plus, 1.0 / 3.0)
        } else {
            (Label::Minus, 1.0)
        };
        labels.push(label);
        x.set(u, v, len);
    }
    let inst = Instance::kpartite(parts, labels)?;
    let report = crate::lp::validate_solution(&x, 1e-12);
    if !report.feasible(1e-12) {
        return Err(Error::InfeasiblePoint(format!(
            "worst triangle violation {} on a malformed bipartite input",
            report.max_triangle
        )));
    }
    Ok((inst, x))
}

/// Map from blowup vertices to the original vertices they copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub original: Vec<usize>,
    pub copies: usize,
}

impl VertexMap {
    /// Copies of original vertex `u`, in ascending order.
    pub fn copies_of(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.original
            .iter()
            .enumerate()
            .filter(move |&(_, &o)| o == u)
            .map(|(i, _)| i)
    }

    pub fn original_n(&self) -> usize {
        self.original.iter().max().map_or(0, |m| m + 1)
    }
}

/// Replaces every vertex `u` by `copies` vertices `u * copies + i`; copies of
/// one vertex are joined by positive edges, and copies of distinct `u, v`
/// get a positive edge with probability `lambda_plus(u, v)`.
pub fn weighted_to_unweighted(inst: &Instance, copies: usize, seed: u64) -> Result<(Instance, VertexMap)> {
    if inst.class() != GraphClass::WeightedComplete {
        return Err(Error::InvalidInstance("blowup needs a weighted instance".into()));
    }
    if copies == 0 {
        return Err(Error::InvalidInstance("blowup factor must be at least 1".into()));
    }
    let total = inst
        .n()
        .checked_mul(copies)
        .filter(|&t| t <= MAX_BLOWUP_VERTICES)
        .ok_or(Error::BlowupTooLarge {
            vertices: inst.n().saturating_mul(copies),
            limit: MAX_BLOWUP_VERTICES,
        })?;
    let original: Vec<usize> = (0..total).map(|i| i / copies).collect();
    let mut rng = rng::stream(seed);
    let labels = pairs::iter(total)
        .map(|(a, b)| {
            let (u, v) = (original[a], original[b]);
            if u == v || rng.gen::<f64>() < inst.weights(u, v).0 {
                Label::Plus
            } else {
                Label::Minus
            }
        })
        .collect();
    Ok((Instance::complete(total, labels)?, VertexMap { original, copies }))
}

/// Clustering of the original vertices: each `u` joins the cluster of one of
/// its copies, chosen uniformly at random.
pub fn lift_clustering(c: &Clustering, map: &VertexMap, seed: u64) -> Result<Clustering> {
    if c.n() != map.original.len() {
        return Err(Error::ClusteringMismatch { expected: map.original.len(), got: c.n() });
    }
    let mut rng = rng::stream(seed);
    let labels: Vec<usize> = (0..map.original_n())
        .map(|u| {
            let copies: Vec<usize> = map.copies_of(u).collect();
            let pick = copies[rng.gen_range(0..copies.len())];
            c.cluster_of(pick)
        })
        .collect();
    Ok(Clustering::from_assignment(&labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(a: Label, b: Label, c: Label) -> Instance {
        Instance::complete(3, vec![a, b, c]).unwrap()
    }

    fn all_partitions(n: usize) -> Vec<Clustering> {
        let mut out = Vec::new();
        let mut a = vec![0usize; n];
        fn rec(i: usize, max: usize, a: &mut Vec<usize>, out: &mut Vec<Clustering>) {
            if i == a.len() {
                out.push(Clustering::from_assignment(a));
                return;
            }
            for b in 0..=max + 1 {
                a[i] = b;
                rec(i + 1, max.max(b), a, out);
            }
        }
        if n == 0 {
            return vec![Clustering::single(0)];
        }
        rec(1, 0, &mut a, &mut out);
        out
    }

    #[test]
    fn all_plus_single_cluster_is_free() {
        let inst = k3(Label::Plus, Label::Plus, Label::Plus);
        assert_eq!(clustering_cost(&inst, &Clustering::single(3)).unwrap(), 0.0);
    }

    #[test]
    fn bad_triangle_always_costs_at_least_one() {
        let inst = k3(Label::Plus, Label::Plus, Label::Minus);
        let parts = all_partitions(3);
        assert_eq!(parts.len(), 5);
        for c in parts {
            assert!(clustering_cost(&inst, &c).unwrap() >= 1.0);
        }
    }

    #[test]
    fn weighted_pair_cost() {
        let inst = Instance::weighted(2, vec![(0.7, 0.3)], false).unwrap();
        assert!((clustering_cost(&inst, &Clustering::singletons(2)).unwrap() - 0.7).abs() < 1e-15);
        assert!((clustering_cost(&inst, &Clustering::single(2)).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn cost_rejects_wrong_size() {
        let inst = k3(Label::Plus, Label::Plus, Label::Plus);
        assert!(matches!(
            clustering_cost(&inst, &Clustering::single(2)),
            Err(Error::ClusteringMismatch { .. })
        ));
    }

    #[test]
    fn canonical_form() {
        let c = Clustering::from_assignment(&[5, 2, 5, 9]);
        assert_eq!(c.assignment(), &[0, 1, 0, 2]);
        assert_eq!(c.clusters(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn complete_generator_edge_cases() {
        assert_eq!(gen_complete_random(1, 0.3, 1).edges().len(), 0);
        let inst = gen_complete_random(5, 1.0, 42);
        assert_eq!(inst.edges().len(), 10);
        assert!(inst.edges().iter().all(|e| *e == EdgeData::Label(Label::Plus)));
        assert_eq!(gen_complete_random(20, 0.5, 7), gen_complete_random(20, 0.5, 7));
        assert_ne!(gen_complete_random(20, 0.5, 7), gen_complete_random(20, 0.5, 8));
    }

    #[test]
    fn kpartite_generator_counts() {
        let inst = gen_kpartite_random(&[2, 2], 1.0, 3).unwrap();
        let count = |l| inst.edges().iter().filter(|e| **e == EdgeData::Label(l)).count();
        assert_eq!(count(Label::Plus), 4);
        assert_eq!(count(Label::Neutral), 2);
        let single = gen_kpartite_random(&[3], 0.5, 3).unwrap();
        assert!(single.edges().iter().all(|e| *e == EdgeData::Label(Label::Neutral)));
        assert_eq!(
            gen_kpartite_random(&[2, 3], 0.5, 11).unwrap(),
            gen_kpartite_random(&[2, 3], 0.5, 11).unwrap()
        );
        assert!(gen_kpartite_random(&[2, 0], 0.5, 1).is_err());
    }

    #[test]
    fn planted_generator() {
        let (inst, planted) = gen_planted(10, 3, 0.0, 5).unwrap();
        assert_eq!(clustering_cost(&inst, &planted).unwrap(), 0.0);
        assert_eq!(planted.num_clusters(), 3);
        let (inst, planted) = gen_planted(6, 1, 1.0, 5).unwrap();
        assert!(inst.edges().iter().all(|e| *e == EdgeData::Label(Label::Minus)));
        assert_eq!(clustering_cost(&inst, &planted).unwrap(), 15.0);
        assert!(gen_planted(3, 4, 0.1, 1).is_err());
    }

    #[test]
    fn gap_ti_weights() {
        let one = gen_gap_triangle_ineq(1);
        assert_eq!(one.n(), 2);
        assert!((one.weights(0, 1).1 - 1.0 / 3.0).abs() < 1e-15);
        let four = gen_gap_triangle_ineq(4);
        assert!(four.minus_metric_violation(1e-12).is_none());
        // n^2/3 across plus (2/3) * 2 * C(n,2) within
        let single = clustering_cost(&four, &Clustering::single(8)).unwrap();
        assert!((single - 40.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn instance_validation_errors() {
        assert!(Instance::complete(2, vec![Label::Neutral]).is_err());
        assert!(Instance::complete(3, vec![Label::Plus]).is_err());
        assert!(Instance::kpartite(vec![0, 0], vec![Label::Plus]).is_err());
        assert!(Instance::kpartite(vec![0, 1], vec![Label::Neutral]).is_err());
        assert!(Instance::weighted(2, vec![(0.5, 0.6)], false).is_err());
        // 0.9 > 0.1 + 0.1
        let w = vec![(0.9, 0.1), (0.1, 0.9), (0.9, 0.1)];
        assert!(Instance::weighted(3, w.clone(), true).is_err());
        assert!(Instance::weighted(3, w, false).is_ok());
    }

    #[test]
    fn kpartite_lp_point_values() {
        let (inst, x) = gap_kpartite_lp_point(&BipartiteGraph::cycle(2)).unwrap();
        assert_eq!(inst.n(), 4);
        assert!((crate::lp::lp_objective(&inst, &x).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        let (inst, x) = gap_kpartite_lp_point(&BipartiteGraph::cycle(1)).unwrap();
        assert!((crate::lp::lp_objective(&inst, &x).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let (inst, x) = gap_kpartite_lp_point(&BipartiteGraph::cycle(3)).unwrap();
        assert!((crate::lp::lp_objective(&inst, &x).unwrap() - 2.0).abs() < 1e-12);
        let bad = BipartiteGraph { left: 1, right: 1, edges: vec![(0, 0), (0, 0)] };
        assert!(gap_kpartite_lp_point(&bad).is_err());
    }

    #[test]
    fn blowup_degenerate_weights() {
        let all_plus = Instance::weighted(3, vec![(1.0, 0.0); 3], false).unwrap();
        let (big, map) = weighted_to_unweighted(&all_plus, 4, 9).unwrap();
        assert_eq!(big.n(), 12);
        assert!(big.edges().iter().all(|e| *e == EdgeData::Label(Label::Plus)));
        assert_eq!(map.copies_of(1).collect::<Vec<_>>(), vec![4, 5, 6, 7]);

        let w = Instance::weighted(3, vec![(1.0, 0.0), (0.0, 1.0), (0.0, 1.0)], false).unwrap();
        let (same, _) = weighted_to_unweighted(&w, 1, 2).unwrap();
        assert_eq!(same.edges(), &[
            EdgeData::Label(Label::Plus),
            EdgeData::Label(Label::Minus),
            EdgeData::Label(Label::Minus)
        ]);
        assert!(matches!(
            weighted_to_unweighted(&w, MAX_BLOWUP_VERTICES, 1),
            Err(Error::BlowupTooLarge { .. })
        ));
    }

    #[test]
    fn lift_cases() {
        let w = Instance::weighted(3, vec![(0.5, 0.5); 3], false).unwrap();
        let (_, id_map) = weighted_to_unweighted(&w, 1, 1).unwrap();
        let c = Clustering::from_assignment(&[0, 1, 0]);
        assert_eq!(lift_clustering(&c, &id_map, 4).unwrap(), c);

        let (_, map) = weighted_to_unweighted(&w, 5, 1).unwrap();
        assert_eq!(lift_clustering(&Clustering::single(15), &map, 8).unwrap(), Clustering::single(3));

        let mixed = Clustering::from_assignment(&(0..15).map(|i| i % 4).collect::<Vec<_>>());
        assert_eq!(
            lift_clustering(&mixed, &map, 77).unwrap(),
            lift_clustering(&mixed, &map, 77).unwrap()
        );
    }
}
