//! Worked examples checked against oracles written independently of the
//! library code paths they exercise.

use std::collections::HashMap;

use corrclust::certify::{certify, pairwise_step_expectations, triple_costs};
use corrclust::instance::{
    clustering_cost, gap_kpartite_lp_point, gen_complete_random, gen_planted, BipartiteGraph, Clustering,
};
use corrclust::lp::{lp_objective, solve_relaxation, FEAS_TOL};
use corrclust::oracle::{brute_force_opt, exact_expected_step_cost};
use corrclust::rounding::{derandomize_round, pivot_round_weighted};
use corrclust::{GraphClass, Instance, Label, LpSolution, RoundingScheme};

use Label::{Minus, Plus};

/// Distribution of final clusterings of the pivot algorithm when the pair
/// `(u, w)` is cut with probability `p[u][w]`, by recursion over the set of
/// remaining vertices.
fn pivot_distribution(p: &[Vec<f64>]) -> HashMap<Vec<usize>, f64> {
    fn go(p: &[Vec<f64>], remaining: Vec<usize>, assign: &mut Vec<usize>, next: usize, prob: f64, out: &mut HashMap<Vec<usize>, f64>) {
        if remaining.is_empty() {
            *out.entry(Clustering::from_assignment(assign).assignment().to_vec()).or_default() += prob;
            return;
        }
        for &w in &remaining {
            let others: Vec<usize> = remaining.iter().copied().filter(|&u| u != w).collect();
            for mask in 0u32..1 << others.len() {
                let mut q = prob / remaining.len() as f64;
                let mut rest = Vec::new();
                assign[w] = next;
                for (bit, &u) in others.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        q *= 1.0 - p[u][w];
                        assign[u] = next;
                    } else {
                        q *= p[u][w];
                        rest.push(u);
                    }
                }
                if q > 0.0 {
                    go(p, rest, assign, next + 1, q, out);
                }
            }
        }
    }
    let n = p.len();
    let mut out = HashMap::new();
    go(p, (0..n).collect(), &mut vec![0; n], 0, 1.0, &mut out);
    out
}

#[test]
fn weighted_three_vertices_match_enumeration() {
    // lambda- = (0.3, 0.5, 0.6) on pairs (0,1), (0,2), (1,2) is a metric.
    let weights = vec![(0.7, 0.3), (0.5, 0.5), (0.4, 0.6)];
    let inst = Instance::weighted(3, weights.clone(), true).unwrap();
    let x = LpSolution::from_pairs(3, vec![0.3, 0.45, 0.6]).unwrap();
    let s = RoundingScheme::weighted_ti_150();
    let pairs = [(0, 1), (0, 2), (1, 2)];

    // Expectation over the 8 coin outcomes and the full pivot process.
    let mut expected = 0.0;
    for coins in 0..8u32 {
        let mut p = vec![vec![0.0; 3]; 3];
        let mut weight = 1.0;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let plus = coins >> i & 1 == 1;
            weight *= if plus { weights[i].0 } else { weights[i].1 };
            let label = if plus { Plus } else { Minus };
            p[u][v] = s.eval(label, x.get(u, v)).unwrap();
            p[v][u] = p[u][v];
        }
        for (assign, q) in pivot_distribution(&p) {
            expected += weight * q * clustering_cost(&inst, &Clustering::from_assignment(&assign)).unwrap();
        }
    }

    let trials = 20_000;
    let costs: Vec<f64> = (0..trials)
        .map(|seed| clustering_cost(&inst, &pivot_round_weighted(&inst, &x, &s, seed).unwrap()).unwrap())
        .collect();
    let mean = costs.iter().sum::<f64>() / trials as f64;
    let var = costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let sem = (var / trials as f64).sqrt();
    assert!((mean - expected).abs() <= 3.0 * sem, "mean {mean}, exact {expected}, sem {sem}");
}

#[test]
fn bad_triangle_first_step_matches_triple_formula() {
    let inst = Instance::complete(3, vec![Plus, Plus, Minus]).unwrap();
    let x = LpSolution::from_pairs(3, vec![0.25, 0.25, 0.5]).unwrap();
    let s = RoundingScheme::complete206();
    let p = |u: usize, v: usize| {
        let label = inst.label(u, v).unwrap();
        s.eval(label, x.get(u, v)).unwrap()
    };
    // Cost on the edge opposite the pivot, over pivots and join outcomes.
    let mut opposite = 0.0;
    for w in 0..3 {
        let (u, v) = match w {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for (ju, jv) in [(true, true), (true, false), (false, true), (false, false)] {
            let q = (if ju { 1.0 - p(u, w) } else { p(u, w) }) * (if jv { 1.0 - p(v, w) } else { p(v, w) });
            let cost = match (inst.label(u, v).unwrap(), ju, jv) {
                (Plus, true, false) | (Plus, false, true) => 1.0,
                (Minus, true, true) => 1.0,
                _ => 0.0,
            };
            opposite += q * cost / 3.0;
        }
    }
    // Edge types per position: (0,1) +, (1,2) -, (0,2) +.
    let t = triple_costs([Plus, Minus, Plus], [0.25, 0.5, 0.25], &s, 2.06).unwrap();
    assert!((opposite - t.alg / 3.0).abs() < 1e-15, "{opposite} vs {}", t.alg / 3.0);
}

#[test]
fn step_enumeration_equals_pairwise_formula() {
    let s = RoundingScheme::complete206();
    for seed in 0..20 {
        let inst = gen_complete_random(3, 0.5, seed);
        let (x, _) = solve_relaxation(&inst, FEAS_TOL).unwrap();
        let e = exact_expected_step_cost(&inst, &x, &s).unwrap();
        let (alg, lpv) = pairwise_step_expectations(&inst, &x, &s).unwrap();
        assert!((e.e_alg_0 - alg).abs() < 1e-12 && (e.e_lp_0 - lpv).abs() < 1e-12, "seed {seed}");
    }
}

#[test]
fn single_edge_step() {
    let inst = Instance::complete(2, vec![Plus]).unwrap();
    let x = LpSolution::from_pairs(2, vec![0.4]).unwrap();
    let e = exact_expected_step_cost(&inst, &x, &RoundingScheme::acn_linear()).unwrap();
    // Whichever vertex pivots, the edge is cut with probability 0.4; the LP
    // mass 0.4 is always removed.
    assert!((e.e_alg_0 - 0.4).abs() < 1e-15 && (e.e_lp_0 - 0.4).abs() < 1e-15, "{e:?}");
}

#[test]
fn planted_optimum_is_no_worse_than_planted() {
    for seed in 0..3 {
        let (inst, planted) = gen_planted(12, 3, 0.1, seed).unwrap();
        let (_, opt) = brute_force_opt(&inst).unwrap();
        assert!(opt <= clustering_cost(&inst, &planted).unwrap(), "seed {seed}");
    }
}

#[test]
fn kpartite_cycles() {
    let (c4, x4) = gap_kpartite_lp_point(&BipartiteGraph::cycle(2)).unwrap();
    assert!((lp_objective(&c4, &x4).unwrap() - 4.0 / 3.0).abs() < 1e-12);
    let (_, stats) = solve_relaxation(&c4, FEAS_TOL).unwrap();
    assert!(stats.objective <= 4.0 / 3.0 + 1e-9);

    let (c6, x6) = gap_kpartite_lp_point(&BipartiteGraph::cycle(3)).unwrap();
    let lp = lp_objective(&c6, &x6).unwrap();
    assert!((lp - 2.0).abs() < 1e-12);
    assert!(brute_force_opt(&c6).unwrap().1 >= lp);
}

#[test]
fn complete206_at_two_has_plus_plus_minus_witness() {
    let r = certify(&RoundingScheme::complete206(), 2.0, GraphClass::Complete, 0.005, 1e-9).unwrap();
    assert!(!r.passed());
    let ppm = r.per_type.iter().find(|t| t.triangle_type == "(+,+,-)").unwrap();
    assert!(!ppm.passed && ppm.min_surplus < -1e-9, "{ppm:?}");
    let w = &ppm.witness;
    let again = triple_costs(w.labels.unwrap(), w.lengths, &RoundingScheme::complete206(), 2.0).unwrap();
    assert!((again.surplus - w.surplus).abs() < 1e-12);
}

#[test]
fn derandomized_bad_triangle_and_random_instances() {
    let s = RoundingScheme::complete206();
    let bad = Instance::complete(3, vec![Plus, Plus, Minus]).unwrap();
    let mut insts = vec![bad];
    insts.extend((0..50).map(|seed| gen_complete_random(9, 0.5, 500 + seed)));
    for inst in &insts {
        let (x, stats) = solve_relaxation(inst, FEAS_TOL).unwrap();
        let c = derandomize_round(inst, &x, &s, 2.06).unwrap();
        assert!(clustering_cost(inst, &c).unwrap() <= 2.06 * stats.objective + 1e-9);
    }
}
