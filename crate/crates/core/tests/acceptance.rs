//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use corrclust::certify::{
    bound_curves, certify, certify_weighted_ti_with, lower_bound_check, step_inequality_check, triple_costs, Bound,
    CertifyOptions, DEFAULT_TOL,
};
use corrclust::instance::{
    clustering_cost, gen_complete_random, gen_gap_triangle_ineq, gen_kpartite_random, weighted_to_unweighted,
};
use corrclust::lp::{separate_triangle_violations, solve_relaxation, FEAS_TOL};
use corrclust::oracle::{brute_force_opt, brute_force_opt_capped, integrality_ratio};
use corrclust::rounding::{derandomize_round, monte_carlo_ratio};
use corrclust::{rng, GraphClass, Instance, Label, RoundingScheme};
use rand::Rng;

use Label::{Minus as M, Neutral as O, Plus as P};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: corrclust::Error) -> String {
    e.to_string()
}

/// Uniform point of the unit cube satisfying the triangle inequality.
fn random_triangle(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let t: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
        if t[0] <= t[1] + t[2] && t[1] <= t[0] + t[2] && t[2] <= t[0] + t[1] {
            return t;
        }
    }
}

fn complete_family() -> Vec<Instance> {
    (0..100).map(|seed| gen_complete_random(9, 0.5, seed)).collect()
}

fn kpartite_family() -> Vec<Instance> {
    (0..50).map(|seed| gen_kpartite_random(&[3, 3, 3], 0.5, seed).unwrap()).collect()
}

fn c1_complete206() -> Outcome {
    let start = Instant::now();
    let r = certify(&RoundingScheme::complete206(), 2.06, GraphClass::Complete, 0.005, 1e-9).map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    ensure(r.per_type.len() == 4, || format!("{} triangle types", r.per_type.len()))?;
    ensure(r.passed() && r.min_surplus >= -1e-9, || format!("min surplus {:e} at {:?}", r.min_surplus, r.witness))?;
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("min surplus {:.3e}, {secs:.1}s", r.min_surplus))
}

/// ALG, LP and the stated lower bound on `3 LP - ALG` for a k-partite
/// triangle under the 3-approximation functions, from the case-by-case
/// closed forms. Edge `i` has type `labels[i]` and length `(a, b, c)[i]`.
fn kpartite_closed_form(labels: [Label; 3], [a, b, c]: [f64; 3]) -> (f64, f64, f64) {
    let third = 1.0 / 3.0;
    let small = |x: f64| x < third;
    let neutral_small = c < 2.0 / 3.0;
    match labels {
        [P, P, P] => {
            let mut t = [a, b, c];
            t.sort_by(f64::total_cmp);
            match t.iter().filter(|&&x| !small(x)).count() {
                0 => (0.0, a + b + c, 0.0),
                3 => (0.0, 0.0, 0.0),
                1 => (2.0, a + b + c, 0.0),
                _ => (2.0, t[1] + t[2], 0.0),
            }
        }
        [P, P, M] => match (small(a), small(b)) {
            (true, true) => (1.0 + 2.0 * c, 1.0 - c + a + b, 0.0),
            (true, false) => (1.0, 1.0 + a + b - c - a * c, 0.0),
            (false, true) => (1.0, 1.0 + a + b - c - b * c, 0.0),
            (false, false) => (2.0 * (1.0 - c), (a + b) * (1.0 - c), 0.0),
        },
        [P, M, M] => {
            if small(a) {
                let bound = (1.0 - b * c) + 3.0 * (1.0 - b) * (1.0 - c) + 3.0 * a * (1.0 - b * c);
                (2.0 - 2.0 * b * c, 2.0 - b - c + a - a * b * c, bound)
            } else {
                let lp = 2.0 - 2.0 * b - 2.0 * c + 2.0 * b * c + a * (1.0 - b * c);
                (b + c - 2.0 * b * c, lp, 7.0 * (1.0 - b) * (1.0 - c))
            }
        }
        [M, M, M] => (
            3.0 - 2.0 * (a + b + c) + a * b + b * c + a * c,
            3.0 - a - b - c - a * b - a * c - b * c + 3.0 * a * b * c,
            5.0 * (1.0 - a) * (1.0 - b),
        ),
        [P, P, O] => match (small(a), small(b), neutral_small) {
            (true, true, true) => (3.0 * c, a + b, 0.0),
            (true, false, true) => (1.0, b + a * (1.0 - 1.5 * c), 0.0),
            (false, true, true) => (1.0, a + b * (1.0 - 1.5 * c), 0.0),
            (false, false, true) => (2.0 - 3.0 * c, (a + b) * (1.0 - 1.5 * c), 0.0),
            (true, false, false) => (1.0, b, 0.0),
            (false, true, false) => (1.0, a, 0.0),
            (false, false, false) => (0.0, 0.0, 0.0),
            (true, true, false) => unreachable!("a + b >= c >= 2/3"),
        },
        [P, M, O] => match (small(a), neutral_small) {
            (true, true) => (1.0 + b - 3.0 * b * c, 1.0 - b + a - 1.5 * a * b * c, third - 1.5 * a * c),
            (true, false) => (1.0 - b, 1.0 - b + a - a * b, 0.0),
            (false, true) => (
                b + 1.5 * c - 3.0 * b * c,
                1.0 - b - 1.5 * c + 1.5 * b * c + a - 1.5 * a * b * c,
                // 3 LP - ALG = 3 + 3a - 4b - 6c + 7.5bc - 4.5abc, and a >= 1/3.
                2.0 * (1.0 - b) * (2.0 - 3.0 * c),
            ),
            (false, false) => (1.0 - b, a * (1.0 - b), 0.0),
        },
        [M, M, O] => {
            if neutral_small {
                let lp = (1.0 - b) * (1.0 - 1.5 * a * c) + (1.0 - a) * (1.0 - 1.5 * b * c);
                // LP - ALG = 3c(1-a)(1-b), so 3 LP - ALG is at least that.
                ((1.0 - 1.5 * c) * (2.0 - a - b), lp, 3.0 * c * (1.0 - a) * (1.0 - b))
            } else {
                (0.0, 2.0 * (1.0 - a) * (1.0 - b), 0.0)
            }
        }
        other => panic!("not a k-partite type: {other:?}"),
    }
}

fn c2_kpartite3() -> Outcome {
    let s = RoundingScheme::kpartite3();
    let r = certify(&s, 3.0, GraphClass::KPartite, 0.005, DEFAULT_TOL).map_err(err)?;
    ensure(r.per_type.len() == 7, || format!("{} triangle types", r.per_type.len()))?;
    ensure(r.passed(), || format!("min surplus {:e} at {:?}", r.min_surplus, r.witness))?;

    let types = [[P, P, P], [P, P, M], [P, M, M], [M, M, M], [P, P, O], [P, M, O], [M, M, O]];
    let mut rng = rng::stream(2);
    let mut worst = f64::INFINITY;
    for labels in types {
        for _ in 0..10_000 {
            let t = random_triangle(&mut rng);
            let (alg, lp, bound) = kpartite_closed_form(labels, t);
            let lib = triple_costs(labels, t, &s, 3.0).map_err(err)?;
            ensure((lib.alg - alg).abs() <= 1e-10 && (lib.lp - lp).abs() <= 1e-10, || {
                format!("{labels:?} at {t:?}: library ({}, {}) vs closed form ({alg}, {lp})", lib.alg, lib.lp)
            })?;
            let gap = 3.0 * lp - alg;
            ensure(bound >= -1e-10 && gap >= bound - 1e-10, || {
                format!("{labels:?} at {t:?}: 3 LP - ALG = {gap}, stated bound {bound}")
            })?;
            worst = worst.min(gap);
        }
    }
    Ok(format!("min surplus {:.3e}; closed forms min 3LP-ALG {worst:.3e}", r.min_surplus))
}

fn c3_tightness() -> Outcome {
    let s = RoundingScheme::complete206();
    let r = certify(&s, 2.0, GraphClass::Complete, 0.005, 1e-9).map_err(err)?;
    ensure(!r.passed(), || "certification at 2.00 passed".into())?;
    let w = &r.witness;
    let labels = w.labels.ok_or("witness without labels")?;
    let again = triple_costs(labels, w.lengths, &s, 2.0).map_err(err)?;
    ensure(w.surplus < -1e-9 && (again.surplus - w.surplus).abs() < 1e-12, || format!("witness {w:?}"))?;
    Ok(format!("witness {labels:?} {:?} surplus {:.4e}", w.lengths, w.surplus))
}

fn c4_lower_bound() -> Outcome {
    let r = lower_bound_check(2.025, 0.48);
    let (lo, hi) = r.root_interval.ok_or("no real roots")?;
    ensure((lo, hi) == (0.836, 0.987), || format!("root interval ({lo}, {hi})"))?;
    let cap = 1.0 - (1.0 - 2.025f64 * 0.48).sqrt();
    ensure((r.upper_bound - cap).abs() < 1e-15 && cap <= 0.833, || format!("cap {}", r.upper_bound))?;
    ensure(r.contradiction, || "no contradiction".into())?;
    Ok(format!("roots ({lo}, {hi}), cap {:.4}", r.upper_bound))
}

fn c5_weighted() -> Outcome {
    let opts = CertifyOptions { jobs: 4, ..CertifyOptions::default() };
    let start = Instant::now();
    let mut parts = Vec::new();
    for (s, alpha, expect) in [
        (RoundingScheme::weighted_ti_150(), 1.5, true),
        (RoundingScheme::weighted_ti_153(), 1.53, true),
        (RoundingScheme::weighted_ti_153(), 1.49, false),
    ] {
        let r = certify_weighted_ti_with(&s, alpha, 0.01, 1e-7, opts).map_err(err)?;
        ensure(r.passed() == expect, || {
            format!("{} at {alpha}: verdict {:?}, min surplus {:e} at {:?}", s.name, r.verdict, r.min_surplus, r.witness)
        })?;
        parts.push(format!("{}@{alpha}: {:?} ({:.2e})", s.name, r.verdict, r.min_surplus));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 600.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{}; {secs:.1}s", parts.join(", ")))
}

fn c6_derandomized() -> Outcome {
    for (name, family, scheme, alpha) in [
        ("complete", complete_family(), RoundingScheme::complete206(), 2.06),
        ("kpartite", kpartite_family(), RoundingScheme::kpartite3(), 3.0),
    ] {
        for (i, inst) in family.iter().enumerate() {
            let (x, stats) = solve_relaxation(inst, FEAS_TOL).map_err(err)?;
            let c = derandomize_round(inst, &x, &scheme, alpha).map_err(err)?;
            let cost = clustering_cost(inst, &c).map_err(err)?;
            ensure(cost <= alpha * stats.objective + 1e-9, || {
                format!("{name} #{i}: cost {cost} > {alpha} * {}", stats.objective)
            })?;
        }
    }
    Ok("100/100 complete, 50/50 k-partite".into())
}

fn c7_randomized() -> Outcome {
    let s = RoundingScheme::complete206();
    let mut worst: f64 = 0.0;
    for (i, inst) in complete_family().iter().enumerate() {
        let (x, _) = solve_relaxation(inst, FEAS_TOL).map_err(err)?;
        let r = monte_carlo_ratio(inst, &x, &s, 2000, 1000 + i as u64).map_err(err)?;
        ensure(r.mean <= 2.06 * r.lp + 3.0 * r.sem, || {
            format!("#{i}: mean {} vs 2.06 * {} + 3 * {}", r.mean, r.lp, r.sem)
        })?;
        if r.lp > 0.0 {
            worst = worst.max(r.ratio);
        }
        let step = step_inequality_check(inst, &x, &s, 2.06).map_err(err)?;
        ensure(step.holds, || format!("#{i}: step inequality {} > {}", step.lhs, step.rhs))?;
    }
    Ok(format!("max mean ratio {worst:.4}"))
}

fn c8_relaxation() -> Outcome {
    let mut insts = complete_family();
    insts.extend(kpartite_family());
    insts.extend((2..=5).map(gen_gap_triangle_ineq));
    for (i, inst) in insts.iter().enumerate() {
        let (x, stats) = solve_relaxation(inst, FEAS_TOL).map_err(err)?;
        let (_, opt) = brute_force_opt(inst).map_err(err)?;
        ensure(stats.objective <= opt + 1e-6, || format!("#{i}: LP {} > OPT {opt}", stats.objective))?;
        let v = separate_triangle_violations(&x, 1e-6);
        ensure(v.is_empty(), || format!("#{i}: {} violated triangles", v.len()))?;
    }
    Ok(format!("{} instances", insts.len()))
}

fn c9_gap() -> Outcome {
    let inst = gen_gap_triangle_ineq(4);
    let (_, opt) = brute_force_opt(&inst).map_err(err)?;
    ensure((opt - 40.0 / 3.0).abs() < 1e-9, || format!("OPT {opt}"))?;
    let (_, stats) = solve_relaxation(&inst, FEAS_TOL).map_err(err)?;
    ensure(stats.objective <= 12.0 + 1e-6, || format!("LP {}", stats.objective))?;
    ensure(opt / stats.objective >= 10.0 / 9.0 - 1e-6, || "ratio below 10/9".into())?;
    let mut ratios = Vec::new();
    for n in 2..=5 {
        ratios.push(integrality_ratio(&gen_gap_triangle_ineq(n)).map_err(err)?.ratio);
    }
    ensure(ratios.windows(2).all(|w| w[1] >= w[0] - 1e-9), || format!("ratios {ratios:?}"))?;
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    Ok(format!("OPT 40/3, LP {:.4}; ratios n=2..5: {}", stats.objective, shown.join(" ")))
}

fn c10_appendix() -> Outcome {
    let s = RoundingScheme::complete206();
    let mut rng = rng::stream(10);
    for _ in 0..1000 {
        let t @ [x, y, z] = random_triangle(&mut rng);
        let r = triple_costs([M, M, M], t, &s, 1.0).map_err(err)?;
        let alg = 3.0 - 2.0 * (x + y + z) + x * y + x * z + y * z;
        let factored = x * (1.0 - y) * (1.0 - z) + y * (1.0 - x) * (1.0 - z) + z * (1.0 - x) * (1.0 - y);
        ensure((r.alg - alg).abs() <= 1e-12 && (r.lp - r.alg - factored).abs() <= 1e-12, || {
            format!("(-,-,-) at {t:?}: LP - ALG = {} vs {factored}", r.lp - r.alg)
        })?;
    }
    let k = 1000;
    for i in 0..=k {
        let x = i as f64 / k as f64;
        let f = s.eval(P, x).map_err(err)?;
        ensure(f <= 2.0 * x, || format!("f+({x}) = {f} > 2x"))?;
    }
    for _ in 0..1000 {
        let t @ [x, y, z] = random_triangle(&mut rng);
        let r = triple_costs([P, M, M], t, &s, 2.0).map_err(err)?;
        let fp = s.eval(P, x).map_err(err)?;
        let expanded = 2.0 * (1.0 - y) * (1.0 - z) + 2.0 * x * (1.0 - y * z) + fp * (2.0 - 3.0 * z - 3.0 * y + 4.0 * y * z);
        ensure((r.surplus - expanded).abs() <= 1e-12 && r.surplus >= -1e-12, || {
            format!("(+,-,-) at {t:?}: 2 LP - ALG = {} vs {expanded}", r.surplus)
        })?;
    }
    Ok("A.1 factorization and A.2 inequality at 1000 points each".into())
}

fn c11_bound_curves() -> Outcome {
    let s = RoundingScheme::complete206();
    let alpha = 2.06;
    let curves = bound_curves(alpha);
    let k = 1000;
    let mut slack = f64::INFINITY;
    for i in 0..=k {
        let x = i as f64 / k as f64;
        let (fp, fm) = (s.eval(P, x).map_err(err)?, s.eval(M, x).map_err(err)?);
        if let Bound::Value(v) = curves.f_minus_lower(x) {
            ensure(fm >= v - 1e-12, || format!("f-({x}) = {fm} < {v}"))?;
            slack = slack.min(fm - v);
        }
        if x <= 1.0 / alpha {
            let v = curves.f_plus_upper(x).value().ok_or_else(|| format!("no upper curve at {x}"))?;
            ensure(fp <= v + 1e-12, || format!("f+({x}) = {fp} > {v}"))?;
            slack = slack.min(v - fp);
        }
        if x <= 0.5 {
            match curves.f_plus_lower(x) {
                Bound::Value(v) => {
                    ensure(fp >= v - 1e-12, || format!("f+({x}) = {fp} < {v}"))?;
                    slack = slack.min(fp - v);
                }
                Bound::Vacuous => {}
                Bound::Infeasible => return Err(format!("lower curve infeasible at {x}")),
            }
        }
    }
    Ok(format!("min slack {slack:.3e}"))
}

fn c12_blowup() -> Outcome {
    let mut rng = rng::stream(12);
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let weights: Vec<(f64, f64)> = (0..3)
            .map(|_| {
                let plus: f64 = rng.gen();
                (plus, 1.0 - plus)
            })
            .collect();
        let inst = Instance::weighted(3, weights, false).map_err(err)?;
        let (_, opt) = brute_force_opt_capped(&inst, 3).map_err(err)?;
        let (blown, _) = weighted_to_unweighted(&inst, 6, 100 + i).map_err(err)?;
        let (_, blown_opt) = brute_force_opt_capped(&blown, 18).map_err(err)?;
        let diff = (blown_opt / 36.0 - opt).abs();
        ensure(diff <= 0.15, || format!("#{i}: blowup OPT/36 = {} vs OPT {opt}", blown_opt / 36.0))?;
        worst = worst.max(diff);
    }
    Ok(format!("max deviation {worst:.4}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("complete206 certified at 2.06", c1_complete206),
        ("kpartite3 certified at 3 and closed forms", c2_kpartite3),
        ("complete206 fails at 2.00 with witness", c3_tightness),
        ("lower bound at alpha 2.025, x 0.48", c4_lower_bound),
        ("weighted triangle-inequality certificates", c5_weighted),
        ("derandomized cost within alpha LP", c6_derandomized),
        ("randomized mean ratio and step inequality", c7_randomized),
        ("LP relaxation below OPT, no violations", c8_relaxation),
        ("gap instance OPT, LP and monotone ratio", c9_gap),
        ("(-,-,-) factorization and (+,-,-) inequality", c10_appendix),
        ("bound curves for complete206", c11_bound_curves),
        ("weighted blowup OPT within 0.15", c12_blowup),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:.1}s] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:.1}s] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
