//! Command-line experiments: instance generation, LP solving, rounding,
//! certification, exact optima and benchmarks.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corrclust::certify::{
    bound_curves, certify_weighted_ti_with, certify_with, lower_bound_check, lower_bound_scan, Bound, CertifyOptions,
    DEFAULT_GRID_STEP, DEFAULT_TOL,
};
use corrclust::format::{
    parse_instance, parse_lp_solution, serialize_instance, serialize_instance_json, serialize_lp_solution,
};
use corrclust::instance::{
    clustering_cost, gap_kpartite_lp_point, gen_complete_random, gen_gap_triangle_ineq, gen_kpartite_random,
    gen_planted, weighted_to_unweighted, BipartiteGraph,
};
use corrclust::lp::{separate_triangle_violations, solve_relaxation, FEAS_TOL};
use corrclust::oracle::{brute_force_opt, integrality_ratio, max_brute_n};
use corrclust::rng::derive_seed;
use corrclust::rounding::{derandomize_round_traced, monte_carlo_ratio_jobs, pivot_round};
use corrclust::{Clustering, Error, GraphClass, Instance, LpSolution, RoundingScheme};
use serde_json::{json, Map, Value};

const EXIT_FAIL: u8 = 1;
const EXIT_INELIGIBLE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NUMERICAL: u8 = 70;

#[derive(Parser)]
#[command(name = "corrclust", version, about = "LP-rounding experiments for correlation clustering")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Solve the LP relaxation of an instance.
    Lp(LpArgs),
    /// Round an LP solution to a clustering.
    Round(RoundArgs),
    /// Certify a rounding scheme at a ratio over all triangle types.
    Certify(CertifyArgs),
    /// Exact optimum by exhaustive search.
    Opt(OptArgs),
    /// LP, OPT, randomized and derandomized costs over a family of instances.
    Bench(BenchArgs),
    /// Tabulate the necessary-condition curves on rounding functions.
    Bounds(BoundsArgs),
    /// Check whether a ratio is ruled out at a length.
    LowerBound(LowerBoundArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum InstanceFormat {
    Edges,
    Json,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
    /// Output file; stdout if omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "edges")]
    format: InstanceFormat,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Complete graph with each pair positive with probability `p`.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Complete k-partite graph; cross pairs positive with probability `p`.
    Kpartite {
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Planted clustering with `k` clusters and labels flipped with probability `noise`.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        noise: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Weighted gap instance on `2n` vertices with metric negative weights.
    GapTi {
        #[arg(long)]
        n: usize,
    },
    /// Bipartite gap instance from the even cycle on `2 * half` vertices.
    GapKpartite {
        #[arg(long)]
        half: usize,
    },
    /// Unweighted blowup of a weighted instance with `copies` copies per vertex.
    Blowup {
        instance: PathBuf,
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct LpArgs {
    instance: PathBuf,
    /// Write the solution here; otherwise it is embedded in the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Separation tolerance for triangle inequalities.
    #[arg(long, default_value_t = FEAS_TOL)]
    tol: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RoundMode {
    Random,
    Derand,
}

#[derive(Args)]
struct RoundArgs {
    instance: PathBuf,
    /// LP solution file; the relaxation is solved when omitted.
    #[arg(long)]
    lp: Option<PathBuf>,
    /// Preset id or scheme JSON file.
    #[arg(long)]
    scheme: String,
    #[arg(long, value_enum, default_value = "random")]
    mode: RoundMode,
    /// Required for random rounding.
    #[arg(long)]
    seed: Option<u64>,
    /// Ratio asserted by derandomized rounding; presets have defaults.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Preset id or scheme JSON file.
    scheme: String,
    #[arg(long)]
    alpha: f64,
    /// complete, kpartite or weighted; inferred from the scheme when omitted.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
    grid: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Refuse ineligible schemes instead of checking the full grid.
    #[arg(long)]
    no_fallback: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptArgs {
    instance: PathBuf,
    /// Also solve the LP and report the integrality ratio.
    #[arg(long)]
    ratio: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Complete,
    Kpartite,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertices for the complete family.
    #[arg(long)]
    n: Option<usize>,
    /// Part sizes for the k-partite family.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    instances: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0.001)]
    step: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LowerBoundArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, conflicts_with = "scan")]
    x: Option<f64>,
    /// Report every contradicting length on a grid of this step over [0, 1/2].
    #[arg(long)]
    scan: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed command: exit status and message.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Failure {
        Failure { code, msg: msg.into() }
    }

    fn usage(msg: impl Into<String>) -> Failure {
        Failure::new(EXIT_USAGE, msg)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Ineligible(_) => EXIT_INELIGIBLE,
            Error::TooLarge { .. } | Error::BlowupTooLarge { .. } => EXIT_USAGE,
            Error::InfeasiblePoint(_) | Error::IterationCap(_) | Error::Numerical(_) => EXIT_NUMERICAL,
            Error::Parse { .. }
            | Error::InvalidInstance(_)
            | Error::ClusteringMismatch { .. }
            | Error::SolutionMismatch { .. }
            | Error::Scheme(_)
            | Error::NotATriangle(..)
            | Error::Json(_) => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Lp(a) => cmd_lp(a),
        Cmd::Round(a) => cmd_round(a),
        Cmd::Certify(a) => cmd_certify(a),
        Cmd::Opt(a) => cmd_opt(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Bounds(a) => cmd_bounds(a),
        Cmd::LowerBound(a) => cmd_lower_bound(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn meta(command: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    if let Value::Object(extra) = fields {
        m.extend(extra);
    }
    Value::Object(m)
}

/// `{"meta": ..., ...body}` for an object body.
fn with_meta(meta: Value, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("meta".into(), meta);
    if let Value::Object(fields) = body {
        m.extend(fields);
    }
    Value::Object(m)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json(out: Option<&Path>, v: &Value) -> Result<(), Failure> {
    write_output(out, &serde_json::to_string_pretty(v).expect("values serialize"))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(parse_instance(&read_text(path)?)?)
}

fn load_scheme(id: &str) -> Result<RoundingScheme, Failure> {
    if let Some(s) = RoundingScheme::preset(id) {
        return Ok(s);
    }
    let path = Path::new(id);
    if !path.exists() {
        return Err(Failure::usage(format!(
            "unknown scheme `{id}`: not a preset ({}) or a file",
            corrclust::rounding::scheme::PRESETS.join(", ")
        )));
    }
    Ok(RoundingScheme::from_json(&read_text(path)?)?)
}

/// Ratio each preset is certified for.
fn default_alpha(s: &RoundingScheme) -> Option<f64> {
    match s.name.as_str() {
        "acn_linear" | "kpartite3" => Some(3.0),
        "complete206" => Some(2.06),
        "weighted_ti_150" => Some(1.5),
        "weighted_ti_153" => Some(1.53),
        _ => None,
    }
}

fn default_class(s: &RoundingScheme) -> GraphClass {
    if s.neutral.is_some() {
        GraphClass::KPartite
    } else if s.name.starts_with("weighted") {
        GraphClass::WeightedComplete
    } else {
        GraphClass::Complete
    }
}

fn clustering_json(c: &Clustering) -> Value {
    json!({ "assignment": c.assignment(), "clusters": c.clusters() })
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let inst = match a.family {
        GenFamily::Complete { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::usage("--p must lie in [0, 1]"));
            }
            gen_complete_random(n, p, seed)
        }
        GenFamily::Kpartite { parts, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::usage("--p must lie in [0, 1]"));
            }
            gen_kpartite_random(&parts, p, seed).map_err(|e| Failure::usage(e.to_string()))?
        }
        GenFamily::Planted { n, k, noise, seed } => {
            gen_planted(n, k, noise, seed).map_err(|e| Failure::usage(e.to_string()))?.0
        }
        GenFamily::GapTi { n } => {
            if n == 0 {
                return Err(Failure::usage("--n must be positive"));
            }
            gen_gap_triangle_ineq(n)
        }
        GenFamily::GapKpartite { half } => {
            if half == 0 {
                return Err(Failure::usage("--half must be positive"));
            }
            gap_kpartite_lp_point(&BipartiteGraph::cycle(half))?.0
        }
        GenFamily::Blowup { instance, copies, seed } => weighted_to_unweighted(&read_instance(&instance)?, copies, seed)?.0,
    };
    let text = match a.format {
        InstanceFormat::Edges => serialize_instance(&inst),
        InstanceFormat::Json => serialize_instance_json(&inst),
    };
    write_output(a.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_lp(a: LpArgs) -> CmdResult {
    let inst = read_instance(&a.instance)?;
    let (x, stats) = solve_relaxation(&inst, a.tol)?;
    let remaining = separate_triangle_violations(&x, a.tol).len();
    let mut body = json!({
        "n": inst.n(),
        "class": inst.class().name(),
        "objective": stats.objective,
        "iterations": stats.iterations,
        "separation_rounds": stats.separation_rounds,
        "constraints_generated": stats.constraints_generated,
        "round_objectives": stats.round_objectives,
        "violations_remaining": remaining,
    });
    match &a.out {
        Some(path) => {
            write_output(Some(path), &serialize_lp_solution(&x, Some(stats.objective)))?;
            body["solution_file"] = json!(path.display().to_string());
        }
        None => body["x"] = json!(x.matrix()),
    }
    write_json(None, &with_meta(meta("lp", json!({ "tol": a.tol })), body))?;
    Ok(0)
}

fn load_or_solve(inst: &Instance, lp: Option<&Path>) -> Result<(LpSolution, f64), Failure> {
    match lp {
        Some(path) => {
            let (x, _) = parse_lp_solution(&read_text(path)?)?;
            let objective = corrclust::lp::lp_objective(inst, &x)?;
            Ok((x, objective))
        }
        None => {
            let (x, stats) = solve_relaxation(inst, FEAS_TOL)?;
            Ok((x, stats.objective))
        }
    }
}

fn cmd_round(a: RoundArgs) -> CmdResult {
    let inst = read_instance(&a.instance)?;
    let s = load_scheme(&a.scheme)?;
    let (x, lp) = load_or_solve(&inst, a.lp.as_deref())?;
    let ratio = |cost: f64| if lp > 0.0 { json!(cost / lp) } else { Value::Null };
    let (m, body) = match a.mode {
        RoundMode::Random => {
            let seed = a.seed.ok_or_else(|| Failure::usage("random rounding needs --seed"))?;
            let (c, trace) = pivot_round(&inst, &x, &s, seed)?;
            let cost = clustering_cost(&inst, &c)?;
            let m = meta("round", json!({ "seed": seed, "mode": "random", "scheme": s.name }));
            let mut body = clustering_json(&c);
            body["cost"] = json!(cost);
            body["lp"] = json!(lp);
            body["ratio"] = ratio(cost);
            body["pivots"] = json!(trace.steps.iter().map(|st| st.pivot).collect::<Vec<_>>());
            (m, body)
        }
        RoundMode::Derand => {
            let alpha = a
                .alpha
                .or_else(|| default_alpha(&s))
                .ok_or_else(|| Failure::usage(format!("scheme `{}` has no default ratio; pass --alpha", s.name)))?;
            let out = derandomize_round_traced(&inst, &x, &s, alpha)?;
            let holds = out.cost <= alpha * lp + 1e-9;
            let m = meta("round", json!({ "mode": "derand", "scheme": s.name, "alpha": alpha }));
            let mut body = clustering_json(&out.clustering);
            body["cost"] = json!(out.cost);
            body["lp"] = json!(lp);
            body["ratio"] = ratio(out.cost);
            body["alpha"] = json!(alpha);
            body["within_alpha_lp"] = json!(holds);
            body["pivots"] = json!(out.trace.steps.iter().map(|st| st.pivot).collect::<Vec<_>>());
            write_json(a.out.as_deref(), &with_meta(m, body))?;
            if !holds {
                return Err(Failure::new(
                    EXIT_NUMERICAL,
                    format!("derandomized cost {} exceeds {alpha} * LP = {}", out.cost, alpha * lp),
                ));
            }
            return Ok(0);
        }
    };
    write_json(a.out.as_deref(), &with_meta(m, body))?;
    Ok(0)
}

fn cmd_certify(a: CertifyArgs) -> CmdResult {
    let s = load_scheme(&a.scheme)?;
    let class = match &a.class {
        Some(name) => GraphClass::from_name(name).ok_or_else(|| Failure::usage(format!("unknown class `{name}`")))?,
        None => default_class(&s),
    };
    if !(a.grid > 0.0 && a.grid <= 0.5) {
        return Err(Failure::usage("--grid must lie in (0, 1/2]"));
    }
    if a.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let opts = CertifyOptions { full_grid_fallback: !a.no_fallback, jobs: a.jobs };
    let report = if class == GraphClass::WeightedComplete {
        certify_weighted_ti_with(&s, a.alpha, a.grid, a.tol, opts)?
    } else {
        certify_with(&s, a.alpha, class, a.grid, a.tol, opts)?
    };
    let m = meta("certify", json!({ "scheme": s.name, "alpha": a.alpha, "grid": a.grid, "tol": a.tol }));
    let body = serde_json::to_value(&report).expect("reports serialize");
    write_json(a.out.as_deref(), &with_meta(m, body))?;
    let w = &report.witness;
    eprintln!(
        "{:?}: {} at alpha {} ({}), min surplus {:e} at lengths {:?}",
        report.verdict,
        s.name,
        a.alpha,
        class.name(),
        report.min_surplus,
        w.lengths
    );
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn cmd_opt(a: OptArgs) -> CmdResult {
    let inst = read_instance(&a.instance)?;
    let cap = max_brute_n()?;
    let mut body = if a.ratio {
        let r = integrality_ratio(&inst)?;
        let mut b = clustering_json(&r.argmin);
        b["opt"] = json!(r.opt);
        b["lp"] = json!(r.lp);
        b["ratio"] = json!(r.ratio);
        b
    } else {
        let (c, opt) = brute_force_opt(&inst)?;
        let mut b = clustering_json(&c);
        b["opt"] = json!(opt);
        b
    };
    body["n"] = json!(inst.n());
    write_json(a.out.as_deref(), &with_meta(meta("opt", json!({ "max_brute_n": cap })), body))?;
    Ok(0)
}

struct BenchRow {
    index: usize,
    seed: u64,
    n: usize,
    lp: f64,
    opt: Option<f64>,
    mean: f64,
    sem: f64,
    derand: f64,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let s = load_scheme(&a.scheme)?;
    let alpha = a
        .alpha
        .or_else(|| default_alpha(&s))
        .ok_or_else(|| Failure::usage(format!("scheme `{}` has no default ratio; pass --alpha", s.name)))?;
    if a.trials == 0 || a.instances == 0 || a.jobs == 0 {
        return Err(Failure::usage("--instances, --trials and --jobs must be positive"));
    }
    if !(0.0..=1.0).contains(&a.p) {
        return Err(Failure::usage("--p must lie in [0, 1]"));
    }
    let generate = |seed: u64| -> Result<Instance, Failure> {
        match a.family {
            Family::Complete => {
                let n = a.n.ok_or_else(|| Failure::usage("the complete family needs --n"))?;
                Ok(gen_complete_random(n, a.p, seed))
            }
            Family::Kpartite => {
                if a.parts.is_empty() {
                    return Err(Failure::usage("the k-partite family needs --parts"));
                }
                gen_kpartite_random(&a.parts, a.p, seed).map_err(|e| Failure::usage(e.to_string()))
            }
        }
    };
    let cap = max_brute_n()?;
    let mut rows = Vec::with_capacity(a.instances);
    for i in 0..a.instances {
        let seed = derive_seed(a.seed, i as u64);
        let inst = generate(seed)?;
        let (x, stats) = solve_relaxation(&inst, FEAS_TOL)?;
        let opt = if inst.n() <= cap { Some(brute_force_opt(&inst)?.1) } else { None };
        let mc = monte_carlo_ratio_jobs(&inst, &x, &s, a.trials, derive_seed(seed, 1), a.jobs)?;
        let derand = derandomize_round_traced(&inst, &x, &s, alpha)?.cost;
        rows.push(BenchRow { index: i, seed, n: inst.n(), lp: stats.objective, opt, mean: mc.mean, sem: mc.sem, derand });
    }

    let ratio = |v: f64, lp: f64| if lp > 0.0 { Some(v / lp) } else { None };
    let ratios: Vec<f64> = rows.iter().filter_map(|r| ratio(r.mean, r.lp)).collect();
    let k = ratios.len().max(1) as f64;
    let mean_ratio = ratios.iter().sum::<f64>() / k;
    let sd = if ratios.len() > 1 {
        (ratios.iter().map(|r| (r - mean_ratio).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    let m = meta(
        "bench",
        json!({
            "seed": a.seed,
            "family": match a.family { Family::Complete => "complete", Family::Kpartite => "kpartite" },
            "n": a.n,
            "parts": a.parts,
            "p": a.p,
            "instances": a.instances,
            "trials": a.trials,
            "scheme": s.name,
            "alpha": alpha,
        }),
    );
    let summary = json!({
        "mean_ratio": mean_ratio,
        "ratio_stddev": sd,
        "ratio_sem": sd / k.sqrt(),
        "derand_within_alpha_lp": rows.iter().filter(|r| r.derand <= alpha * r.lp + 1e-9).count(),
    });
    let text = match a.format {
        TableFormat::Csv => {
            let mut t = String::new();
            writeln!(t, "# meta {}", serde_json::to_string(&m).expect("meta serializes")).unwrap();
            writeln!(t, "# summary {}", serde_json::to_string(&summary).expect("summary serializes")).unwrap();
            writeln!(t, "instance,seed,n,lp,opt,mean_alg,sem_alg,derand_alg,ratio,derand_ratio").unwrap();
            for r in &rows {
                writeln!(
                    t,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.index,
                    r.seed,
                    r.n,
                    r.lp,
                    fmt_opt(r.opt),
                    r.mean,
                    r.sem,
                    r.derand,
                    fmt_opt(ratio(r.mean, r.lp)),
                    fmt_opt(ratio(r.derand, r.lp)),
                )
                .unwrap();
            }
            t
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "instance": r.index, "seed": r.seed, "n": r.n, "lp": r.lp, "opt": r.opt,
                        "mean_alg": r.mean, "sem_alg": r.sem, "derand_alg": r.derand,
                        "ratio": ratio(r.mean, r.lp), "derand_ratio": ratio(r.derand, r.lp),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&with_meta(m, json!({ "summary": summary, "rows": rows }))).expect("serializes")
        }
    };
    write_output(a.out.as_deref(), &text)?;
    Ok(0)
}

fn bound_cell(b: Bound) -> String {
    match b {
        Bound::Value(v) => v.to_string(),
        Bound::Vacuous => "vacuous".into(),
        Bound::Infeasible => "infeasible".into(),
    }
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    if !(a.step > 0.0 && a.step <= 1.0) {
        return Err(Failure::usage("--step must lie in (0, 1]"));
    }
    let rows = bound_curves(a.alpha).tabulate(a.step);
    let m = meta("bounds", json!({ "alpha": a.alpha, "grid": a.step }));
    let text = match a.format {
        TableFormat::Csv => {
            let mut t = format!("# meta {}\nx,f_minus_lower,f_plus_upper,f_plus_lower\n", serde_json::to_string(&m).unwrap());
            for r in &rows {
                writeln!(
                    t,
                    "{},{},{},{}",
                    r.x,
                    bound_cell(r.f_minus_lower),
                    bound_cell(r.f_plus_upper),
                    bound_cell(r.f_plus_lower)
                )
                .unwrap();
            }
            t
        }
        TableFormat::Json => serde_json::to_string_pretty(&with_meta(m, json!({ "rows": rows }))).unwrap(),
    };
    write_output(a.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_lower_bound(a: LowerBoundArgs) -> CmdResult {
    let body = match (a.x, a.scan) {
        (Some(x), None) => {
            if !(0.0..=0.5).contains(&x) {
                return Err(Failure::usage("--x must lie in [0, 1/2]"));
            }
            serde_json::to_value(lower_bound_check(a.alpha, x)).unwrap()
        }
        (None, Some(step)) => {
            if !(step > 0.0 && step <= 0.5) {
                return Err(Failure::usage("--scan must lie in (0, 1/2]"));
            }
            let hits = lower_bound_scan(a.alpha, step);
            json!({ "alpha": a.alpha, "step": step, "ruled_out": !hits.is_empty(), "contradictions": hits })
        }
        _ => return Err(Failure::usage("pass exactly one of --x or --scan")),
    };
    write_json(a.out.as_deref(), &with_meta(meta("lower-bound", json!({ "alpha": a.alpha })), body))?;
    Ok(0)
}
