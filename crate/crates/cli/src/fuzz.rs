//! Seeded build-and-check runs. Every case draws from its own generator, so
//! a failing case can be regenerated from `(seed, case)` alone.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sspforge::gen;
use sspforge::problems::ProblemKind;
use sspforge::reductions::{
    build_blowup, build_preserving, check_blowup, check_preserving, check_ssp, BetaChoice, BetaTable, BlowupEdge,
    CheckVerdict, Edge, PreservingParams, ReductionArtifact,
};
use sspforge::rr::{comb_to_cost_rr, eval_comb_rr, eval_cost_rr, radjsat_to_comb_rr_with, solve_radjsat, CombRrInstance};
use sspforge::{DistanceMeasure, Limits, SspError};

use crate::doc::{to_json_pretty, write_text};
use crate::error::{CliError, Result};
use crate::report::RunReport;
use crate::{FuzzArgs, Mutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Edge(Edge),
    /// Adjustable 3SAT against Comb. RR of its pipeline image.
    RAdjSat,
    /// Comb. RR against the cost version built with penalties.
    CombCost,
}

impl Target {
    pub fn name(self) -> String {
        match self {
            Target::Edge(e) => e.name(),
            Target::RAdjSat => "radjsat".into(),
            Target::CombCost => "comb-cost".into(),
        }
    }
}

pub fn parse_targets(s: &str) -> Result<Vec<Target>> {
    if s.trim() == "all" {
        return Ok(Edge::all().map(Target::Edge).chain([Target::RAdjSat, Target::CombCost]).collect());
    }
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let t = match tok {
            "radjsat" => Target::RAdjSat,
            "comb-cost" => Target::CombCost,
            e => Target::Edge(e.parse()?),
        };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty edge set".into()));
    }
    Ok(out)
}

/// Nonnegative-cost LOP kinds accepted by the penalty construction.
const COST_KINDS: [ProblemKind; 16] = [
    ProblemKind::VertexCover,
    ProblemKind::DominatingSet,
    ProblemKind::FeedbackVertexSet,
    ProblemKind::FeedbackArcSet,
    ProblemKind::SetCover,
    ProblemKind::HittingSet,
    ProblemKind::SubsetSum,
    ProblemKind::Partition,
    ProblemKind::Scheduling,
    ProblemKind::DHamPath,
    ProblemKind::DHamCycle,
    ProblemKind::UHamCycle,
    ProblemKind::Tsp,
    ProblemKind::TwoDdp,
    ProblemKind::KDdp,
    ProblemKind::SteinerTree,
];

#[derive(Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub reason: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub counterexample: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<ReductionArtifact>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub instance: Value,
}

#[derive(Debug, Serialize)]
struct Replay<'a> {
    seed: u64,
    case: usize,
    case_seed: u64,
    target: String,
    bounds: Value,
    failure: &'a Failure,
}

pub fn case_seed(seed: u64, case: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(case as u64)
}

fn from_verdict(check: String, v: CheckVerdict, art: &ReductionArtifact) -> Option<Failure> {
    (!v.pass).then(|| Failure {
        check,
        reason: v.reason,
        counterexample: serde_json::to_value(&v.counterexample).expect("counterexamples serialize"),
        artifact: Some(art.clone()),
        instance: Value::Null,
    })
}

fn blowup_case(e: BlowupEdge, rng: &mut gen::Rng64, a: &FuzzArgs, limits: &Limits) -> Result<Option<Failure>> {
    let f = if e == BlowupEdge::SatTo3Sat {
        let vars = rng.gen_range(1..=a.max_vars);
        let clauses = rng.gen_range(1..=a.max_clauses);
        gen::cnf(rng, vars, clauses, 1..=5)
    } else {
        gen::three_cnf(rng, a.max_vars, a.max_clauses)
    };
    let lb = gen::blown_literals(rng, f.num_vars);
    for m in DistanceMeasure::ALL {
        let mut art = build_blowup(e, &f, &lb, m, BetaChoice::Adjusted)?;
        if a.inject == Some(Mutation::BetaZero) {
            art.beta = Some(BetaTable::uniform(0));
        }
        if let Some(x) = from_verdict(format!("ssp[{m}]"), check_ssp(&art, limits)?, &art) {
            return Ok(Some(x));
        }
        if let Some(x) = from_verdict(format!("blowup[{m}]"), check_blowup(&art, m, limits)?, &art) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn radjsat_case(rng: &mut gen::Rng64, a: &FuzzArgs, limits: &Limits) -> Result<Option<Failure>> {
    let inst = gen::radjsat(rng, 2, a.max_clauses.min(3), 2);
    let edge = [BlowupEdge::ThreeSatToVc, BlowupEdge::ThreeSatToIs][rng.gen_range(0..2)];
    let m = DistanceMeasure::ALL[rng.gen_range(0..3)];
    let beta = if a.inject == Some(Mutation::BetaZero) { BetaChoice::Fixed(0) } else { BetaChoice::Adjusted };
    let want = solve_radjsat(&inst, limits)?.yes;
    let comb = radjsat_to_comb_rr_with(&inst, &[Edge::Blowup(edge)], m, beta)?;
    let got = eval_comb_rr(&comb, limits)?.yes;
    Ok((got != want).then(|| Failure {
        check: format!("pipeline[{edge},{m}]"),
        reason: format!("adjustable 3SAT says {want}, Comb. RR of the image says {got}"),
        counterexample: Value::Null,
        artifact: None,
        instance: json!(inst),
    }))
}

fn comb_cost_case(rng: &mut gen::Rng64, a: &FuzzArgs, limits: &Limits) -> Result<Option<Failure>> {
    let max_u = a.max_source.min(10);
    // generated instances can be infeasible or untightenable; draw again
    for _ in 0..1000 {
        let kind = COST_KINDS[rng.gen_range(0..COST_KINDS.len())];
        let inst = gen::instance(rng, kind, max_u);
        if inst.validate().is_err() || inst.universe_size() > max_u {
            continue;
        }
        let Some(inst) = gen::tighten(&inst, limits)? else { continue };
        let u = inst.universe_size();
        let blockable = (0..u).filter(|_| rng.gen_bool(0.3)).collect();
        let measure = DistanceMeasure::ALL[rng.gen_range(0..3)];
        let comb = CombRrInstance { instance: inst, blockable, gamma: rng.gen_range(0..=2), kappa: rng.gen_range(0..=u as u64), measure };
        let want = eval_comb_rr(&comb, limits)?.yes;
        let cost = comb_to_cost_rr(&comb)?;
        let got = eval_cost_rr(&cost, limits)?;
        return Ok((got.yes != want).then(|| Failure {
            check: format!("comb-cost[{kind}]"),
            reason: format!("Comb. RR says {want}, cost RR value {:?} against threshold {}", got.value, cost.t_rr),
            counterexample: Value::Null,
            artifact: None,
            instance: json!(comb),
        }));
    }
    Err(SspError::Capacity("no usable Comb. RR instance within the source bound".into()).into())
}

fn run_case(t: Target, rng: &mut gen::Rng64, a: &FuzzArgs, limits: &Limits) -> Result<Option<Failure>> {
    match t {
        Target::Edge(Edge::Blowup(e)) => blowup_case(e, rng, a, limits),
        Target::Edge(Edge::Preserving(p)) => {
            let src = gen::preserving_source(rng, p, a.max_source);
            let art = build_preserving(p, &src, &PreservingParams::default())?;
            Ok(from_verdict("preserving".into(), check_preserving(&art, limits)?, &art))
        }
        Target::RAdjSat => radjsat_case(rng, a, limits),
        Target::CombCost => comb_cost_case(rng, a, limits),
    }
}

pub fn fuzz(a: &FuzzArgs, limits: &Limits) -> Result<RunReport> {
    let targets = parse_targets(&a.edges)?;
    if a.max_vars == 0 || a.max_clauses == 0 {
        return Err(CliError::Usage("--max-vars and --max-clauses must be positive".into()));
    }
    if a.max_source > limits.max_universe {
        return Err(SspError::Capacity(format!(
            "--max-source {} exceeds the universe bound {}",
            a.max_source, limits.max_universe
        ))
        .into());
    }
    let names: Vec<String> = targets.iter().map(|t| t.name()).collect();
    let bounds = json!({ "max_vars": a.max_vars, "max_clauses": a.max_clauses, "max_source": a.max_source });
    let mut r = RunReport::new("fuzz");
    r.details = json!({
        "seed": a.seed,
        "count": a.count,
        "edges": names,
        "bounds": bounds,
        "inject": a.inject.map(|_| "beta-zero"),
    });
    let mut passed = vec![0usize; targets.len()];
    for case in 0..a.count {
        let ti = case % targets.len();
        let cs = case_seed(a.seed, case);
        let mut rng = gen::rng(cs);
        let Some(fail) = run_case(targets[ti], &mut rng, a, limits)? else {
            passed[ti] += 1;
            continue;
        };
        for (i, name) in names.iter().enumerate().filter(|&(i, _)| passed[i] > 0) {
            r.verdict(name.clone(), true, format!("{} cases", passed[i]));
        }
        r.verdict(names[ti].clone(), false, format!("case {case}: {}: {}", fail.check, fail.reason));
        std::fs::create_dir_all(&a.replay_dir).map_err(|e| CliError::io(&a.replay_dir, e))?;
        let path = a.replay_dir.join(format!("fuzz-replay-{}-{case}.json", a.seed));
        let replay = Replay { seed: a.seed, case, case_seed: cs, target: names[ti].clone(), bounds: bounds.clone(), failure: &fail };
        write_text(&path, &to_json_pretty(&replay))?;
        r.notes.push(format!("replay written to {}", path.display()));
        if let Some(art) = &fail.artifact {
            let ap = a.replay_dir.join(format!("fuzz-replay-{}-{case}.artifact.json", a.seed));
            write_text(&ap, &to_json_pretty(art))?;
            r.notes.push(format!("failing artifact written to {}; rerun with `sspforge check`", ap.display()));
        }
        r.counterexamples.push(json!({ "case": case, "target": names[ti], "check": fail.check, "counterexample": fail.counterexample }));
        return Ok(r);
    }
    for (i, name) in names.iter().enumerate() {
        r.verdict(name.clone(), true, format!("{} cases", passed[i]));
    }
    Ok(r)
}
