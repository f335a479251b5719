use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sspforge::problems::{enumerate_solutions, Cnf, Lit, ProblemInstance};
use sspforge::reductions::{
    build_chain, check_blowup_measures, check_preserving, check_ssp, parse_chain, ArtifactKind, BetaTable, ChainOptions,
    CheckVerdict, Edge, PreservingParams, ReductionArtifact,
};
use sspforge::rr::{
    eval_comb_rr, eval_cost_rr, radjsat_to_comb_rr, solve_eae_sat, solve_radjsat, CombRrInstance, CostRrInstance,
    RAdjSatInstance,
};
use sspforge::{DistanceMeasure, ElementSet, Limits};

use crate::doc::{load_instance, read_json, read_text, to_json_pretty, write_text, InstanceDocument};
use crate::error::{CliError, Result};
use crate::report::RunReport;
use crate::{CheckArgs, Property, ReduceArgs, ReportArgs, SolveArgs, SolveMode};

/// `exists X forall Y exists Z` over a CNF; blocks hold 0-based variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaeSatDocument {
    pub formula: Cnf,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

pub fn default_artifact_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().and_then(|s| s.to_str()).unwrap_or("target");
    output.with_file_name(format!("{stem}.artifact.json"))
}

/// Bare variables add both literals; a sign prefix selects one.
pub fn parse_lb(text: &str, f: &Cnf) -> Result<Vec<Lit>> {
    let mut out = BTreeSet::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (sign, body) = match tok.strip_prefix(['~', '-', '!']) {
            Some(b) => (Some(true), b),
            None => match tok.strip_prefix('+') {
                Some(b) => (Some(false), b),
                None => (None, tok),
            },
        };
        let var = match body.parse::<usize>() {
            Ok(n) => n.checked_sub(1).filter(|&v| v < f.num_vars),
            Err(_) => (0..f.num_vars).find(|&v| f.var_name(v) == body),
        }
        .ok_or_else(|| CliError::Usage(format!("--lb names unknown variable `{body}`")))?;
        match sign {
            Some(neg) => {
                out.insert(Lit { var, neg });
            }
            None => {
                out.insert(Lit::pos(var));
                out.insert(Lit::neg(var));
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn beta_line(b: &BetaTable) -> String {
    format!("beta: addition {}, deletion {}, hamming {}", b.addition, b.deletion, b.hamming)
}

fn kind_name(k: ArtifactKind) -> &'static str {
    match k {
        ArtifactKind::Ssp => "ssp",
        ArtifactKind::Blowup => "blow-up",
        ArtifactKind::Preserving => "preserving",
    }
}

fn labels(inst: &ProblemInstance, s: &ElementSet) -> Vec<String> {
    let u = inst.universe();
    s.iter().map(|i| u.label(i).to_string()).collect()
}

pub fn reduce(a: &ReduceArgs) -> Result<RunReport> {
    let edges = match (&a.edge, &a.chain) {
        (Some(e), _) => vec![e.parse::<Edge>()?],
        (None, Some(c)) => parse_chain(c)?,
        (None, None) => return Err(CliError::Usage("reduce needs --edge or --chain".into())),
    };
    let source = load_instance(&a.input, Some(edges[0].source_kind()))?;
    let lb = match &source {
        ProblemInstance::Sat(f) | ProblemInstance::ThreeSat(f) => parse_lb(&a.lb, f)?,
        _ if a.lb.trim().is_empty() => Vec::new(),
        other => return Err(CliError::Usage(format!("--lb needs a CNF source, got {}", other.kind()))),
    };
    if !lb.is_empty() && !matches!(edges[0], Edge::Blowup(_)) {
        return Err(CliError::Usage(format!("--lb only applies to blow-up edges, {} is not one", edges[0])));
    }
    let opts = ChainOptions {
        lb,
        measure: Some(a.measure),
        beta: a.beta,
        params: PreservingParams { ddp_pairs: a.ddp_pairs },
    };
    let art = build_chain(&edges, &source, &opts)?;
    let artifact_path = a.artifact.clone().unwrap_or_else(|| default_artifact_path(&a.output));
    write_text(&a.output, &InstanceDocument::new(art.target.clone()).to_json())?;
    write_text(&artifact_path, &to_json_pretty(&art))?;

    let mut r = RunReport::new("reduce");
    r.input(&a.input)?;
    r.verdict(
        "build",
        true,
        format!(
            "{} ({}): {} source elements, {} target elements",
            art.edge,
            kind_name(art.kind),
            art.source.universe_size(),
            art.target.universe_size()
        ),
    );
    if let Some(b) = &art.beta {
        r.notes.push(beta_line(b));
    }
    r.notes.push(format!("target written to {}", a.output.display()));
    r.notes.push(format!("artifact written to {}", artifact_path.display()));
    r.details = json!({
        "edge": art.edge,
        "kind": art.kind,
        "measure": art.measure,
        "beta": art.beta,
        "source_universe": art.source.universe_size(),
        "target_universe": art.target.universe_size(),
        "u_on": art.u_on.len(),
        "u_off": art.u_off.len(),
        "output": a.output.display().to_string(),
        "artifact": artifact_path.display().to_string(),
    });
    Ok(r)
}

fn record(r: &mut RunReport, name: String, v: CheckVerdict, art: &ReductionArtifact, limits: &Limits) -> Result<()> {
    let s = v.stats;
    let mut detail = format!("{}; {} source / {} target solutions", v.reason, s.source_solutions, s.target_solutions);
    if s.pairs_checked > 0 {
        detail.push_str(&format!(", {} pairs", s.pairs_checked));
    }
    r.verdict(name.clone(), v.pass, detail);
    if let Some(cx) = v.counterexample {
        let confirmed = cx.replay(art, limits)?;
        r.counterexamples.push(json!({ "check": name, "counterexample": cx, "confirmed_by_replay": confirmed }));
    }
    Ok(())
}

pub fn check(a: &CheckArgs, limits: &Limits) -> Result<RunReport> {
    let art: ReductionArtifact = read_json(&a.artifact)?;
    art.validate().map_err(|e| CliError::parse(&a.artifact, e))?;
    let mut r = RunReport::new("check");
    r.input(&a.artifact)?;
    let measures: Vec<DistanceMeasure> = match (a.measure, art.measure) {
        (Some(m), _) | (None, Some(m)) => vec![m],
        (None, None) => DistanceMeasure::ALL.to_vec(),
    };
    let all = a.property == Property::All;
    if a.property == Property::Ssp || (all && art.kind != ArtifactKind::Preserving) {
        record(&mut r, "ssp".into(), check_ssp(&art, limits)?, &art, limits)?;
    }
    if a.property == Property::Blowup || (all && art.kind == ArtifactKind::Blowup) {
        for (m, v) in measures.iter().zip(check_blowup_measures(&art, &measures, limits)?) {
            record(&mut r, format!("blowup[{m}]"), v, &art, limits)?;
        }
    }
    if a.property == Property::Preserving || (all && art.kind == ArtifactKind::Preserving) {
        record(&mut r, "preserving".into(), check_preserving(&art, limits)?, &art, limits)?;
    }
    if let Some(b) = &art.beta {
        r.notes.push(beta_line(b));
    }
    r.details = json!({ "edge": art.edge, "kind": art.kind });
    Ok(r)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn solve(a: &SolveArgs, limits: &Limits) -> Result<RunReport> {
    if a.pipeline.is_some() && a.mode != SolveMode::Radjsat {
        return Err(CliError::Usage("--pipeline only applies to `solve radjsat`".into()));
    }
    let mut r = RunReport::new("solve");
    r.input(&a.input)?;
    match a.mode {
        SolveMode::Nominal => {
            let inst = load_instance(&a.input, None)?;
            let sols = enumerate_solutions(&inst, limits)?;
            let yes = !sols.is_empty();
            r.verdict(
                "nominal",
                true,
                format!("{} over {} elements: {} ({} solutions)", inst.kind(), inst.universe_size(), yes_no(yes), sols.len()),
            );
            let witness = sols.first().map(|s| labels(&inst, s));
            r.details = json!({ "kind": inst.kind().name(), "yes": yes, "solutions": sols.len(), "witness": witness });
        }
        SolveMode::CombRr => {
            let inst: CombRrInstance = read_json(&a.input)?;
            let out = eval_comb_rr(&inst, limits)?;
            let detail = format!(
                "{} with |B| = {}, gamma {}, kappa {} ({}): {}",
                inst.instance.kind(),
                inst.blockable.len(),
                inst.gamma,
                inst.kappa,
                inst.measure,
                yes_no(out.yes)
            );
            r.verdict("comb-rr", true, detail);
            r.details = serde_json::to_value(&out).expect("outcomes serialize");
        }
        SolveMode::CostRr => {
            let inst: CostRrInstance = read_json(&a.input)?;
            let out = eval_cost_rr(&inst, limits)?;
            let value = out.value.map_or("+inf".to_string(), |v| v.to_string());
            let detail = format!("{}: value {value} against threshold {}: {}", inst.instance.kind(), inst.t_rr, yes_no(out.yes));
            r.verdict("cost-rr", true, detail);
            r.details = serde_json::to_value(&out).expect("outcomes serialize");
        }
        SolveMode::Radjsat => {
            let raw: RAdjSatInstance = read_json(&a.input)?;
            // documents without explicit padding get blocks padded to equal size
            let inst = if raw.dummies.is_empty() {
                RAdjSatInstance::padded(raw.formula, raw.x, raw.y, raw.z, raw.gamma)?
            } else {
                raw
            };
            let out = solve_radjsat(&inst, limits)?;
            r.verdict("radjsat", true, format!("{} variables, gamma {}: {}", inst.formula.num_vars, inst.gamma, yes_no(out.yes)));
            let mut details = json!({ "radjsat": out });
            if let Some(chain) = &a.pipeline {
                let edges = parse_chain(chain)?;
                let comb = radjsat_to_comb_rr(&inst, &edges, a.measure)?;
                let got = eval_comb_rr(&comb, limits)?;
                r.verdict(
                    "pipeline",
                    got.yes == out.yes,
                    format!(
                        "comb-rr on {} ({} elements, kappa {}, {}): {}",
                        comb.instance.kind(),
                        comb.instance.universe_size(),
                        comb.kappa,
                        a.measure,
                        yes_no(got.yes)
                    ),
                );
                details["pipeline"] = json!({ "chain": chain, "kappa": comb.kappa, "comb_rr": got });
            }
            r.details = details;
        }
        SolveMode::EaeSat => {
            let d: EaeSatDocument = read_json(&a.input)?;
            let yes = solve_eae_sat(&d.formula, &d.x, &d.y, &d.z, limits)?;
            r.verdict("eae-sat", true, format!("{} variables: {}", d.formula.num_vars, yes_no(yes)));
            r.details = json!({ "yes": yes });
        }
    }
    Ok(r)
}

fn describe(path: &Path, text: &str) -> Result<(bool, String)> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::parse(path, e))?;
    let parse = |e: serde_json::Error| CliError::parse(path, e);
    if v.get("verdicts").is_some() {
        let rep: RunReport = serde_json::from_value(v).map_err(parse)?;
        let failed = rep.verdicts.iter().filter(|v| !v.pass).count();
        Ok((rep.pass(), format!("{} report, {} verdicts, {failed} failed", rep.command, rep.verdicts.len())))
    } else if v.get("edge").is_some() && v.get("f").is_some() {
        let art: ReductionArtifact = serde_json::from_value(v).map_err(parse)?;
        let mut d = format!(
            "{} artifact {}: {} -> {} elements",
            kind_name(art.kind),
            art.edge,
            art.source.universe_size(),
            art.target.universe_size()
        );
        if let Some(b) = &art.beta {
            d.push_str(&format!(", {}", beta_line(b)));
        }
        Ok((true, d))
    } else if v.get("kind").is_some() {
        let doc = InstanceDocument::from_json(text).map_err(|m| CliError::parse(path, m))?;
        Ok((true, format!("{} instance, {} elements", doc.instance.kind(), doc.instance.universe_size())))
    } else {
        Err(CliError::parse(path, "not a run report, artifact or instance document"))
    }
}

pub fn report(a: &ReportArgs) -> Result<RunReport> {
    let mut r = RunReport::new("report");
    for p in &a.files {
        r.input(p)?;
        let (pass, detail) = describe(p, &read_text(p)?)?;
        r.verdict(p.display().to_string(), pass, detail);
    }
    Ok(r)
}
