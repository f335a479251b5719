//! Exhaustive checkers. Every failing verdict carries a counterexample that
//! `Counterexample::replay` can confirm independently.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ArtifactKind, ReductionArtifact};
use crate::error::{bail, Result};
use crate::problems::enumerate_solutions;
use crate::set::ElementSet;
use crate::ssp::{DistanceMeasure, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Ssp,
    Blowup,
    Preserving,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    pub source_solutions: usize,
    pub target_solutions: usize,
    pub pairs_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Counterexample {
    /// A source solution whose image is not the trace of any target solution.
    SourceOnly { source: ElementSet },
    /// A target solution whose trace on `f(U)` is not the image of a source solution.
    TargetOnly { target: ElementSet },
    /// Two target solutions violating the blow-up biconditional.
    Pair { measure: DistanceMeasure, beta: u64, first: ElementSet, second: ElementSet, agree: bool, distance: usize },
    /// A target element not covered exactly once by `f(U)`, `U_on`, `U_off`.
    Partition { element: usize, hits: usize },
    OnViolated { target: ElementSet, element: usize },
    OffViolated { target: ElementSet, element: usize },
    Count { source: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub check: CheckKind,
    pub pass: bool,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub stats: CheckStats,
}

impl CheckVerdict {
    fn pass(check: CheckKind, stats: CheckStats) -> Self {
        CheckVerdict { check, pass: true, reason: "ok".into(), counterexample: None, stats }
    }

    fn fail(check: CheckKind, stats: CheckStats, reason: String, cx: Counterexample) -> Self {
        CheckVerdict { check, pass: false, reason, counterexample: Some(cx), stats }
    }
}

struct Families {
    source: Vec<ElementSet>,
    target: Vec<ElementSet>,
}

fn families(a: &ReductionArtifact, limits: &Limits) -> Result<Families> {
    a.validate()?;
    Ok(Families { source: enumerate_solutions(&a.source, limits)?, target: enumerate_solutions(&a.target, limits)? })
}

/// First violation of the SSP equation, in canonical order.
fn ssp_violation(a: &ReductionArtifact, fam: &Families) -> Option<(String, Counterexample)> {
    let source: BTreeSet<&ElementSet> = fam.source.iter().collect();
    let traces: BTreeSet<ElementSet> = fam.target.iter().map(|t| t.project(&a.f)).collect();
    if let Some(s) = fam.source.iter().find(|s| !traces.contains(*s)) {
        return Some((
            format!("source solution {s:?} has no target solution with that trace"),
            Counterexample::SourceOnly { source: s.clone() },
        ));
    }
    fam.target.iter().find(|t| !source.contains(&t.project(&a.f))).map(|t| {
        (
            format!("target solution {t:?} traces to {:?}, which is not a source solution", t.project(&a.f)),
            Counterexample::TargetOnly { target: t.clone() },
        )
    })
}

/// Both solution families are enumerated and compared on the embedded part;
/// equal families also give equal yes/no answers.
pub fn check_ssp(a: &ReductionArtifact, limits: &Limits) -> Result<CheckVerdict> {
    let fam = families(a, limits)?;
    let stats = CheckStats { source_solutions: fam.source.len(), target_solutions: fam.target.len(), pairs_checked: 0 };
    Ok(match ssp_violation(a, &fam) {
        None => CheckVerdict::pass(CheckKind::Ssp, stats),
        Some((reason, cx)) => CheckVerdict::fail(CheckKind::Ssp, stats, reason, cx),
    })
}

/// The biconditional over all ordered pairs of target solutions.
pub fn check_blowup(a: &ReductionArtifact, measure: DistanceMeasure, limits: &Limits) -> Result<CheckVerdict> {
    Ok(check_blowup_measures(a, &[measure], limits)?.remove(0))
}

/// `check_blowup` for several measures over a single enumeration of the target.
pub fn check_blowup_measures(
    a: &ReductionArtifact,
    measures: &[DistanceMeasure],
    limits: &Limits,
) -> Result<Vec<CheckVerdict>> {
    if a.kind != ArtifactKind::Blowup {
        bail!(Precondition, "{} is not a blow-up artifact", a.edge);
    }
    a.validate()?;
    let target = enumerate_solutions(&a.target, limits)?;
    let lb = a.lb_image();
    let keys: Vec<ElementSet> = target.iter().map(|t| t.project(&lb)).collect();
    Ok(measures.iter().map(|&m| pair_verdict(m, a.beta.expect("validated").get(m), &target, &keys)).collect())
}

fn pair_verdict(measure: DistanceMeasure, beta: u64, target: &[ElementSet], keys: &[ElementSet]) -> CheckVerdict {
    let n = target.len();
    let stats = CheckStats { source_solutions: 0, target_solutions: n, pairs_checked: (n as u64) * (n as u64) };
    let hit = (0..n).into_par_iter().find_map_first(|i| {
        (0..n).find_map(|j| {
            let agree = keys[i] == keys[j];
            let d = measure.eval(&target[i], &target[j]);
            (agree != (d as u64 <= beta)).then_some((i, j, agree, d))
        })
    });
    match hit {
        None => CheckVerdict::pass(CheckKind::Blowup, stats),
        Some((i, j, agree, distance)) => {
            let reason = if agree {
                format!("solutions agree on f(L_b) but are {distance} apart under {measure}, beta is {beta}")
            } else {
                format!("solutions differ on f(L_b) but are only {distance} apart under {measure}, beta is {beta}")
            };
            let cx = Counterexample::Pair {
                measure,
                beta,
                first: target[i].clone(),
                second: target[j].clone(),
                agree,
                distance,
            };
            CheckVerdict::fail(CheckKind::Blowup, stats, reason, cx)
        }
    }
}

fn partition_violation(a: &ReductionArtifact) -> Option<(usize, usize)> {
    let mut hits = vec![0usize; a.target.universe_size()];
    for &x in a.f.iter().chain(&a.u_on).chain(&a.u_off) {
        hits[x] += 1;
    }
    hits.iter().position(|&h| h != 1).map(|e| (e, hits[e]))
}

/// Partition witness, pinned elements, the SSP equation and the solution-count bijection.
pub fn check_preserving(a: &ReductionArtifact, limits: &Limits) -> Result<CheckVerdict> {
    if a.kind != ArtifactKind::Preserving {
        bail!(Precondition, "{} is not a preserving artifact", a.edge);
    }
    const K: CheckKind = CheckKind::Preserving;
    a.validate()?;
    if let Some((element, hits)) = partition_violation(a) {
        let reason = format!("target element {element} is covered {hits} times by f(U), U_on and U_off");
        return Ok(CheckVerdict::fail(K, CheckStats::default(), reason, Counterexample::Partition { element, hits }));
    }
    let fam = families(a, limits)?;
    let stats = CheckStats { source_solutions: fam.source.len(), target_solutions: fam.target.len(), pairs_checked: 0 };
    for t in &fam.target {
        if let Some(&element) = a.u_on.iter().find(|&&u| !t.contains(u)) {
            let reason = format!("target solution {t:?} misses U_on element {element}");
            return Ok(CheckVerdict::fail(K, stats, reason, Counterexample::OnViolated { target: t.clone(), element }));
        }
        if let Some(&element) = a.u_off.iter().find(|&&u| t.contains(u)) {
            let reason = format!("target solution {t:?} contains U_off element {element}");
            return Ok(CheckVerdict::fail(K, stats, reason, Counterexample::OffViolated { target: t.clone(), element }));
        }
    }
    if let Some((reason, cx)) = ssp_violation(a, &fam) {
        return Ok(CheckVerdict::fail(K, stats, reason, cx));
    }
    if fam.source.len() != fam.target.len() {
        let reason = format!("{} source solutions but {} target solutions", fam.source.len(), fam.target.len());
        let cx = Counterexample::Count { source: fam.source.len(), target: fam.target.len() };
        return Ok(CheckVerdict::fail(K, stats, reason, cx));
    }
    Ok(CheckVerdict::pass(K, stats))
}

impl Counterexample {
    /// True when the counterexample still demonstrates a failure of `a`.
    pub fn replay(&self, a: &ReductionArtifact, limits: &Limits) -> Result<bool> {
        a.validate()?;
        Ok(match self {
            Counterexample::SourceOnly { source } => {
                a.source.verify(source)?
                    && !enumerate_solutions(&a.target, limits)?.iter().any(|t| t.project(&a.f) == *source)
            }
            Counterexample::TargetOnly { target } => {
                a.target.verify(target)? && !a.source.verify(&target.project(&a.f))?
            }
            Counterexample::Pair { measure, beta, first, second, .. } => {
                let lb = a.lb_image();
                a.target.verify(first)?
                    && a.target.verify(second)?
                    && (first.project(&lb) == second.project(&lb)) != (measure.eval(first, second) as u64 <= *beta)
            }
            Counterexample::Partition { element, .. } => {
                partition_violation(a).is_some_and(|(e, _)| e == *element)
            }
            Counterexample::OnViolated { target, element } => {
                a.u_on.contains(element) && a.target.verify(target)? && !target.contains(*element)
            }
            Counterexample::OffViolated { target, element } => {
                a.u_off.contains(element) && a.target.verify(target)? && target.contains(*element)
            }
            Counterexample::Count { .. } => {
                enumerate_solutions(&a.source, limits)?.len() != enumerate_solutions(&a.target, limits)?.len()
            }
        })
    }
}
