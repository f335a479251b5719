//! Quantified satisfiability: the adjustable game, the hardness pipeline
//! into Comb. RR, and a plain exists-forall-exists evaluator.

use serde::{Deserialize, Serialize};

use super::CombRrInstance;
use crate::error::{bail, Result};
use crate::problems::{Cnf, Lit, ProblemInstance, ProblemKind};
use crate::reductions::{build_chain, lb_from_vars, ArtifactKind, BetaChoice, ChainOptions, Edge, ReductionArtifact};
use crate::ssp::{DistanceMeasure, Limits};

/// Adjustable 3SAT: commit to X, the adversary zeroes up to `gamma` variables
/// of Y, then Y and Z are completed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RAdjSatInstance {
    pub formula: Cnf,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub gamma: usize,
    /// Padding variables; they only occur in tautological clauses and never
    /// become blockable.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dummies: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RAdjSatOutcome {
    pub yes: bool,
    /// X variables set to true by the least winning first move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_x: Option<Vec<usize>>,
}

impl RAdjSatInstance {
    /// Pads the three blocks to equal size with fresh variables, each guarded
    /// by a clause `(d or not d or d)`.
    pub fn padded(formula: Cnf, mut x: Vec<usize>, mut y: Vec<usize>, mut z: Vec<usize>, gamma: usize) -> Result<Self> {
        let mut formula = formula;
        let width = x.len().max(y.len()).max(z.len());
        let mut dummies = Vec::new();
        for block in [&mut x, &mut y, &mut z] {
            while block.len() < width {
                let d = formula.num_vars;
                formula.num_vars += 1;
                if !formula.var_names.is_empty() {
                    formula.var_names.push(format!("pad{}", dummies.len() + 1));
                }
                formula.clauses.push(vec![Lit::pos(d), Lit::neg(d), Lit::pos(d)]);
                block.push(d);
                dummies.push(d);
            }
        }
        let inst = RAdjSatInstance { formula, x, y, z, gamma, dummies };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        self.formula.validate_3cnf()?;
        validate_partition(&self.formula, &self.x, &self.y, &self.z)?;
        if self.x.len() != self.y.len() || self.y.len() != self.z.len() {
            bail!(
                Precondition,
                "blocks have sizes {}, {}, {}; use padding to equalize",
                self.x.len(),
                self.y.len(),
                self.z.len()
            );
        }
        if let Some(d) = self.dummies.iter().find(|&&d| d >= self.formula.num_vars) {
            bail!(Domain, "padding variable {} is undeclared", d + 1);
        }
        Ok(())
    }

    /// Y variables the adversary may block.
    pub fn blockable_vars(&self) -> Vec<usize> {
        self.y.iter().copied().filter(|v| !self.dummies.contains(v)).collect()
    }
}

fn validate_partition(f: &Cnf, x: &[usize], y: &[usize], z: &[usize]) -> Result<()> {
    let mut owner = vec![0u8; f.num_vars];
    for (tag, block) in [(1u8, x), (2, y), (3, z)] {
        for &v in block {
            if v >= f.num_vars {
                bail!(Domain, "variable {} is undeclared", v + 1);
            }
            if owner[v] != 0 {
                bail!(Domain, "variable {} appears in two blocks", v + 1);
            }
            owner[v] = tag;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == 0) {
        bail!(Domain, "variable {} is in none of X, Y, Z", v + 1);
    }
    Ok(())
}

/// Backtracking under a quantifier prefix; a clause fails as soon as all of
/// its literals are assigned false.
struct Solver<'a> {
    f: &'a Cnf,
    occurs: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
}

impl<'a> Solver<'a> {
    fn new(f: &'a Cnf) -> Self {
        let mut occurs = vec![Vec::new(); f.num_vars];
        for (j, c) in f.clauses.iter().enumerate() {
            for l in c {
                if occurs[l.var].last() != Some(&j) {
                    occurs[l.var].push(j);
                }
            }
        }
        Solver { f, occurs, value: vec![None; f.num_vars] }
    }

    fn falsified(&self, j: usize) -> bool {
        self.f.clauses[j].iter().all(|l| self.value[l.var] == Some(l.neg))
    }

    fn assign(&mut self, v: usize, b: bool) -> bool {
        self.value[v] = Some(b);
        !self.occurs[v].iter().any(|&j| self.falsified(j))
    }

    /// Each block is `(vars, existential)`; assigned variables are skipped.
    fn eval(&mut self, blocks: &[(&[usize], bool)], bi: usize, vi: usize) -> bool {
        let Some(&(vars, exists)) = blocks.get(bi) else {
            return true;
        };
        if vi == vars.len() {
            return self.eval(blocks, bi + 1, 0);
        }
        let v = vars[vi];
        if self.value[v].is_some() {
            return self.eval(blocks, bi, vi + 1);
        }
        let mut result = !exists;
        for b in [false, true] {
            let ok = self.assign(v, b) && self.eval(blocks, bi, vi + 1);
            self.value[v] = None;
            if ok == exists {
                result = exists;
                break;
            }
        }
        result
    }

    fn fixed_ok(&self) -> bool {
        (0..self.f.clauses.len()).all(|j| !self.falsified(j))
    }
}

fn check_size(f: &Cnf, limits: &Limits) -> Result<()> {
    if f.num_vars > limits.max_universe {
        bail!(Capacity, "{} variables exceed the bound of {}", f.num_vars, limits.max_universe);
    }
    Ok(())
}

/// Truth of `exists X forall Y exists Z: phi`.
pub fn solve_eae_sat(f: &Cnf, x: &[usize], y: &[usize], z: &[usize], limits: &Limits) -> Result<bool> {
    f.validate()?;
    validate_partition(f, x, y, z)?;
    check_size(f, limits)?;
    let mut s = Solver::new(f);
    Ok(s.eval(&[(x, true), (y, false), (z, true)], 0, 0))
}

fn subsets_upto(items: &[usize], g: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &it in items {
        let grown: Vec<Vec<usize>> =
            out.iter().filter(|s| s.len() < g).map(|s| s.iter().copied().chain([it]).collect()).collect();
        out.extend(grown);
    }
    out
}

/// Exhaustive evaluation; first moves are tried in increasing binary order
/// of the X block, so the witness is the least winning one.
pub fn solve_radjsat(inst: &RAdjSatInstance, limits: &Limits) -> Result<RAdjSatOutcome> {
    inst.validate()?;
    check_size(&inst.formula, limits)?;
    let blockers = subsets_upto(&inst.blockable_vars(), inst.gamma);
    let rest: Vec<usize> = inst.y.iter().chain(&inst.z).copied().collect();
    let mut s = Solver::new(&inst.formula);
    for mask in 0u64..(1u64 << inst.x.len()) {
        let a_x: Vec<usize> = (0..inst.x.len()).filter(|i| mask >> i & 1 == 1).map(|i| inst.x[i]).collect();
        for (i, &v) in inst.x.iter().enumerate() {
            s.value[v] = Some(mask >> i & 1 == 1);
        }
        let wins = blockers.iter().all(|b| {
            for &v in b {
                s.value[v] = Some(false);
            }
            let ok = s.fixed_ok() && s.eval(&[(&rest, true)], 0, 0);
            for &v in b {
                s.value[v] = None;
            }
            ok
        });
        for &v in &inst.x {
            s.value[v] = None;
        }
        if wins {
            return Ok(RAdjSatOutcome { yes: true, a_x: Some(a_x) });
        }
    }
    Ok(RAdjSatOutcome { yes: false, a_x: None })
}

/// The reduction artifact behind `radjsat_to_comb_rr`, built with the blown
/// literals of X.
pub fn radjsat_artifact(
    inst: &RAdjSatInstance,
    chain: &[Edge],
    measure: DistanceMeasure,
    beta: BetaChoice,
) -> Result<ReductionArtifact> {
    inst.validate()?;
    match chain.first() {
        Some(e) if e.source_kind() == ProblemKind::ThreeSat => {}
        Some(e) => bail!(Composition, "{e} does not start from 3SAT"),
        None => bail!(Format, "empty reduction chain"),
    }
    let opts = ChainOptions { lb: lb_from_vars(&inst.x), measure: Some(measure), beta, ..Default::default() };
    let a = build_chain(chain, &ProblemInstance::ThreeSat(inst.formula.clone()), &opts)?;
    if a.kind != ArtifactKind::Blowup {
        bail!(Composition, "chain {} is not a blow-up reduction", a.edge);
    }
    Ok(a)
}

/// `B` is the image of the positive Y literals, `kappa` the blow-up factor of
/// the chosen measure and the budget is copied.
pub fn radjsat_to_comb_rr(inst: &RAdjSatInstance, chain: &[Edge], measure: DistanceMeasure) -> Result<CombRrInstance> {
    radjsat_to_comb_rr_with(inst, chain, measure, BetaChoice::default())
}

pub fn radjsat_to_comb_rr_with(
    inst: &RAdjSatInstance,
    chain: &[Edge],
    measure: DistanceMeasure,
    beta: BetaChoice,
) -> Result<CombRrInstance> {
    let a = radjsat_artifact(inst, chain, measure, beta)?;
    let kappa = a.beta.expect("blow-up artifacts carry beta").get(measure);
    let mut blockable: Vec<usize> = inst.blockable_vars().iter().map(|&v| a.f[Lit::pos(v).index()]).collect();
    blockable.sort_unstable();
    Ok(CombRrInstance { instance: a.target, blockable, gamma: inst.gamma, kappa, measure })
}
