//! Recoverable robust variants: budgeted scenario sets, exhaustive evaluators
//! for the combinatorial and cost formulations, and the R-Adj-Sat pipeline.

mod quant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};
use crate::problems::{enumerate_feasible, enumerate_solutions, ProblemInstance};
use crate::set::ElementSet;
use crate::ssp::{DistanceMeasure, Limits};

pub use quant::{
    radjsat_artifact, radjsat_to_comb_rr, radjsat_to_comb_rr_with, solve_eae_sat, solve_radjsat, RAdjSatInstance,
    RAdjSatOutcome,
};

/// Combinatorial RR: the adversary blocks up to `gamma` elements of `blockable`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombRrInstance {
    pub instance: ProblemInstance,
    pub blockable: Vec<usize>,
    pub gamma: usize,
    pub kappa: u64,
    pub measure: DistanceMeasure,
}

/// Cost RR over the feasible sets of a LOP instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostRrInstance {
    pub instance: ProblemInstance,
    pub c1: Vec<i64>,
    pub c_low: Vec<i64>,
    pub c_high: Vec<i64>,
    pub t_rr: i64,
    pub gamma: usize,
    pub kappa: u64,
    pub measure: DistanceMeasure,
}

/// Second-stage answer to one blocker or one scenario. `adversary` lists the
/// blocked elements, or the elements charged their upper cost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recovery {
    pub adversary: Vec<usize>,
    pub s2: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrWitness {
    pub s1: ElementSet,
    pub recoveries: Vec<Recovery>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombRrOutcome {
    pub yes: bool,
    pub witness: Option<RrWitness>,
}

/// `value` is `None` when it is infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostRrOutcome {
    pub value: Option<i64>,
    pub yes: bool,
    pub witness: Option<RrWitness>,
}

impl CombRrInstance {
    pub fn validate(&self) -> Result<()> {
        self.instance.validate()?;
        let n = self.instance.universe_size();
        if let Some(&b) = self.blockable.iter().find(|&&b| b >= n) {
            bail!(Domain, "blockable element {b} outside a universe of {n}");
        }
        Ok(())
    }

    fn blockers(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        let mut b = self.blockable.clone();
        b.sort_unstable();
        b.dedup();
        subsets_upto(&b, self.gamma, limits)
    }
}

impl CostRrInstance {
    pub fn validate(&self) -> Result<()> {
        self.instance.validate()?;
        self.instance.lop()?;
        let n = self.instance.universe_size();
        for (name, v) in [("c1", &self.c1), ("c_low", &self.c_low), ("c_high", &self.c_high)] {
            if v.len() != n {
                bail!(Format, "{name} has {} entries for a universe of {n}", v.len());
            }
        }
        if let Some(u) = (0..n).find(|&u| self.c_low[u] > self.c_high[u]) {
            bail!(Domain, "lower cost exceeds upper cost at element {u}");
        }
        Ok(())
    }

    /// Elements whose cost can actually rise.
    fn volatile(&self) -> Vec<usize> {
        (0..self.c_low.len()).filter(|&u| self.c_high[u] > self.c_low[u]).collect()
    }

    fn scenario_costs(&self, deviations: &[usize]) -> Vec<i64> {
        let mut c = self.c_low.clone();
        for &u in deviations {
            c[u] = self.c_high[u];
        }
        c
    }
}

/// All subsets of `items` with at most `g` elements, smallest first.
fn subsets_upto(items: &[usize], g: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=g.min(items.len()) {
        if k > 0 {
            binom = binom * (items.len() - k + 1) as u128 / k as u128;
        }
        total += binom;
    }
    if total > limits.max_solutions as u128 {
        bail!(Capacity, "{total} adversary choices exceed the cap of {}", limits.max_solutions);
    }
    let mut out = Vec::with_capacity(total as usize);
    fn rec(items: &[usize], g: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == g {
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, g, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, g, 0, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Every cost function of the budgeted scenario set, without duplicates.
pub fn enumerate_scenarios(inst: &CostRrInstance, limits: &Limits) -> Result<Vec<Vec<i64>>> {
    inst.validate()?;
    limits.check_universe(inst.instance.universe_size())?;
    Ok(subsets_upto(&inst.volatile(), inst.gamma, limits)?.iter().map(|d| inst.scenario_costs(d)).collect())
}

fn within(measure: DistanceMeasure, kappa: u64, s1: &ElementSet, family: &[ElementSet]) -> Vec<usize> {
    (0..family.len()).filter(|&j| measure.eval(s1, &family[j]) as u64 <= kappa).collect()
}

/// Exists S1, for all blockers B' of size at most gamma, exists S2 avoiding B'
/// within distance kappa. The witness uses the least S1 in canonical order.
pub fn eval_comb_rr(inst: &CombRrInstance, limits: &Limits) -> Result<CombRrOutcome> {
    inst.validate()?;
    let sols = enumerate_solutions(&inst.instance, limits)?;
    let blockers = inst.blockers(limits)?;
    let found = (0..sols.len()).into_par_iter().find_map_first(|i| {
        let near = within(inst.measure, inst.kappa, &sols[i], &sols);
        let mut recoveries = Vec::with_capacity(blockers.len());
        for b in &blockers {
            let j = near.iter().copied().find(|&j| b.iter().all(|&u| !sols[j].contains(u)))?;
            recoveries.push(Recovery { adversary: b.clone(), s2: sols[j].clone() });
        }
        Some(RrWitness { s1: sols[i].clone(), recoveries, objective: None })
    });
    Ok(CombRrOutcome { yes: found.is_some(), witness: found })
}

/// min over S1 of max over scenarios of min over S2 within kappa of
/// c1(S1) + c2(S2), all over the feasible sets; no feasible S2 means +inf.
pub fn eval_cost_rr(inst: &CostRrInstance, limits: &Limits) -> Result<CostRrOutcome> {
    inst.validate()?;
    let feas = enumerate_feasible(&inst.instance, limits)?;
    let scenarios = subsets_upto(&inst.volatile(), inst.gamma, limits)?;
    let costs: Vec<Vec<i64>> = scenarios.iter().map(|d| inst.scenario_costs(d)).collect();
    let cost_of = |c: &[i64], s: &ElementSet| s.iter().map(|u| c[u]).sum::<i64>();
    // (value, witness) per S1; None value is +inf
    let per_s1: Vec<(Option<i64>, Vec<Recovery>)> = (0..feas.len())
        .into_par_iter()
        .map(|i| {
            let first = cost_of(&inst.c1, &feas[i]);
            let near = within(inst.measure, inst.kappa, &feas[i], &feas);
            let mut worst = Some(i64::MIN);
            let mut recoveries = Vec::with_capacity(costs.len());
            for (d, c2) in scenarios.iter().zip(&costs) {
                let best = near.iter().map(|&j| (cost_of(c2, &feas[j]), j)).min();
                match best {
                    None => {
                        worst = None;
                        break;
                    }
                    Some((v, j)) => {
                        worst = worst.map(|w| w.max(first + v));
                        recoveries.push(Recovery { adversary: d.clone(), s2: feas[j].clone() });
                    }
                }
            }
            (worst, recoveries)
        })
        .collect();
    let best = (0..feas.len())
        .filter_map(|i| per_s1[i].0.map(|v| (v, i)))
        .min();
    Ok(match best {
        None => CostRrOutcome { value: None, yes: false, witness: None },
        Some((v, i)) => CostRrOutcome {
            value: Some(v),
            yes: v <= inst.t_rr,
            witness: Some(RrWitness { s1: feas[i].clone(), recoveries: per_s1[i].1.clone(), objective: Some(v) }),
        },
    })
}

/// Penalty construction: blocked elements cost `2t+1` in the adversary's
/// scenarios and the threshold doubles. Requires nonnegative nominal costs.
pub fn comb_to_cost_rr(inst: &CombRrInstance) -> Result<CostRrInstance> {
    inst.validate()?;
    let env = inst.instance.lop()?;
    if env.cost.iter().any(|&d| d < 0) {
        bail!(Unsupported, "{} has negative element costs; the penalty construction needs d >= 0", inst.instance.kind());
    }
    let t = env.threshold;
    let penalty = 2 * t + 1;
    let mut c_high = env.cost.clone();
    for &b in &inst.blockable {
        c_high[b] = penalty.max(env.cost[b]);
    }
    Ok(CostRrInstance {
        instance: inst.instance.clone(),
        c1: env.cost.clone(),
        c_low: env.cost,
        c_high,
        t_rr: 2 * t,
        gamma: inst.gamma,
        kappa: inst.kappa,
        measure: inst.measure,
    })
}
