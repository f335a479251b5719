//! Gadget reductions between catalog problems, their composition, and
//! exhaustive checkers for the correspondence properties.

mod blowup;
mod check;
mod ddp;
mod preserving;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result, SspError};
use crate::problems::{Cnf, Lit, ProblemInstance, ProblemKind};
use crate::ssp::{DistanceMeasure, InjectiveMap};

pub use blowup::{beta_adjusted, beta_table, build_blowup};
pub use check::{
    check_blowup, check_blowup_measures, check_preserving, check_ssp, CheckKind, CheckStats, CheckVerdict, Counterexample,
};
pub use preserving::{build_preserving, PreservingParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArtifactKind {
    Ssp,
    Blowup,
    Preserving,
}

/// Blow-up factor per distance measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaTable {
    pub addition: u64,
    pub deletion: u64,
    pub hamming: u64,
}

impl BetaTable {
    pub fn uniform(b: u64) -> Self {
        BetaTable { addition: b, deletion: b, hamming: b }
    }

    /// `b` for the one-sided measures, `2b` for Hamming.
    pub fn one_sided(b: u64) -> Self {
        BetaTable { addition: b, deletion: b, hamming: 2 * b }
    }

    pub fn get(&self, m: DistanceMeasure) -> u64 {
        match m {
            DistanceMeasure::KappaAddition => self.addition,
            DistanceMeasure::KappaDeletion => self.deletion,
            DistanceMeasure::Hamming => self.hamming,
        }
    }
}

/// Which blow-up factor a builder uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaChoice {
    /// The published closed-form values.
    Table,
    /// Closed-form values with the per-edge corrections found by exhaustive checking.
    #[default]
    Adjusted,
    /// The same value for every measure.
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlowupEdge {
    #[serde(rename = "sat-3sat")]
    SatTo3Sat,
    #[serde(rename = "3sat-vc")]
    ThreeSatToVc,
    #[serde(rename = "3sat-is")]
    ThreeSatToIs,
    #[serde(rename = "3sat-subsetsum")]
    ThreeSatToSubsetSum,
    #[serde(rename = "3sat-dhampath")]
    ThreeSatToDHamPath,
    #[serde(rename = "3sat-2ddp")]
    ThreeSatTo2Ddp,
    #[serde(rename = "3sat-steiner")]
    ThreeSatToSteiner,
}

impl BlowupEdge {
    pub const ALL: [BlowupEdge; 7] = [
        BlowupEdge::SatTo3Sat,
        BlowupEdge::ThreeSatToVc,
        BlowupEdge::ThreeSatToIs,
        BlowupEdge::ThreeSatToSubsetSum,
        BlowupEdge::ThreeSatToDHamPath,
        BlowupEdge::ThreeSatTo2Ddp,
        BlowupEdge::ThreeSatToSteiner,
    ];

    pub fn source_kind(self) -> ProblemKind {
        match self {
            BlowupEdge::SatTo3Sat => ProblemKind::Sat,
            _ => ProblemKind::ThreeSat,
        }
    }

    pub fn target_kind(self) -> ProblemKind {
        match self {
            BlowupEdge::SatTo3Sat => ProblemKind::ThreeSat,
            BlowupEdge::ThreeSatToVc => ProblemKind::VertexCover,
            BlowupEdge::ThreeSatToIs => ProblemKind::IndependentSet,
            BlowupEdge::ThreeSatToSubsetSum => ProblemKind::SubsetSum,
            BlowupEdge::ThreeSatToDHamPath => ProblemKind::DHamPath,
            BlowupEdge::ThreeSatTo2Ddp => ProblemKind::TwoDdp,
            BlowupEdge::ThreeSatToSteiner => ProblemKind::SteinerTree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PreservingEdge {
    #[serde(rename = "vc-ds")]
    VcToDs,
    #[serde(rename = "vc-sc")]
    VcToSc,
    #[serde(rename = "vc-hs")]
    VcToHs,
    #[serde(rename = "vc-fvs")]
    VcToFvs,
    #[serde(rename = "vc-fas")]
    VcToFas,
    #[serde(rename = "vc-ufl")]
    VcToUfl,
    #[serde(rename = "vc-pcenter")]
    VcToPCenter,
    #[serde(rename = "vc-pmedian")]
    VcToPMedian,
    #[serde(rename = "is-clique")]
    IsToClique,
    #[serde(rename = "subsetsum-knapsack")]
    SubsetSumToKnapsack,
    #[serde(rename = "subsetsum-partition")]
    SubsetSumToPartition,
    #[serde(rename = "partition-scheduling")]
    PartitionToScheduling,
    #[serde(rename = "dhampath-dhamcycle")]
    DHamPathToDHamCycle,
    #[serde(rename = "dhamcycle-uhamcycle")]
    DHamCycleToUHamCycle,
    #[serde(rename = "uhamcycle-tsp")]
    UHamCycleToTsp,
    #[serde(rename = "2ddp-kddp")]
    TwoDdpToKDdp,
}

impl PreservingEdge {
    pub const ALL: [PreservingEdge; 16] = [
        PreservingEdge::VcToDs,
        PreservingEdge::VcToSc,
        PreservingEdge::VcToHs,
        PreservingEdge::VcToFvs,
        PreservingEdge::VcToFas,
        PreservingEdge::VcToUfl,
        PreservingEdge::VcToPCenter,
        PreservingEdge::VcToPMedian,
        PreservingEdge::IsToClique,
        PreservingEdge::SubsetSumToKnapsack,
        PreservingEdge::SubsetSumToPartition,
        PreservingEdge::PartitionToScheduling,
        PreservingEdge::DHamPathToDHamCycle,
        PreservingEdge::DHamCycleToUHamCycle,
        PreservingEdge::UHamCycleToTsp,
        PreservingEdge::TwoDdpToKDdp,
    ];

    pub fn source_kind(self) -> ProblemKind {
        use PreservingEdge as E;
        match self {
            E::VcToDs
            | E::VcToSc
            | E::VcToHs
            | E::VcToFvs
            | E::VcToFas
            | E::VcToUfl
            | E::VcToPCenter
            | E::VcToPMedian => ProblemKind::VertexCover,
            E::IsToClique => ProblemKind::IndependentSet,
            E::SubsetSumToKnapsack | E::SubsetSumToPartition => ProblemKind::SubsetSum,
            E::PartitionToScheduling => ProblemKind::Partition,
            E::DHamPathToDHamCycle => ProblemKind::DHamPath,
            E::DHamCycleToUHamCycle => ProblemKind::DHamCycle,
            E::UHamCycleToTsp => ProblemKind::UHamCycle,
            E::TwoDdpToKDdp => ProblemKind::TwoDdp,
        }
    }

    pub fn target_kind(self) -> ProblemKind {
        use PreservingEdge as E;
        match self {
            E::VcToDs => ProblemKind::DominatingSet,
            E::VcToSc => ProblemKind::SetCover,
            E::VcToHs => ProblemKind::HittingSet,
            E::VcToFvs => ProblemKind::FeedbackVertexSet,
            E::VcToFas => ProblemKind::FeedbackArcSet,
            E::VcToUfl => ProblemKind::Ufl,
            E::VcToPCenter => ProblemKind::PCenter,
            E::VcToPMedian => ProblemKind::PMedian,
            E::IsToClique => ProblemKind::Clique,
            E::SubsetSumToKnapsack => ProblemKind::Knapsack,
            E::SubsetSumToPartition => ProblemKind::Partition,
            E::PartitionToScheduling => ProblemKind::Scheduling,
            E::DHamPathToDHamCycle => ProblemKind::DHamCycle,
            E::DHamCycleToUHamCycle => ProblemKind::UHamCycle,
            E::UHamCycleToTsp => ProblemKind::Tsp,
            E::TwoDdpToKDdp => ProblemKind::KDdp,
        }
    }
}

/// Any single reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Blowup(BlowupEdge),
    Preserving(PreservingEdge),
}

impl Edge {
    pub fn all() -> impl Iterator<Item = Edge> {
        BlowupEdge::ALL
            .into_iter()
            .map(Edge::Blowup)
            .chain(PreservingEdge::ALL.into_iter().map(Edge::Preserving))
    }

    pub fn name(self) -> String {
        format!("{}-{}", self.source_kind(), self.target_kind())
    }

    pub fn source_kind(self) -> ProblemKind {
        match self {
            Edge::Blowup(e) => e.source_kind(),
            Edge::Preserving(e) => e.source_kind(),
        }
    }

    pub fn target_kind(self) -> ProblemKind {
        match self {
            Edge::Blowup(e) => e.target_kind(),
            Edge::Preserving(e) => e.target_kind(),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for BlowupEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Edge::Blowup(*self).fmt(f)
    }
}

impl fmt::Display for PreservingEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Edge::Preserving(*self).fmt(f)
    }
}

impl FromStr for Edge {
    type Err = SspError;
    fn from_str(s: &str) -> Result<Self> {
        let want = s.trim().to_ascii_lowercase().replace(['>', '_'], "-");
        Edge::all()
            .find(|e| e.name() == want)
            .ok_or_else(|| SspError::Format(format!("unknown reduction edge `{s}`")))
    }
}

/// Parse a comma-separated chain, listed in application order.
pub fn parse_chain(s: &str) -> Result<Vec<Edge>> {
    let edges: Vec<Edge> = s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    if edges.is_empty() {
        bail!(Format, "empty reduction chain");
    }
    for w in edges.windows(2) {
        if w[0].target_kind() != w[1].source_kind() {
            bail!(Composition, "{} produces {}, but {} expects {}", w[0], w[0].target_kind(), w[1], w[1].source_kind());
        }
    }
    Ok(edges)
}

/// A built reduction: `target = g(source)` plus the universe embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionArtifact {
    pub edge: String,
    pub kind: ArtifactKind,
    pub source: ProblemInstance,
    pub target: ProblemInstance,
    /// `f[i]` is the target element that source element `i` maps to.
    pub f: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lb: Option<Vec<Lit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<DistanceMeasure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaTable>,
    #[serde(default)]
    pub u_on: Vec<usize>,
    #[serde(default)]
    pub u_off: Vec<usize>,
}

impl ReductionArtifact {
    pub fn embedding(&self) -> Result<InjectiveMap> {
        InjectiveMap::total(self.f.clone(), self.target.universe_size())
    }

    /// Structural consistency, independent of any enumeration.
    pub fn validate(&self) -> Result<()> {
        self.source.validate()?;
        self.target.validate()?;
        if self.f.len() != self.source.universe_size() {
            bail!(Format, "embedding has {} entries, source universe has {}", self.f.len(), self.source.universe_size());
        }
        self.embedding()?;
        let n = self.target.universe_size();
        for &u in self.u_on.iter().chain(&self.u_off) {
            if u >= n {
                bail!(Format, "partition element {u} outside the target universe");
            }
        }
        if self.kind == ArtifactKind::Blowup {
            let lb = match &self.lb {
                Some(lb) => lb,
                None => bail!(Format, "blow-up artifact without L_b"),
            };
            if self.beta.is_none() {
                bail!(Format, "blow-up artifact without beta");
            }
            let f = match &self.source {
                ProblemInstance::Sat(f) | ProblemInstance::ThreeSat(f) => f,
                _ => bail!(Format, "blow-up artifact with non-CNF source"),
            };
            lb_mask(f, lb)?;
        }
        Ok(())
    }

    /// Target indices of `f(L_b)`.
    pub fn lb_image(&self) -> Vec<usize> {
        self.lb.as_deref().unwrap_or(&[]).iter().map(|l| self.f[l.index()]).collect()
    }
}

/// Per-variable blow-up flags; rejects sets that are not closed under negation.
pub fn lb_mask(f: &Cnf, lb: &[Lit]) -> Result<Vec<bool>> {
    let set: BTreeSet<Lit> = lb.iter().copied().collect();
    let mut mask = vec![false; f.num_vars];
    for &l in &set {
        if l.var >= f.num_vars {
            bail!(Precondition, "blown-up literal {l} references an undeclared variable");
        }
        if !set.contains(&l.negate()) {
            bail!(Precondition, "L_b contains {l} but not its negation");
        }
        mask[l.var] = true;
    }
    Ok(mask)
}

/// Negation-closed literal set for the listed variables.
pub fn lb_from_vars(vars: &[usize]) -> Vec<Lit> {
    let mut v: Vec<usize> = vars.to_vec();
    v.sort_unstable();
    v.dedup();
    v.into_iter().flat_map(|x| [Lit::pos(x), Lit::neg(x)]).collect()
}

/// `outer ∘ inner`.
pub fn compose(outer: &ReductionArtifact, inner: &ReductionArtifact) -> Result<ReductionArtifact> {
    if inner.target.kind() != outer.source.kind() {
        bail!(
            Composition,
            "{} ends in {}, but {} starts from {}",
            inner.edge,
            inner.target.kind(),
            outer.edge,
            outer.source.kind()
        );
    }
    if inner.target != outer.source {
        bail!(Composition, "{} was not built on the target of {}", outer.edge, inner.edge);
    }
    use ArtifactKind as K;
    let kind = match (outer.kind, inner.kind) {
        (K::Blowup, K::Blowup) => {
            bail!(Unsupported, "blow-up reductions do not compose with each other")
        }
        (K::Preserving, K::Preserving) => K::Preserving,
        (K::Preserving, K::Blowup) => K::Blowup,
        _ => K::Ssp,
    };
    let f: Vec<usize> = inner.f.iter().map(|&x| outer.f[x]).collect();
    let (u_on, u_off) = if kind == K::Preserving {
        let mut on: Vec<usize> = inner.u_on.iter().map(|&x| outer.f[x]).chain(outer.u_on.iter().copied()).collect();
        let mut off: Vec<usize> = inner.u_off.iter().map(|&x| outer.f[x]).chain(outer.u_off.iter().copied()).collect();
        on.sort_unstable();
        off.sort_unstable();
        (on, off)
    } else {
        (Vec::new(), Vec::new())
    };
    let blow = kind == K::Blowup;
    Ok(ReductionArtifact {
        edge: format!("{},{}", inner.edge, outer.edge),
        kind,
        source: inner.source.clone(),
        target: outer.target.clone(),
        f,
        lb: if blow { inner.lb.clone() } else { None },
        measure: if blow { inner.measure } else { None },
        beta: if blow { inner.beta } else { None },
        u_on,
        u_off,
    })
}

/// Options shared by chain builds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainOptions {
    pub lb: Vec<Lit>,
    pub measure: Option<DistanceMeasure>,
    pub beta: BetaChoice,
    pub params: PreservingParams,
}

/// Build `edges` in order starting from `source` and compose the results.
pub fn build_chain(edges: &[Edge], source: &ProblemInstance, opts: &ChainOptions) -> Result<ReductionArtifact> {
    let mut acc: Option<ReductionArtifact> = None;
    for &e in edges {
        let input = acc.as_ref().map(|a| &a.target).unwrap_or(source);
        let step = match e {
            Edge::Blowup(b) => {
                let f = match input {
                    ProblemInstance::Sat(f) if b == BlowupEdge::SatTo3Sat => f,
                    ProblemInstance::ThreeSat(f) if b != BlowupEdge::SatTo3Sat => f,
                    other => bail!(Composition, "{e} cannot start from {}", other.kind()),
                };
                let m = opts.measure.unwrap_or(DistanceMeasure::Hamming);
                build_blowup(b, f, &opts.lb, m, opts.beta)?
            }
            Edge::Preserving(p) => build_preserving(p, input, &opts.params)?,
        };
        acc = Some(match acc {
            None => step,
            Some(prev) => compose(&step, &prev)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => bail!(Format, "empty reduction chain"),
    }
}
