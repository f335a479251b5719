//! The nominal problem catalog: instance types, verifiers and enumerators.

mod cycles;
mod enumerate;
mod facility;
mod hitting;
mod numbers;
mod paths;
mod sat;
mod steiner;
mod types;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{bail, Result, SspError};
use crate::set::ElementSet;
use crate::ssp::{Limits, LopEnvelope, Universe};

pub use enumerate::{brute_force_feasible, brute_force_solutions, enumerate_feasible, enumerate_solutions};
pub use types::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProblemKind {
    Sat,
    ThreeSat,
    VertexCover,
    IndependentSet,
    Clique,
    DominatingSet,
    FeedbackVertexSet,
    FeedbackArcSet,
    SetCover,
    HittingSet,
    Ufl,
    PCenter,
    PMedian,
    SubsetSum,
    Knapsack,
    Partition,
    Scheduling,
    DHamPath,
    DHamCycle,
    UHamCycle,
    Tsp,
    TwoDdp,
    KDdp,
    SteinerTree,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 24] = [
        ProblemKind::Sat,
        ProblemKind::ThreeSat,
        ProblemKind::VertexCover,
        ProblemKind::IndependentSet,
        ProblemKind::Clique,
        ProblemKind::DominatingSet,
        ProblemKind::FeedbackVertexSet,
        ProblemKind::FeedbackArcSet,
        ProblemKind::SetCover,
        ProblemKind::HittingSet,
        ProblemKind::Ufl,
        ProblemKind::PCenter,
        ProblemKind::PMedian,
        ProblemKind::SubsetSum,
        ProblemKind::Knapsack,
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

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Sat => "sat",
            ProblemKind::ThreeSat => "3sat",
            ProblemKind::VertexCover => "vc",
            ProblemKind::IndependentSet => "is",
            ProblemKind::Clique => "clique",
            ProblemKind::DominatingSet => "ds",
            ProblemKind::FeedbackVertexSet => "fvs",
            ProblemKind::FeedbackArcSet => "fas",
            ProblemKind::SetCover => "sc",
            ProblemKind::HittingSet => "hs",
            ProblemKind::Ufl => "ufl",
            ProblemKind::PCenter => "pcenter",
            ProblemKind::PMedian => "pmedian",
            ProblemKind::SubsetSum => "subsetsum",
            ProblemKind::Knapsack => "knapsack",
            ProblemKind::Partition => "partition",
            ProblemKind::Scheduling => "scheduling",
            ProblemKind::DHamPath => "dhampath",
            ProblemKind::DHamCycle => "dhamcycle",
            ProblemKind::UHamCycle => "uhamcycle",
            ProblemKind::Tsp => "tsp",
            ProblemKind::TwoDdp => "2ddp",
            ProblemKind::KDdp => "kddp",
            ProblemKind::SteinerTree => "steiner",
        }
    }

    /// SAT, 3SAT and the three facility kinds have no linear envelope.
    pub fn is_lop(self) -> bool {
        !matches!(
            self,
            ProblemKind::Sat
                | ProblemKind::ThreeSat
                | ProblemKind::Ufl
                | ProblemKind::PCenter
                | ProblemKind::PMedian
        )
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = SspError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SspError::Format(format!("unknown problem kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum ProblemInstance {
    Sat(Cnf),
    #[serde(rename = "3sat")]
    ThreeSat(Cnf),
    #[serde(rename = "vc")]
    VertexCover(GraphK),
    #[serde(rename = "is")]
    IndependentSet(GraphK),
    Clique(GraphK),
    #[serde(rename = "ds")]
    DominatingSet(GraphK),
    #[serde(rename = "fvs")]
    FeedbackVertexSet(DigraphK),
    #[serde(rename = "fas")]
    FeedbackArcSet(DigraphK),
    #[serde(rename = "sc")]
    SetCover(SetSystem),
    #[serde(rename = "hs")]
    HittingSet(SetSystem),
    Ufl(Facility),
    #[serde(rename = "pcenter")]
    PCenter(Facility),
    #[serde(rename = "pmedian")]
    PMedian(Facility),
    #[serde(rename = "subsetsum")]
    SubsetSum(SubsetSum),
    Knapsack(Knapsack),
    Partition(Partition),
    Scheduling(Scheduling),
    #[serde(rename = "dhampath")]
    DHamPath(DHamPath),
    #[serde(rename = "dhamcycle")]
    DHamCycle(Digraph),
    #[serde(rename = "uhamcycle")]
    UHamCycle(Graph),
    Tsp(Tsp),
    #[serde(rename = "2ddp")]
    TwoDdp(Ddp),
    #[serde(rename = "kddp")]
    KDdp(Ddp),
    #[serde(rename = "steiner")]
    SteinerTree(Steiner),
}

impl ProblemInstance {
    pub fn kind(&self) -> ProblemKind {
        use ProblemInstance as P;
        match self {
            P::Sat(_) => ProblemKind::Sat,
            P::ThreeSat(_) => ProblemKind::ThreeSat,
            P::VertexCover(_) => ProblemKind::VertexCover,
            P::IndependentSet(_) => ProblemKind::IndependentSet,
            P::Clique(_) => ProblemKind::Clique,
            P::DominatingSet(_) => ProblemKind::DominatingSet,
            P::FeedbackVertexSet(_) => ProblemKind::FeedbackVertexSet,
            P::FeedbackArcSet(_) => ProblemKind::FeedbackArcSet,
            P::SetCover(_) => ProblemKind::SetCover,
            P::HittingSet(_) => ProblemKind::HittingSet,
            P::Ufl(_) => ProblemKind::Ufl,
            P::PCenter(_) => ProblemKind::PCenter,
            P::PMedian(_) => ProblemKind::PMedian,
            P::SubsetSum(_) => ProblemKind::SubsetSum,
            P::Knapsack(_) => ProblemKind::Knapsack,
            P::Partition(_) => ProblemKind::Partition,
            P::Scheduling(_) => ProblemKind::Scheduling,
            P::DHamPath(_) => ProblemKind::DHamPath,
            P::DHamCycle(_) => ProblemKind::DHamCycle,
            P::UHamCycle(_) => ProblemKind::UHamCycle,
            P::Tsp(_) => ProblemKind::Tsp,
            P::TwoDdp(_) => ProblemKind::TwoDdp,
            P::KDdp(_) => ProblemKind::KDdp,
            P::SteinerTree(_) => ProblemKind::SteinerTree,
        }
    }

    pub fn universe_size(&self) -> usize {
        use ProblemInstance as P;
        match self {
            P::Sat(f) | P::ThreeSat(f) => f.num_literals(),
            P::VertexCover(g) | P::IndependentSet(g) | P::Clique(g) | P::DominatingSet(g) => g.graph.n,
            P::FeedbackVertexSet(g) => g.graph.n,
            P::FeedbackArcSet(g) => g.graph.arcs.len(),
            P::SetCover(s) => s.sets.len(),
            P::HittingSet(s) => s.ground,
            P::Ufl(f) | P::PCenter(f) | P::PMedian(f) => f.facilities(),
            P::SubsetSum(s) => s.items.len(),
            P::Knapsack(k) => k.prices.len(),
            P::Partition(p) => p.items.len(),
            P::Scheduling(s) => s.jobs.len(),
            P::DHamPath(p) => p.graph.arcs.len(),
            P::DHamCycle(g) => g.arcs.len(),
            P::UHamCycle(g) => g.edges.len(),
            P::Tsp(t) => t.n * t.n.saturating_sub(1) / 2,
            P::TwoDdp(d) | P::KDdp(d) => d.graph.arcs.len(),
            P::SteinerTree(s) => s.graph.edges.len(),
        }
    }

    /// Canonical labels of the universe elements, in index order.
    pub fn universe(&self) -> Universe {
        use ProblemInstance as P;
        let arcs = |g: &Digraph| -> Vec<String> {
            g.arcs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| format!("a{i}:{}>{}", g.vertex_name(a), g.vertex_name(b)))
                .collect()
        };
        let edges = |g: &Graph| -> Vec<String> {
            g.edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| format!("e{i}:{}-{}", g.vertex_name(a), g.vertex_name(b)))
                .collect()
        };
        let numbered = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let labels = match self {
            P::Sat(f) | P::ThreeSat(f) => (0..f.num_vars)
                .flat_map(|v| {
                    let name = f.var_name(v);
                    [name.clone(), format!("~{name}")]
                })
                .collect(),
            P::VertexCover(g) | P::IndependentSet(g) | P::Clique(g) | P::DominatingSet(g) => {
                (0..g.graph.n).map(|v| format!("v{v}:{}", g.graph.vertex_name(v))).collect()
            }
            P::FeedbackVertexSet(g) => {
                (0..g.graph.n).map(|v| format!("v{v}:{}", g.graph.vertex_name(v))).collect()
            }
            P::FeedbackArcSet(g) => arcs(&g.graph),
            P::SetCover(s) => numbered("S", s.sets.len()),
            P::HittingSet(s) => numbered("g", s.ground),
            P::Ufl(f) | P::PCenter(f) | P::PMedian(f) => numbered("f", f.facilities()),
            P::SubsetSum(s) => numbered("a", s.items.len()),
            P::Knapsack(k) => numbered("o", k.prices.len()),
            P::Partition(p) => numbered("a", p.items.len()),
            P::Scheduling(s) => numbered("j", s.jobs.len()),
            P::DHamPath(p) => arcs(&p.graph),
            P::DHamCycle(g) => arcs(g),
            P::UHamCycle(g) => edges(g),
            P::Tsp(t) => Tsp::edge_list(t.n).into_iter().map(|(i, j)| format!("e{i}-{j}")).collect(),
            P::TwoDdp(d) | P::KDdp(d) => arcs(&d.graph),
            P::SteinerTree(s) => edges(&s.graph),
        };
        Universe::new(labels).expect("canonical labels are unique")
    }

    /// Structural well-formedness.
    pub fn validate(&self) -> Result<()> {
        use ProblemInstance as P;
        match self {
            P::Sat(f) => f.validate(),
            P::ThreeSat(f) => f.validate_3cnf(),
            P::VertexCover(g) | P::IndependentSet(g) | P::Clique(g) | P::DominatingSet(g) => {
                g.graph.validate()
            }
            P::FeedbackVertexSet(g) | P::FeedbackArcSet(g) => g.graph.validate(),
            P::SetCover(s) | P::HittingSet(s) => s.validate(),
            P::Ufl(f) => f.validate(true),
            P::PCenter(f) | P::PMedian(f) => f.validate(false),
            P::SubsetSum(s) => positive(&s.items),
            P::Knapsack(k) => {
                if k.prices.len() != k.weights.len() {
                    bail!(Format, "{} prices for {} weights", k.prices.len(), k.weights.len());
                }
                positive(&k.prices)?;
                positive(&k.weights)
            }
            P::Partition(p) => positive(&p.items),
            P::Scheduling(s) => positive(&s.jobs),
            P::DHamPath(p) => {
                p.graph.validate()?;
                if p.s >= p.graph.n || p.t >= p.graph.n {
                    bail!(Format, "path endpoints outside the vertex set");
                }
                Ok(())
            }
            P::DHamCycle(g) => g.validate(),
            P::UHamCycle(g) => g.validate(),
            P::Tsp(t) => {
                if t.weights.len() != t.n * t.n.saturating_sub(1) / 2 {
                    bail!(Format, "{} weights for K_{}", t.weights.len(), t.n);
                }
                Ok(())
            }
            P::TwoDdp(d) | P::KDdp(d) => {
                d.graph.validate()?;
                if matches!(self, P::TwoDdp(_)) && d.pairs.len() != 2 {
                    bail!(Format, "2DDP needs exactly two terminal pairs, got {}", d.pairs.len());
                }
                let mut seen = vec![false; d.graph.n];
                for &(s, t) in &d.pairs {
                    for v in [s, t] {
                        if v >= d.graph.n {
                            bail!(Format, "terminal {v} outside the vertex set");
                        }
                        if std::mem::replace(&mut seen[v], true) {
                            bail!(Format, "terminal {v} used twice");
                        }
                    }
                }
                Ok(())
            }
            P::SteinerTree(s) => {
                s.graph.validate()?;
                if s.cost.len() != s.graph.edges.len() {
                    bail!(Format, "{} costs for {} edges", s.cost.len(), s.graph.edges.len());
                }
                if s.terminals.iter().any(|&t| t >= s.graph.n) {
                    bail!(Format, "terminal outside the vertex set");
                }
                if s.cost.iter().any(|&c| c < 0) {
                    bail!(Format, "edge costs must be nonnegative");
                }
                Ok(())
            }
        }
    }

    /// Membership test for the solution family.
    pub fn verify(&self, candidate: &ElementSet) -> Result<bool> {
        self.check_candidate(candidate)?;
        Ok(verify::is_solution(self, candidate))
    }

    /// Membership test for the feasible family of a LOP kind.
    pub fn verify_feasible(&self, candidate: &ElementSet) -> Result<bool> {
        if !self.kind().is_lop() {
            bail!(Unsupported, "{} has no feasible-set envelope", self.kind());
        }
        self.check_candidate(candidate)?;
        Ok(verify::is_feasible(self, candidate))
    }

    fn check_candidate(&self, c: &ElementSet) -> Result<()> {
        if c.universe_size() != self.universe_size() {
            bail!(
                Domain,
                "candidate over {} elements, universe has {}",
                c.universe_size(),
                self.universe_size()
            );
        }
        Ok(())
    }

    /// Cost map and threshold of a LOP kind.
    pub fn lop(&self) -> Result<LopEnvelope> {
        use ProblemInstance as P;
        let n = self.universe_size();
        let unit = |k: usize| LopEnvelope { cost: vec![1; n], threshold: to_i64(k) };
        let env = match self {
            P::VertexCover(g) | P::DominatingSet(g) => unit(g.k),
            P::FeedbackVertexSet(g) | P::FeedbackArcSet(g) => unit(g.k),
            P::SetCover(s) | P::HittingSet(s) => unit(s.k),
            P::IndependentSet(g) | P::Clique(g) => {
                LopEnvelope { cost: vec![-1; n], threshold: -to_i64(g.k) }
            }
            P::SubsetSum(_) | P::Partition(_) => LopEnvelope { cost: vec![0; n], threshold: 0 },
            P::DHamPath(_) | P::DHamCycle(_) | P::UHamCycle(_) | P::TwoDdp(_) | P::KDdp(_) => {
                LopEnvelope { cost: vec![0; n], threshold: 0 }
            }
            P::Knapsack(k) => LopEnvelope {
                cost: k.prices.iter().map(|p| big_to_i64(p).map(|x| -x)).collect::<Result<_>>()?,
                threshold: -big_to_i64(&k.min_price)?,
            },
            P::Scheduling(s) => LopEnvelope {
                cost: s.jobs.iter().map(big_to_i64).collect::<Result<_>>()?,
                threshold: big_to_i64(&s.deadline)?,
            },
            P::Tsp(t) => LopEnvelope { cost: t.weights.clone(), threshold: t.k },
            P::SteinerTree(s) => LopEnvelope { cost: s.cost.clone(), threshold: s.k },
            _ => bail!(Unsupported, "{} is not a LOP kind", self.kind()),
        };
        Ok(env)
    }
}

fn positive(xs: &[num_bigint::BigUint]) -> Result<()> {
    if let Some(i) = xs.iter().position(|x| x.bits() == 0) {
        bail!(Format, "value at position {i} is not positive");
    }
    Ok(())
}

fn to_i64(k: usize) -> i64 {
    i64::try_from(k).unwrap_or(i64::MAX)
}

fn big_to_i64(x: &num_bigint::BigUint) -> Result<i64> {
    x.to_i64().ok_or_else(|| SspError::Capacity(format!("value {x} does not fit a 64-bit cost")))
}
