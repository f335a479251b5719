//! Reductions that keep the source universe intact and pin every added
//! element either into all solutions or out of all of them.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{ArtifactKind, PreservingEdge, ReductionArtifact};
use crate::error::{bail, Result};
use crate::problems::{
    Ddp, Digraph, DigraphK, Facility, Graph, GraphK, Knapsack, Partition, ProblemInstance,
    Scheduling, SetSystem, Tsp,
};

/// Edge-specific knobs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservingParams {
    /// Number of terminal pairs in the kDDP target.
    pub ddp_pairs: usize,
}

impl Default for PreservingParams {
    fn default() -> Self {
        PreservingParams { ddp_pairs: 3 }
    }
}

pub fn build_preserving(
    edge: PreservingEdge,
    source: &ProblemInstance,
    params: &PreservingParams,
) -> Result<ReductionArtifact> {
    use PreservingEdge as E;
    use ProblemInstance as P;
    if source.kind() != edge.source_kind() {
        bail!(Composition, "{edge} expects {}, got {}", edge.source_kind(), source.kind());
    }
    source.validate()?;
    let id = |n: usize| (0..n).collect::<Vec<_>>();
    let (target, f, u_on, u_off) = match (edge, source) {
        (E::VcToDs, P::VertexCover(g)) => vc_to_ds(g)?,
        (E::VcToSc, P::VertexCover(g)) => {
            let mut sets = vec![Vec::new(); g.graph.n];
            for (i, &(a, b)) in g.graph.edges.iter().enumerate() {
                sets[a].push(i);
                if b != a {
                    sets[b].push(i);
                }
            }
            let t = P::SetCover(SetSystem { ground: g.graph.edges.len(), sets, k: g.k });
            (t, id(g.graph.n), vec![], vec![])
        }
        (E::VcToHs, P::VertexCover(g)) => {
            let sets = g.graph.edges.iter().map(|&(a, b)| if a == b { vec![a] } else { vec![a, b] }).collect();
            let t = P::HittingSet(SetSystem { ground: g.graph.n, sets, k: g.k });
            (t, id(g.graph.n), vec![], vec![])
        }
        (E::VcToFvs, P::VertexCover(g)) => {
            let mut arcs = Vec::new();
            for &(a, b) in &g.graph.edges {
                arcs.push((a, b));
                if a != b {
                    arcs.push((b, a));
                }
            }
            let d = Digraph { n: g.graph.n, arcs, names: g.graph.names.clone() };
            (P::FeedbackVertexSet(DigraphK { graph: d, k: g.k }), id(g.graph.n), vec![], vec![])
        }
        (E::VcToFas, P::VertexCover(g)) => vc_to_fas(g)?,
        (E::VcToUfl | E::VcToPCenter | E::VcToPMedian, P::VertexCover(g)) => {
            let n = g.graph.n;
            let far = n as i64 + 1;
            let cost = (0..n)
                .map(|v| g.graph.edges.iter().map(|&(a, b)| if a == v || b == v { 0 } else { far }).collect())
                .collect();
            let clients = g.graph.edges.len();
            let t = match edge {
                // opening every vertex is always a cover, so budgets above |V| add nothing
                E::VcToUfl => P::Ufl(Facility { clients, cost, open: vec![1; n], p: 0, k: g.k.min(n) as i64 }),
                E::VcToPCenter => P::PCenter(Facility { clients, cost, open: vec![], p: g.k, k: 0 }),
                _ => P::PMedian(Facility { clients, cost, open: vec![], p: g.k, k: 0 }),
            };
            (t, id(n), vec![], vec![])
        }
        (E::IsToClique, P::IndependentSet(g)) => {
            if g.graph.edges.iter().any(|&(a, b)| a == b) {
                bail!(Precondition, "complementation needs a loop-free graph");
            }
            let adj = g.graph.adjacency();
            let mut edges = Vec::new();
            for a in 0..g.graph.n {
                for b in a + 1..g.graph.n {
                    if !adj[a][b] {
                        edges.push((a, b));
                    }
                }
            }
            let c = Graph { n: g.graph.n, edges, names: g.graph.names.clone() };
            (P::Clique(GraphK { graph: c, k: g.k }), id(g.graph.n), vec![], vec![])
        }
        (E::SubsetSumToKnapsack, P::SubsetSum(s)) => {
            let t = P::Knapsack(Knapsack {
                prices: s.items.clone(),
                weights: s.items.clone(),
                min_price: s.target.clone(),
                capacity: s.target.clone(),
            });
            (t, id(s.items.len()), vec![], vec![])
        }
        (E::SubsetSumToPartition, P::SubsetSum(s)) => {
            let total: BigUint = s.items.iter().sum();
            if s.target > total {
                bail!(Precondition, "target {} exceeds the item total {total}", s.target);
            }
            let n = s.items.len();
            let mut items = Vec::with_capacity(n + 2);
            items.push(&total + 1u32 - &s.target);
            items.extend(s.items.iter().cloned());
            items.push(&s.target + 1u32);
            (P::Partition(Partition { items }), (1..=n).collect(), vec![0], vec![n + 1])
        }
        (E::PartitionToScheduling, P::Partition(p)) => {
            let total: BigUint = p.items.iter().sum();
            let t = P::Scheduling(Scheduling { jobs: p.items.clone(), deadline: total / 2u32 });
            (t, id(p.items.len()), vec![], vec![])
        }
        (E::DHamPathToDHamCycle, P::DHamPath(p)) => {
            if p.s == p.t {
                bail!(Precondition, "path endpoints coincide");
            }
            if p.graph.arcs.iter().any(|&(a, b)| b == p.s || a == p.t) {
                bail!(Precondition, "closing the path needs no arcs into s and none out of t");
            }
            let mut g = p.graph.clone();
            g.arcs.push((p.t, p.s));
            let m = p.graph.arcs.len();
            (P::DHamCycle(g), id(m), vec![m], vec![])
        }
        (E::DHamCycleToUHamCycle, P::DHamCycle(g)) => {
            let names = (0..g.n)
                .flat_map(|v| {
                    let x = g.vertex_name(v);
                    [format!("{x}.in"), x.clone(), format!("{x}.out")]
                })
                .collect();
            let mut edges: Vec<(usize, usize)> = g.arcs.iter().map(|&(a, b)| (3 * a + 2, 3 * b)).collect();
            let m = edges.len();
            for v in 0..g.n {
                edges.push((3 * v, 3 * v + 1));
                edges.push((3 * v + 1, 3 * v + 2));
            }
            let u = Graph { n: 3 * g.n, edges, names };
            (P::UHamCycle(u), id(m), (m..m + 2 * g.n).collect(), vec![])
        }
        (E::UHamCycleToTsp, P::UHamCycle(g)) => {
            let n = g.n;
            let mut f = Vec::with_capacity(g.edges.len());
            let mut weights = vec![1i64; n * n.saturating_sub(1) / 2];
            for &(a, b) in &g.edges {
                if a == b {
                    bail!(Precondition, "the complete-graph encoding needs a loop-free graph");
                }
                let e = Tsp::edge_index(n, a, b);
                if weights[e] == 0 {
                    bail!(Precondition, "the complete-graph encoding needs a graph without parallel edges");
                }
                weights[e] = 0;
                f.push(e);
            }
            let off = (0..weights.len()).filter(|&e| weights[e] == 1).collect();
            (P::Tsp(Tsp { n, weights, k: 0 }), f, vec![], off)
        }
        (E::TwoDdpToKDdp, P::TwoDdp(d)) => {
            let k = params.ddp_pairs;
            if k < 2 {
                bail!(Precondition, "kDDP needs at least two pairs, got {k}");
            }
            let mut g = d.graph.clone();
            if g.names.len() < g.n {
                g.names = (0..g.n).map(|v| d.graph.vertex_name(v)).collect();
            }
            let mut pairs = d.pairs.clone();
            let m = g.arcs.len();
            for i in 3..=k {
                let s = g.n;
                g.names.push(format!("s{i}"));
                g.names.push(format!("t{i}"));
                g.n += 2;
                g.arcs.push((s, s + 1));
                pairs.push((s, s + 1));
            }
            (P::KDdp(Ddp { graph: g, pairs }), id(m), (m..m + k - 2).collect(), vec![])
        }
        _ => unreachable!("kind checked above"),
    };
    Ok(ReductionArtifact {
        edge: edge.to_string(),
        kind: ArtifactKind::Preserving,
        source: source.clone(),
        target,
        f,
        lb: None,
        measure: None,
        beta: None,
        u_on,
        u_off,
    })
}

type Parts = (ProblemInstance, Vec<usize>, Vec<usize>, Vec<usize>);

/// Smallest vertex cover size: branch on a max-degree vertex (take it, or take
/// all its neighbours), pruned by a greedy matching bound.
fn min_cover(n: usize, edges: &[(usize, usize)]) -> usize {
    fn matching(edges: &[(usize, usize)], n: usize) -> usize {
        let mut used = vec![false; n];
        let mut m = 0;
        for &(a, b) in edges {
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                m += 1;
            }
        }
        m
    }
    fn go(n: usize, edges: Vec<(usize, usize)>, size: usize, best: &mut usize) {
        if edges.is_empty() {
            *best = (*best).min(size);
            return;
        }
        if size + matching(&edges, n) >= *best {
            return;
        }
        let mut deg = vec![0usize; n];
        let mut looped = None;
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
            if a == b {
                looped = Some(a);
            }
        }
        let drop = |taken: &[usize]| -> Vec<(usize, usize)> {
            edges.iter().copied().filter(|(a, b)| !taken.contains(a) && !taken.contains(b)).collect()
        };
        if let Some(v) = looped {
            return go(n, drop(&[v]), size + 1, best);
        }
        let v = (0..n).max_by_key(|&v| deg[v]).expect("edges imply vertices");
        go(n, drop(&[v]), size + 1, best);
        let mut nb: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        nb.sort_unstable();
        nb.dedup();
        let k = nb.len();
        go(n, drop(&nb), size + k, best);
    }
    let mut best = n;
    go(n, edges.to_vec(), 0, &mut best);
    best
}

/// Extra midpoints or subdivided arcs would fit into a budget above the
/// minimum cover size, so those gadgets are only exact for tight budgets.
fn require_tight(g: &GraphK, what: &str) -> Result<()> {
    let tau = min_cover(g.graph.n, &g.graph.edges);
    if g.k > tau {
        bail!(Precondition, "{what} needs k at most the minimum cover size {tau}, got {}", g.k);
    }
    Ok(())
}

fn vc_to_ds(g: &GraphK) -> Result<Parts> {
    let n = g.graph.n;
    let mut touched = vec![false; n];
    for &(a, b) in &g.graph.edges {
        touched[a] = true;
        touched[b] = true;
    }
    if let Some(v) = touched.iter().position(|t| !t) {
        bail!(Precondition, "vertex {} is isolated", g.graph.vertex_name(v));
    }
    require_tight(g, "the dominating set gadget")?;
    let mut names: Vec<String> = (0..n).map(|v| g.graph.vertex_name(v)).collect();
    let mut edges = g.graph.edges.clone();
    for (i, &(a, b)) in g.graph.edges.iter().enumerate() {
        for j in 0..=n {
            let m = names.len();
            names.push(format!("m{i}.{j}"));
            edges.push((a, m));
            if b != a {
                edges.push((b, m));
            }
        }
    }
    let total = names.len();
    let t = ProblemInstance::DominatingSet(GraphK { graph: Graph { n: total, edges, names }, k: g.k });
    Ok((t, (0..n).collect(), vec![], (n..total).collect()))
}

fn vc_to_fas(g: &GraphK) -> Result<Parts> {
    require_tight(g, "the feedback arc gadget")?;
    let n = g.graph.n;
    let mut names = Vec::with_capacity(2 * n);
    for v in 0..n {
        let x = g.graph.vertex_name(v);
        names.push(format!("{x}.0"));
        names.push(format!("{x}.1"));
    }
    let mut arcs: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    for (i, &(a, b)) in g.graph.edges.iter().enumerate() {
        for (dir, (x, y)) in [(a, b), (b, a)].into_iter().enumerate() {
            for j in 0..=n {
                let m = names.len();
                names.push(format!("m{i}.{dir}.{j}"));
                arcs.push((2 * x + 1, m));
                arcs.push((m, 2 * y));
            }
        }
    }
    let total = arcs.len();
    let d = Digraph { n: names.len(), arcs, names };
    Ok((ProblemInstance::FeedbackArcSet(DigraphK { graph: d, k: g.k }), (0..n).collect(), vec![], (n..total).collect()))
}
