//! Seeded random instances for fuzzing and cross-checks.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::problems::*;

pub use rand_chacha::ChaCha8Rng as Rng64;
pub use rand::SeedableRng;

pub fn rng(seed: u64) -> Rng64 {
    Rng64::seed_from_u64(seed)
}

fn lit<R: Rng>(rng: &mut R, vars: usize) -> Lit {
    Lit { var: rng.gen_range(0..vars), neg: rng.gen_bool(0.5) }
}

/// Random CNF with clause widths drawn from `widths`.
pub fn cnf<R: Rng>(rng: &mut R, vars: usize, clauses: usize, widths: std::ops::RangeInclusive<usize>) -> Cnf {
    let cs = (0..clauses)
        .map(|_| {
            let w = rng.gen_range(widths.clone());
            (0..w).map(|_| lit(rng, vars)).collect()
        })
        .collect();
    Cnf::new(vars, cs)
}

/// Random 3CNF with `1..=max_vars` variables and `1..=max_clauses` clauses.
pub fn three_cnf<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> Cnf {
    let vars = rng.gen_range(1..=max_vars);
    let clauses = rng.gen_range(1..=max_clauses);
    cnf(rng, vars, clauses, 3..=3)
}

/// Negation-closed literal set, each variable included with probability one half.
pub fn blown_literals<R: Rng>(rng: &mut R, vars: usize) -> Vec<Lit> {
    let mut out = Vec::new();
    for v in 0..vars {
        if rng.gen_bool(0.5) {
            out.push(Lit::pos(v));
            out.push(Lit::neg(v));
        }
    }
    out
}

pub fn graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges)
}

/// `m` arcs drawn uniformly, loops allowed with small probability.
pub fn digraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Digraph {
    let mut arcs = Vec::new();
    while arcs.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b || rng.gen_bool(0.1) {
            arcs.push((a, b));
        }
    }
    Digraph::new(n, arcs)
}

fn multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let mut edges = Vec::new();
    while edges.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b || rng.gen_bool(0.05) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    Graph::new(n, edges)
}

fn nums<R: Rng>(rng: &mut R, n: usize, hi: u32) -> Vec<BigUint> {
    (0..n).map(|_| BigUint::from(rng.gen_range(1..=hi))).collect()
}

fn facility<R: Rng>(rng: &mut R, max_u: usize) -> Facility {
    let m = rng.gen_range(1..=max_u.clamp(1, 6));
    let clients = rng.gen_range(0..=4);
    Facility {
        clients,
        cost: (0..m).map(|_| (0..clients).map(|_| rng.gen_range(0..=6)).collect()).collect(),
        open: (0..m).map(|_| rng.gen_range(0..=4)).collect(),
        p: rng.gen_range(0..=m),
        k: rng.gen_range(0..=14),
    }
}

/// Random instance of `kind` whose universe has at most `max_u` elements.
pub fn instance<R: Rng>(rng: &mut R, kind: ProblemKind, max_u: usize) -> ProblemInstance {
    use ProblemInstance as P;
    let max_u = max_u.max(2);
    match kind {
        ProblemKind::Sat => {
            let v = rng.gen_range(1..=(max_u / 2).max(1));
            let c = rng.gen_range(1..=5);
            P::Sat(cnf(rng, v, c, 1..=4))
        }
        ProblemKind::ThreeSat => {
            let v = rng.gen_range(1..=(max_u / 2).max(1));
            let c = rng.gen_range(1..=5);
            P::ThreeSat(cnf(rng, v, c, 3..=3))
        }
        ProblemKind::VertexCover
        | ProblemKind::IndependentSet
        | ProblemKind::Clique
        | ProblemKind::DominatingSet => {
            let n = rng.gen_range(1..=max_u);
            let p = rng.gen_range(0.1..0.7);
            let g = GraphK { graph: graph(rng, n, p), k: rng.gen_range(0..=n) };
            match kind {
                ProblemKind::VertexCover => P::VertexCover(g),
                ProblemKind::IndependentSet => P::IndependentSet(g),
                ProblemKind::Clique => P::Clique(g),
                _ => P::DominatingSet(g),
            }
        }
        ProblemKind::FeedbackVertexSet => {
            let n = rng.gen_range(1..=max_u);
            let m = rng.gen_range(0..=2 * n);
            P::FeedbackVertexSet(DigraphK { graph: digraph(rng, n, m), k: rng.gen_range(0..=n) })
        }
        ProblemKind::FeedbackArcSet => {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=max_u);
            P::FeedbackArcSet(DigraphK { graph: digraph(rng, n, m), k: rng.gen_range(0..=m) })
        }
        ProblemKind::SetCover => {
            let sets = rng.gen_range(0..=max_u);
            let ground = rng.gen_range(0..=6);
            let fam = (0..sets)
                .map(|_| (0..ground).filter(|_| rng.gen_bool(0.4)).collect())
                .collect();
            P::SetCover(SetSystem { ground, sets: fam, k: rng.gen_range(0..=sets) })
        }
        ProblemKind::HittingSet => {
            let ground = rng.gen_range(0..=max_u);
            let sets = rng.gen_range(0..=6);
            let fam = (0..sets)
                .map(|_| (0..ground).filter(|_| rng.gen_bool(0.3)).collect())
                .collect();
            P::HittingSet(SetSystem { ground, sets: fam, k: rng.gen_range(0..=ground) })
        }
        ProblemKind::Ufl => P::Ufl(facility(rng, max_u)),
        ProblemKind::PCenter => {
            let mut f = facility(rng, max_u);
            f.k = rng.gen_range(0..=6);
            f.open.clear();
            P::PCenter(f)
        }
        ProblemKind::PMedian => {
            let mut f = facility(rng, max_u);
            f.open.clear();
            P::PMedian(f)
        }
        ProblemKind::SubsetSum => {
            let n = rng.gen_range(0..=max_u);
            let items = nums(rng, n, 10);
            let total: u32 = items.iter().map(|x| x.iter_u32_digits().next().unwrap_or(0)).sum();
            P::SubsetSum(SubsetSum { items, target: BigUint::from(rng.gen_range(0..=total)) })
        }
        ProblemKind::Knapsack => {
            let n = rng.gen_range(0..=max_u);
            P::Knapsack(Knapsack {
                prices: nums(rng, n, 8),
                weights: nums(rng, n, 8),
                min_price: BigUint::from(rng.gen_range(0..=3 * n as u32)),
                capacity: BigUint::from(rng.gen_range(0..=3 * n as u32)),
            })
        }
        ProblemKind::Partition => {
            let n = rng.gen_range(0..=max_u);
            P::Partition(Partition { items: nums(rng, n, 8) })
        }
        ProblemKind::Scheduling => {
            let n = rng.gen_range(0..=max_u);
            let jobs = nums(rng, n, 8);
            let t = rng.gen_range(0..=4 * n as u32 + 1);
            P::Scheduling(Scheduling { jobs, deadline: BigUint::from(t) })
        }
        ProblemKind::DHamPath => {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=max_u);
            P::DHamPath(DHamPath { graph: digraph(rng, n, m), s: rng.gen_range(0..n), t: rng.gen_range(0..n) })
        }
        ProblemKind::DHamCycle => {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=max_u);
            P::DHamCycle(digraph(rng, n, m))
        }
        ProblemKind::UHamCycle => {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=max_u);
            P::UHamCycle(multigraph(rng, n, m))
        }
        ProblemKind::Tsp => {
            let mut n = rng.gen_range(1..=5);
            while n * (n - 1) / 2 > max_u {
                n -= 1;
            }
            let m = n * (n - 1) / 2;
            P::Tsp(Tsp {
                n,
                weights: (0..m).map(|_| rng.gen_range(0..=5)).collect(),
                k: rng.gen_range(0..=3 * n as i64),
            })
        }
        ProblemKind::TwoDdp | ProblemKind::KDdp => {
            let pairs = if kind == ProblemKind::TwoDdp { 2 } else { rng.gen_range(1..=3) };
            let n = rng.gen_range(2 * pairs..=2 * pairs + 3);
            let m = rng.gen_range(0..=max_u);
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(rng);
            let pairs = (0..pairs).map(|i| (vs[2 * i], vs[2 * i + 1])).collect();
            let d = Ddp { graph: digraph(rng, n, m), pairs };
            if kind == ProblemKind::TwoDdp {
                P::TwoDdp(d)
            } else {
                P::KDdp(d)
            }
        }
        ProblemKind::SteinerTree => {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(0..=max_u);
            let g = multigraph(rng, n, m);
            let terms = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..n)).collect();
            P::SteinerTree(Steiner {
                cost: (0..g.edges.len()).map(|_| rng.gen_range(0..=3)).collect(),
                graph: g,
                terminals: terms,
                k: rng.gen_range(0..=8),
            })
        }
    }
}

/// Adjustable 3SAT game with `|X| = |Y| = |Z| <= max_block`. Literals lean on
/// positive Y variables so that blocking matters and both answers occur.
pub fn radjsat<R: Rng>(rng: &mut R, max_block: usize, max_clauses: usize, max_gamma: usize) -> crate::rr::RAdjSatInstance {
    let w = rng.gen_range(1..=max_block);
    let mut vars: Vec<usize> = (0..3 * w).collect();
    vars.shuffle(rng);
    let (x, y, z) = (vars[..w].to_vec(), vars[w..2 * w].to_vec(), vars[2 * w..].to_vec());
    let clauses = (0..rng.gen_range(1..=max_clauses))
        .map(|_| {
            (0..3)
                .map(|_| {
                    let p: f64 = rng.gen();
                    let (block, neg) = if p < 0.6 {
                        (&y, false)
                    } else if p < 0.65 {
                        (&y, true)
                    } else if p < 0.92 {
                        (&x, rng.gen_bool(0.5))
                    } else {
                        (&z, rng.gen_bool(0.5))
                    };
                    Lit { var: *block.choose(rng).expect("non-empty block"), neg }
                })
                .collect()
        })
        .collect();
    crate::rr::RAdjSatInstance { formula: Cnf::new(3 * w, clauses), x, y, z, gamma: rng.gen_range(0..=max_gamma), dummies: Vec::new() }
}

/// Lowers or raises the threshold of a LOP instance to its cheapest feasible
/// cost. `None` when nothing is feasible, or when the threshold also shapes
/// the feasible sets and the instance is not already tight.
pub fn tighten(inst: &ProblemInstance, limits: &crate::ssp::Limits) -> crate::error::Result<Option<ProblemInstance>> {
    use ProblemInstance as P;
    let env = inst.lop()?;
    let feasible = enumerate_feasible(inst, limits)?;
    let Some(min) = feasible.iter().map(|s| env.cost_of(s)).min() else {
        return Ok(None);
    };
    if min == env.threshold {
        return Ok(Some(inst.clone()));
    }
    let k = usize::try_from(min).ok();
    let mut out = inst.clone();
    match (&mut out, k) {
        (P::VertexCover(g) | P::DominatingSet(g), Some(k)) => g.k = k,
        (P::FeedbackVertexSet(g) | P::FeedbackArcSet(g), Some(k)) => g.k = k,
        (P::SetCover(s) | P::HittingSet(s), Some(k)) => s.k = k,
        (P::Tsp(t), _) => t.k = min,
        (P::SteinerTree(s), _) => s.k = min,
        _ => return Ok(None),
    }
    Ok(Some(out))
}

fn planted_order<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Graph on `2..=max_n` vertices with no isolated vertex and `k` at most the
/// minimum cover size.
fn tight_cover<R: Rng>(rng: &mut R, max_n: usize) -> GraphK {
    loop {
        let n = rng.gen_range(2..=max_n.max(2));
        let p = rng.gen_range(0.3..0.8);
        let g = graph(rng, n, p);
        let mut deg = vec![0; n];
        for &(a, b) in &g.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.contains(&0) {
            continue;
        }
        let tau = (0..1u32 << n)
            .filter(|mask| g.edges.iter().all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1))
            .map(u32::count_ones)
            .min()
            .expect("the full vertex set covers") as usize;
        let k = if tau > 0 && rng.gen_bool(0.3) { tau - 1 } else { tau };
        return GraphK { graph: g, k };
    }
}

/// Source instance meeting the preconditions of a preserving edge. Ham and
/// path sources get a planted solution half of the time.
pub fn preserving_source<R: Rng>(rng: &mut R, edge: crate::reductions::PreservingEdge, max_u: usize) -> ProblemInstance {
    use crate::reductions::PreservingEdge as E;
    use ProblemInstance as P;
    match edge {
        E::VcToDs | E::VcToFas => P::VertexCover(tight_cover(rng, 4)),
        E::VcToSc | E::VcToHs | E::VcToFvs | E::VcToUfl | E::VcToPCenter | E::VcToPMedian => {
            let n = rng.gen_range(1..=max_u.clamp(1, 6));
            let p = rng.gen_range(0.2..0.7);
            let g = graph(rng, n, p);
            P::VertexCover(GraphK { graph: g, k: rng.gen_range(0..=n) })
        }
        E::IsToClique => instance(rng, ProblemKind::IndependentSet, max_u.min(7)),
        E::SubsetSumToKnapsack | E::SubsetSumToPartition => instance(rng, ProblemKind::SubsetSum, max_u.min(8)),
        E::PartitionToScheduling => instance(rng, ProblemKind::Partition, max_u.min(8)),
        E::DHamPathToDHamCycle => {
            let n = rng.gen_range(2..=5);
            let order = planted_order(rng, n);
            let (s, t) = (order[0], order[n - 1]);
            let mut arcs = Vec::new();
            if rng.gen_bool(0.5) {
                arcs.extend(order.windows(2).map(|w| (w[0], w[1])));
            }
            for _ in 0..rng.gen_range(0..=max_u.min(8)) {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a != t && b != s {
                    arcs.push((a, b));
                }
            }
            P::DHamPath(DHamPath { graph: Digraph::new(n, arcs), s, t })
        }
        E::DHamCycleToUHamCycle => {
            let n = rng.gen_range(1..=4);
            let order = planted_order(rng, n);
            let mut arcs = Vec::new();
            if rng.gen_bool(0.5) {
                arcs.extend((0..n).map(|i| (order[i], order[(i + 1) % n])));
            }
            for _ in 0..rng.gen_range(0..=max_u.min(6)) {
                arcs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
            P::DHamCycle(Digraph::new(n, arcs))
        }
        E::UHamCycleToTsp => {
            let n = rng.gen_range(3..=5);
            let order = planted_order(rng, n);
            let p = rng.gen_range(0.2..0.6);
            let mut edges: Vec<(usize, usize)> = graph(rng, n, p).edges;
            if rng.gen_bool(0.5) {
                for i in 0..n {
                    let (a, b) = (order[i], order[(i + 1) % n]);
                    edges.push((a.min(b), a.max(b)));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            P::UHamCycle(Graph::new(n, edges))
        }
        E::TwoDdpToKDdp => {
            let n = rng.gen_range(4..=6);
            let order = planted_order(rng, n);
            let cut = rng.gen_range(2..=n - 2);
            let (p1, p2) = order.split_at(cut);
            let mut arcs = Vec::new();
            if rng.gen_bool(0.5) {
                for p in [p1, p2] {
                    arcs.extend(p.windows(2).map(|w| (w[0], w[1])));
                }
            }
            for _ in 0..rng.gen_range(0..=max_u.min(6)) {
                arcs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
            let pairs = vec![(p1[0], p1[cut - 1]), (p2[0], p2[p2.len() - 1])];
            P::TwoDdp(Ddp { graph: Digraph::new(n, arcs), pairs })
        }
    }
}

/// Source formula and blown literals for a blow-up edge: at most four
/// variables and four clauses, clause widths 1 to 5 for the SAT source.
pub fn blowup_source<R: Rng>(rng: &mut R, edge: crate::reductions::BlowupEdge) -> (Cnf, Vec<Lit>) {
    let f = if edge == crate::reductions::BlowupEdge::SatTo3Sat {
        let vars = rng.gen_range(1..=4);
        let clauses = rng.gen_range(1..=4);
        cnf(rng, vars, clauses, 1..=5)
    } else {
        three_cnf(rng, 4, 4)
    };
    let lb = blown_literals(rng, f.num_vars);
    (f, lb)
}
