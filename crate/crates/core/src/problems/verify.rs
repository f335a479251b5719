//! Definition-level membership tests. These are deliberately naive; the
//! enumerators are cross-checked against them.

use num_bigint::BigUint;

use super::*;

pub(super) fn is_solution(inst: &ProblemInstance, s: &ElementSet) -> bool {
    use ProblemInstance as P;
    match inst {
        P::Sat(f) | P::ThreeSat(f) => assignment_satisfies(f, s),
        P::VertexCover(g) => s.len() <= g.k && covers_edges(&g.graph, s),
        P::IndependentSet(g) => s.len() >= g.k && independent(&g.graph, s),
        P::Clique(g) => s.len() >= g.k && clique(&g.graph, s),
        P::DominatingSet(g) => s.len() <= g.k && dominates(&g.graph, s),
        P::FeedbackVertexSet(g) => s.len() <= g.k && fvs_feasible(&g.graph, s),
        P::FeedbackArcSet(g) => s.len() <= g.k && fas_feasible(&g.graph, s),
        P::SetCover(sys) => s.len() <= sys.k && set_cover_feasible(sys, s),
        P::HittingSet(sys) => s.len() <= sys.k && hitting_feasible(sys, s),
        P::Ufl(f) => {
            let open: i64 = s.iter().map(|i| f.open[i]).sum();
            match service_sum(f, s) {
                Some(c) => open + c <= f.k,
                None => false,
            }
        }
        P::PCenter(f) => s.len() <= f.p && service_max(f, s).is_some_and(|c| c <= f.k),
        P::PMedian(f) => s.len() <= f.p && service_sum(f, s).is_some_and(|c| c <= f.k),
        P::SubsetSum(ss) => sum_of(&ss.items, s) == ss.target,
        P::Knapsack(k) => {
            sum_of(&k.weights, s) <= k.capacity && sum_of(&k.prices, s) >= k.min_price
        }
        P::Partition(p) => partition_feasible(p, s),
        P::Scheduling(j) => scheduling_feasible(j, s) && sum_of(&j.jobs, s) <= j.deadline,
        P::DHamPath(p) => ham_path(&p.graph, p.s, p.t, s),
        P::DHamCycle(g) => directed_ham_cycle(g, s),
        P::UHamCycle(g) => undirected_ham_cycle(g, s),
        P::Tsp(t) => tsp_tour(t, s) && s.iter().map(|e| t.weights[e]).sum::<i64>() <= t.k,
        P::TwoDdp(d) | P::KDdp(d) => disjoint_paths(d, s),
        P::SteinerTree(st) => {
            steiner_tree(st, s) && s.iter().map(|e| st.cost[e]).sum::<i64>() <= st.k
        }
    }
}

pub(super) fn is_feasible(inst: &ProblemInstance, s: &ElementSet) -> bool {
    use ProblemInstance as P;
    match inst {
        P::VertexCover(g) => covers_edges(&g.graph, s),
        P::IndependentSet(g) => independent(&g.graph, s),
        P::Clique(g) => clique(&g.graph, s),
        P::DominatingSet(g) => dominates(&g.graph, s),
        P::FeedbackVertexSet(g) => fvs_feasible(&g.graph, s),
        P::FeedbackArcSet(g) => fas_feasible(&g.graph, s),
        P::SetCover(sys) => set_cover_feasible(sys, s),
        P::HittingSet(sys) => hitting_feasible(sys, s),
        P::Knapsack(k) => sum_of(&k.weights, s) <= k.capacity,
        P::Scheduling(j) => scheduling_feasible(j, s),
        P::Tsp(t) => tsp_tour(t, s),
        P::SteinerTree(st) => steiner_tree(st, s),
        _ => is_solution(inst, s),
    }
}

fn assignment_satisfies(f: &Cnf, s: &ElementSet) -> bool {
    let mut assign = vec![false; f.num_vars];
    for v in 0..f.num_vars {
        let p = s.contains(Lit::pos(v).index());
        let n = s.contains(Lit::neg(v).index());
        if p == n {
            return false;
        }
        assign[v] = p;
    }
    f.eval(&assign)
}

fn covers_edges(g: &Graph, s: &ElementSet) -> bool {
    g.edges.iter().all(|&(a, b)| s.contains(a) || s.contains(b))
}

fn independent(g: &Graph, s: &ElementSet) -> bool {
    g.edges.iter().all(|&(a, b)| !(s.contains(a) && s.contains(b)))
}

fn clique(g: &Graph, s: &ElementSet) -> bool {
    let adj = g.adjacency();
    let vs = s.to_vec();
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| adj[a][b]))
}

fn dominates(g: &Graph, s: &ElementSet) -> bool {
    let mut dom = vec![false; g.n];
    for v in s.iter() {
        dom[v] = true;
    }
    for &(a, b) in &g.edges {
        if s.contains(a) {
            dom[b] = true;
        }
        if s.contains(b) {
            dom[a] = true;
        }
    }
    dom.into_iter().all(|d| d)
}

/// Kahn's algorithm over the given arcs.
pub(super) fn acyclic(n: usize, arcs: impl Iterator<Item = (usize, usize)> + Clone) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for (a, b) in arcs {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

fn fvs_feasible(g: &Digraph, s: &ElementSet) -> bool {
    acyclic(
        g.n,
        g.arcs.iter().copied().filter(|&(a, b)| !s.contains(a) && !s.contains(b)),
    )
}

fn fas_feasible(g: &Digraph, s: &ElementSet) -> bool {
    acyclic(
        g.n,
        g.arcs.iter().enumerate().filter(|(i, _)| !s.contains(*i)).map(|(_, &a)| a),
    )
}

fn set_cover_feasible(sys: &SetSystem, s: &ElementSet) -> bool {
    let mut covered = vec![false; sys.ground];
    for i in s.iter() {
        for &x in &sys.sets[i] {
            covered[x] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

fn hitting_feasible(sys: &SetSystem, s: &ElementSet) -> bool {
    sys.sets.iter().all(|set| set.iter().any(|&x| s.contains(x)))
}

/// `None` when some client has no open facility.
fn service_costs(f: &Facility, s: &ElementSet) -> Option<Vec<i64>> {
    (0..f.clients).map(|j| s.iter().map(|i| f.cost[i][j]).min()).collect()
}

fn service_sum(f: &Facility, s: &ElementSet) -> Option<i64> {
    service_costs(f, s).map(|c| c.into_iter().sum())
}

fn service_max(f: &Facility, s: &ElementSet) -> Option<i64> {
    service_costs(f, s).map(|c| c.into_iter().max().unwrap_or(i64::MIN))
}

fn sum_of(xs: &[BigUint], s: &ElementSet) -> BigUint {
    s.iter().map(|i| &xs[i]).sum()
}

fn partition_feasible(p: &Partition, s: &ElementSet) -> bool {
    let total: BigUint = p.items.iter().sum();
    let side = sum_of(&p.items, s);
    (p.items.is_empty() || s.contains(0)) && side.clone() + side == total
}

fn scheduling_feasible(j: &Scheduling, s: &ElementSet) -> bool {
    let total: BigUint = j.jobs.iter().sum();
    let m1 = sum_of(&j.jobs, s);
    (j.jobs.is_empty() || s.contains(0)) && total - m1 <= j.deadline
}

/// Follow the unique out-arc from `start`; returns the visited vertex order,
/// or `None` if some vertex has two selected out- or in-arcs.
fn follow(n: usize, arcs: &[(usize, usize)], s: &ElementSet, start: usize) -> Option<Vec<usize>> {
    let mut next = vec![None; n];
    let mut indeg = vec![0usize; n];
    for i in s.iter() {
        let (a, b) = arcs[i];
        if next[a].is_some() {
            return None;
        }
        next[a] = Some(b);
        indeg[b] += 1;
        if indeg[b] > 1 {
            return None;
        }
    }
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut v = start;
    while let Some(w) = next[v] {
        order.push(w);
        if seen[w] {
            break;
        }
        seen[w] = true;
        v = w;
    }
    Some(order)
}

fn ham_path(g: &Digraph, s: usize, t: usize, set: &ElementSet) -> bool {
    if set.len() + 1 != g.n {
        return false;
    }
    match follow(g.n, &g.arcs, set, s) {
        Some(order) => {
            order.len() == g.n && order.last() == Some(&t) && {
                let mut seen = vec![false; g.n];
                order.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            }
        }
        None => false,
    }
}

fn directed_ham_cycle(g: &Digraph, set: &ElementSet) -> bool {
    if g.n == 0 || set.len() != g.n {
        return false;
    }
    match follow(g.n, &g.arcs, set, 0) {
        Some(order) => {
            order.len() == g.n + 1 && order[g.n] == 0 && {
                let mut seen = vec![false; g.n];
                order[..g.n].iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            }
        }
        None => false,
    }
}

/// Degree two everywhere (a loop counts twice) and connected.
fn undirected_ham_cycle(g: &Graph, set: &ElementSet) -> bool {
    if g.n == 0 || set.len() != g.n {
        return false;
    }
    let mut deg = vec![0usize; g.n];
    let mut uf = UnionFind::new(g.n);
    for e in set.iter() {
        let (a, b) = g.edges[e];
        deg[a] += 1;
        deg[b] += 1;
        uf.union(a, b);
    }
    deg.iter().all(|&d| d == 2) && (0..g.n).all(|v| uf.find(v) == uf.find(0))
}

fn tsp_tour(t: &Tsp, set: &ElementSet) -> bool {
    let g = Graph::new(t.n, Tsp::edge_list(t.n));
    undirected_ham_cycle(&g, set)
}

fn disjoint_paths(d: &Ddp, set: &ElementSet) -> bool {
    let n = d.graph.n;
    let mut used = vec![false; n];
    let mut arcs_used = 0;
    let mut next = vec![None; n];
    let mut indeg = vec![0usize; n];
    for i in set.iter() {
        let (a, b) = d.graph.arcs[i];
        if next[a].is_some() {
            return false;
        }
        next[a] = Some(b);
        indeg[b] += 1;
        if indeg[b] > 1 {
            return false;
        }
    }
    for &(s, t) in &d.pairs {
        if indeg[s] != 0 {
            return false;
        }
        let mut v = s;
        loop {
            if std::mem::replace(&mut used[v], true) {
                return false;
            }
            if v == t {
                break;
            }
            match next[v] {
                Some(w) => {
                    arcs_used += 1;
                    v = w;
                }
                None => return false,
            }
        }
        if next[t].is_some() {
            return false;
        }
    }
    arcs_used == set.len()
}

fn steiner_tree(st: &Steiner, set: &ElementSet) -> bool {
    let n = st.graph.n;
    if set.is_empty() {
        let mut ts = st.terminals.clone();
        ts.sort_unstable();
        ts.dedup();
        return ts.len() <= 1;
    }
    let mut uf = UnionFind::new(n);
    let mut touched = vec![false; n];
    for e in set.iter() {
        let (a, b) = st.graph.edges[e];
        if !uf.union(a, b) {
            return false;
        }
        touched[a] = true;
        touched[b] = true;
    }
    let root = match (0..n).find(|&v| touched[v]) {
        Some(r) => r,
        None => return false,
    };
    (0..n).filter(|&v| touched[v]).all(|v| uf.find(v) == uf.find(root))
        && st.terminals.iter().all(|&t| touched[t])
}

pub(super) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(super) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(super) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already connected.
    pub(super) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
