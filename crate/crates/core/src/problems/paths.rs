//! Hamiltonian paths and cycles, tours, and vertex-disjoint paths.

use std::collections::VecDeque;

use super::enumerate::{Mode, Sink};
use super::*;

#[derive(Clone, Copy)]
enum End {
    Vertex(usize),
    Close(usize),
}

struct DirHam<'a> {
    n: usize,
    arcs: &'a [(usize, usize)],
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    visited: Vec<bool>,
    count: usize,
    path: Vec<usize>,
    end: End,
}

pub(super) fn ham_path(g: &Digraph, s: usize, t: usize, sink: &mut Sink) -> Result<()> {
    let mut h = DirHam::new(g, End::Vertex(t));
    h.start(s, sink)
}

pub(super) fn directed_ham_cycle(g: &Digraph, sink: &mut Sink) -> Result<()> {
    if g.n == 0 {
        return Ok(());
    }
    let mut h = DirHam::new(g, End::Close(0));
    h.start(0, sink)
}

impl<'a> DirHam<'a> {
    fn new(g: &'a Digraph, end: End) -> Self {
        DirHam {
            n: g.n,
            arcs: &g.arcs,
            out: g.out_arcs(),
            inn: g.in_arcs(),
            visited: vec![false; g.n],
            count: 0,
            path: Vec::new(),
            end,
        }
    }

    fn start(&mut self, s: usize, sink: &mut Sink) -> Result<()> {
        self.visited[s] = true;
        self.count = 1;
        if self.viable(s) {
            self.dfs(s, sink)?;
        }
        Ok(())
    }

    fn dfs(&mut self, v: usize, sink: &mut Sink) -> Result<()> {
        if self.count == self.n {
            match self.end {
                End::Vertex(t) => {
                    if v == t {
                        sink.push_indices(self.path.iter().copied())?;
                    }
                }
                End::Close(s) => {
                    for &a in &self.out[v] {
                        if self.arcs[a].1 == s {
                            sink.push_indices(self.path.iter().copied().chain([a]))?;
                        }
                    }
                }
            }
            return Ok(());
        }
        if let End::Vertex(t) = self.end {
            if v == t {
                return Ok(());
            }
        }
        for idx in 0..self.out[v].len() {
            let a = self.out[v][idx];
            let w = self.arcs[a].1;
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.count += 1;
            self.path.push(a);
            if self.viable(w) {
                self.dfs(w, sink)?;
            }
            self.path.pop();
            self.count -= 1;
            self.visited[w] = false;
        }
        Ok(())
    }

    /// Every unvisited vertex still has an entry and an exit, and all of
    /// them are reachable from the head through unvisited vertices.
    fn viable(&self, head: usize) -> bool {
        let target = match self.end {
            End::Vertex(t) => t,
            End::Close(s) => s,
        };
        let is_path = matches!(self.end, End::Vertex(_));
        if is_path && head == target {
            return self.count == self.n;
        }
        let mut remaining = 0;
        for u in 0..self.n {
            if self.visited[u] {
                continue;
            }
            remaining += 1;
            let has_pred = self.inn[u].iter().any(|&a| {
                let x = self.arcs[a].0;
                x != u && (x == head || !self.visited[x]) && !(is_path && x == target)
            });
            if !has_pred {
                return false;
            }
            if is_path && u == target {
                continue;
            }
            let has_succ = self.out[u].iter().any(|&a| {
                let y = self.arcs[a].1;
                y != u && (!self.visited[y] || (!is_path && y == target))
            });
            if !has_succ {
                return false;
            }
        }
        if remaining == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut q = VecDeque::from([head]);
        seen[head] = true;
        let mut reached = 0;
        while let Some(v) = q.pop_front() {
            for &a in &self.out[v] {
                let w = self.arcs[a].1;
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    q.push_back(w);
                }
            }
        }
        reached == remaining
    }
}

pub(super) fn undirected_ham_cycle(g: &Graph, sink: &mut Sink) -> Result<()> {
    if g.n == 0 {
        return Ok(());
    }
    let mut adj = vec![Vec::new(); g.n];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        adj[a].push((i, b));
        if a != b {
            adj[b].push((i, a));
        }
    }
    let mut s = UndHam {
        n: g.n,
        adj,
        visited: vec![false; g.n],
        used: vec![false; g.edges.len()],
        count: 1,
        path: Vec::new(),
    };
    s.visited[0] = true;
    s.dfs(0, sink)
}

struct UndHam {
    n: usize,
    adj: Vec<Vec<(usize, usize)>>,
    visited: Vec<bool>,
    used: Vec<bool>,
    count: usize,
    path: Vec<usize>,
}

impl UndHam {
    fn dfs(&mut self, v: usize, sink: &mut Sink) -> Result<()> {
        if self.count == self.n {
            for &(e, w) in &self.adj[v] {
                // Each cycle is met in both directions; keep the one whose first
                // edge has the smaller id.
                if w == 0 && !self.used[e] && self.path.first().is_none_or(|&f| f < e) {
                    sink.push_indices(self.path.iter().copied().chain([e]))?;
                }
            }
            return Ok(());
        }
        for idx in 0..self.adj[v].len() {
            let (e, w) = self.adj[v][idx];
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.used[e] = true;
            self.count += 1;
            self.path.push(e);
            if self.viable(w) {
                self.dfs(w, sink)?;
            }
            self.path.pop();
            self.count -= 1;
            self.used[e] = false;
            self.visited[w] = false;
        }
        Ok(())
    }

    fn viable(&self, head: usize) -> bool {
        let mut remaining = 0;
        for u in 0..self.n {
            if self.visited[u] {
                continue;
            }
            remaining += 1;
            let open = self.adj[u]
                .iter()
                .filter(|&&(_, w)| w != u && (!self.visited[w] || w == head || w == 0))
                .count();
            if open < 2 {
                return false;
            }
        }
        if remaining == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut q = VecDeque::from([head]);
        let mut reached = 0;
        while let Some(v) = q.pop_front() {
            for &(_, w) in &self.adj[v] {
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    q.push_back(w);
                }
            }
        }
        reached == remaining
    }
}

pub(super) fn tsp(t: &Tsp, mode: Mode, sink: &mut Sink) -> Result<()> {
    if t.n < 3 {
        return Ok(());
    }
    let n = t.n;
    let w = |i: usize, j: usize| t.weights[Tsp::edge_index(n, i, j)];
    let bound = match mode {
        Mode::Solutions => Some(t.k),
        Mode::Feasible => None,
    };
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut order = vec![0usize];
    tsp_rec(n, &w, bound, &mut visited, &mut order, 0, sink)
}

fn tsp_rec(
    n: usize,
    w: &dyn Fn(usize, usize) -> i64,
    bound: Option<i64>,
    visited: &mut Vec<bool>,
    order: &mut Vec<usize>,
    cost: i64,
    sink: &mut Sink,
) -> Result<()> {
    let head = *order.last().unwrap();
    if order.len() == n {
        // Undirected tours appear twice; keep order[1] < order[n-1].
        if order[1] < order[n - 1] {
            let total = cost + w(head, 0);
            if bound.is_none_or(|k| total <= k) {
                let mut edges: Vec<usize> =
                    order.windows(2).map(|p| Tsp::edge_index(n, p[0], p[1])).collect();
                edges.push(Tsp::edge_index(n, head, 0));
                sink.push_indices(edges)?;
            }
        }
        return Ok(());
    }
    if let Some(k) = bound {
        // Each unvisited vertex and the head still need one outgoing edge.
        let free: Vec<usize> = (0..n).filter(|&v| !visited[v]).collect();
        let mut lb = free.iter().map(|&u| w(head, u)).min().unwrap_or(0);
        for &u in &free {
            let m = free
                .iter()
                .filter(|&&x| x != u)
                .map(|&x| w(u, x))
                .chain([w(u, 0)])
                .min()
                .unwrap();
            lb += m;
        }
        if cost + lb > k {
            return Ok(());
        }
    }
    for next in 1..n {
        if visited[next] {
            continue;
        }
        visited[next] = true;
        order.push(next);
        tsp_rec(n, w, bound, visited, order, cost + w(head, next), sink)?;
        order.pop();
        visited[next] = false;
    }
    Ok(())
}

/// Maximal runs through non-terminal vertices with one entry and one exit
/// collapse into single moves.
struct Contracted {
    /// Outgoing moves per vertex: (target, original arcs, interior vertices).
    out: Vec<Vec<(usize, Vec<usize>)>>,
}

fn contract(g: &Digraph, terminal: &[bool]) -> Contracted {
    let outs = g.out_arcs();
    let ins = g.in_arcs();
    let interior: Vec<bool> = (0..g.n)
        .map(|v| {
            !terminal[v]
                && outs[v].len() == 1
                && ins[v].len() == 1
                && g.arcs[outs[v][0]].1 != v
        })
        .collect();
    let mut out = vec![Vec::new(); g.n];
    for a in 0..g.n {
        if interior[a] {
            continue;
        }
        for &first in &outs[a] {
            let mut arcs = vec![first];
            let mut v = g.arcs[first].1;
            let mut guard = 0;
            while interior[v] && guard <= g.n {
                let nxt = outs[v][0];
                arcs.push(nxt);
                v = g.arcs[nxt].1;
                guard += 1;
            }
            if interior[v] || v == a {
                continue;
            }
            out[a].push((v, arcs));
        }
    }
    Contracted { out }
}

pub(super) fn disjoint_paths(d: &Ddp, sink: &mut Sink) -> Result<()> {
    let n = d.graph.n;
    let mut terminal = vec![false; n];
    for &(s, t) in &d.pairs {
        terminal[s] = true;
        terminal[t] = true;
    }
    let c = contract(&d.graph, &terminal);
    let mut st = DdpSearch { d, c, terminal, used: vec![false; n], arcs: Vec::new() };
    if d.pairs.is_empty() {
        return sink.push_indices([]);
    }
    let s0 = d.pairs[0].0;
    st.used[s0] = true;
    st.path(0, s0, sink)
}

struct DdpSearch<'a> {
    d: &'a Ddp,
    c: Contracted,
    terminal: Vec<bool>,
    used: Vec<bool>,
    arcs: Vec<usize>,
}

impl DdpSearch<'_> {
    fn path(&mut self, i: usize, head: usize, sink: &mut Sink) -> Result<()> {
        let (_, t) = self.d.pairs[i];
        if head == t {
            if i + 1 == self.d.pairs.len() {
                return sink.push_indices(self.arcs.iter().copied());
            }
            let s = self.d.pairs[i + 1].0;
            self.used[s] = true;
            self.path(i + 1, s, sink)?;
            self.used[s] = false;
            return Ok(());
        }
        if !self.viable(i, head) {
            return Ok(());
        }
        for idx in 0..self.c.out[head].len() {
            let w = self.c.out[head][idx].0;
            if self.used[w] || (self.terminal[w] && w != t) {
                continue;
            }
            self.used[w] = true;
            let len = self.arcs.len();
            self.arcs.extend_from_slice(&self.c.out[head][idx].1);
            self.path(i, w, sink)?;
            self.arcs.truncate(len);
            self.used[w] = false;
        }
        Ok(())
    }

    /// Current and later pairs can each still be joined through free vertices.
    fn viable(&self, i: usize, head: usize) -> bool {
        if !self.reach(head, self.d.pairs[i].1) {
            return false;
        }
        self.d.pairs[i + 1..].iter().all(|&(s, t)| self.reach(s, t))
    }

    fn reach(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.used.len()];
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for (w, _) in &self.c.out[v] {
                let w = *w;
                if w == to {
                    return true;
                }
                if !seen[w] && !self.used[w] && !self.terminal[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        false
    }
}
