//! Steiner trees as edge sets.
//!
//! Runs of degree-two Steiner vertices are collapsed into single weighted
//! edges. Trees of the collapsed graph are grown from a root terminal by
//! including or excluding one frontier edge at a time, and a partial run
//! hanging off the tree is attached afterwards. The pruning bound counts one
//! parent edge for every vertex the tree must still contain (the remaining
//! terminals and every cut vertex separating one of them from the tree), plus
//! the optional vertices on the cheapest route to the farthest of them.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::enumerate::{Mode, Sink};
use super::*;

struct HEdge {
    a: usize,
    b: usize,
    cost: i64,
    /// Original edges in walking order from `a` to `b`.
    orig: Vec<usize>,
}

struct Search<'a> {
    st: &'a Steiner,
    budget: Option<i64>,
    edges: Vec<HEdge>,
    inc: Vec<Vec<usize>>,
    is_term: Vec<bool>,
    in_tree: Vec<bool>,
    tree: Vec<usize>,
    tree_vertices: Vec<usize>,
    excluded: Vec<bool>,
    cost: i64,
    terms_left: usize,
    root: usize,
    skip_empty: bool,
}

pub(super) fn enumerate(st: &Steiner, mode: Mode, sink: &mut Sink) -> Result<()> {
    let budget = match mode {
        Mode::Solutions => Some(st.k),
        Mode::Feasible => None,
    };
    let n = st.graph.n;
    let mut terms = st.terminals.clone();
    terms.sort_unstable();
    terms.dedup();
    if terms.is_empty() {
        // Trees anywhere: the empty tree, then each tree rooted at its smallest vertex.
        if budget.is_none_or(|k| k >= 0) {
            sink.push_indices([])?;
        }
        for r in 0..n {
            let banned: Vec<bool> = (0..n).map(|v| v < r).collect();
            let mut s = Search::build(st, budget, &[r], &banned, false);
            s.skip_empty = true;
            s.run(sink)?;
        }
        return Ok(());
    }
    let mut s = Search::build(st, budget, &terms, &vec![false; n], true);
    s.run(sink)
}

impl<'a> Search<'a> {
    fn build(st: &'a Steiner, budget: Option<i64>, terms: &[usize], banned: &[bool], collapse: bool) -> Self {
        let g = &st.graph;
        let n = g.n;
        let mut is_term = vec![false; n];
        for &t in terms {
            is_term[t] = true;
        }
        let usable = |e: usize| {
            let (a, b) = g.edges[e];
            a != b && !banned[a] && !banned[b]
        };
        let mut inc = vec![Vec::new(); n];
        for e in 0..g.edges.len() {
            if usable(e) {
                let (a, b) = g.edges[e];
                inc[a].push(e);
                inc[b].push(e);
            }
        }
        let interior: Vec<bool> =
            (0..n).map(|v| collapse && !is_term[v] && inc[v].len() == 2).collect();
        let other = |e: usize, v: usize| {
            let (a, b) = g.edges[e];
            if a == v {
                b
            } else {
                a
            }
        };
        let mut edges = Vec::new();
        for e in 0..g.edges.len() {
            if !usable(e) {
                continue;
            }
            let (a, b) = g.edges[e];
            if !interior[a] && !interior[b] {
                edges.push(HEdge { a, b, cost: st.cost[e], orig: vec![e] });
            }
        }
        for a in 0..n {
            if interior[a] {
                continue;
            }
            for &first in &inc[a] {
                let mut v = other(first, a);
                if !interior[v] {
                    continue;
                }
                let mut orig = vec![first];
                let mut prev = first;
                while interior[v] {
                    let nxt = if inc[v][0] == prev { inc[v][1] } else { inc[v][0] };
                    orig.push(nxt);
                    prev = nxt;
                    v = other(nxt, v);
                }
                // Found from both ends; keep one orientation.
                if orig[0] < *orig.last().unwrap() {
                    let cost = orig.iter().map(|&e| st.cost[e]).sum();
                    edges.push(HEdge { a, b: v, cost, orig });
                }
            }
        }
        let mut hinc = vec![Vec::new(); n];
        for (h, e) in edges.iter().enumerate() {
            if e.a != e.b {
                hinc[e.a].push(h);
                hinc[e.b].push(h);
            }
        }
        let root = terms[0];
        let mut in_tree = vec![false; n];
        in_tree[root] = true;
        Search {
            st,
            budget,
            excluded: vec![false; edges.len()],
            edges,
            inc: hinc,
            terms_left: terms.len() - 1,
            is_term,
            in_tree,
            tree: Vec::new(),
            tree_vertices: vec![root],
            cost: 0,
            root,
            skip_empty: false,
        }
    }

    fn run(&mut self, sink: &mut Sink) -> Result<()> {
        self.rec(sink)
    }

    fn other(&self, h: usize, v: usize) -> usize {
        let e = &self.edges[h];
        if e.a == v {
            e.b
        } else {
            e.a
        }
    }

    fn rec(&mut self, sink: &mut Sink) -> Result<()> {
        let required = match self.bound() {
            Some(r) => r,
            None => return Ok(()),
        };
        // Frontier edge to branch on: prefer one leading to a required vertex.
        let mut pick: Option<(bool, usize)> = None;
        for &v in &self.tree_vertices {
            for &h in &self.inc[v] {
                let w = self.other(h, v);
                if self.excluded[h] || self.in_tree[w] {
                    continue;
                }
                let key = (!required[w], h);
                if pick.is_none_or(|p| key < p) {
                    pick = Some(key);
                }
            }
        }
        let Some((_, h)) = pick else {
            if self.terms_left == 0 {
                self.emit(sink)?;
            }
            return Ok(());
        };
        let (a, b) = (self.edges[h].a, self.edges[h].b);
        let w = if self.in_tree[a] { b } else { a };
        self.in_tree[w] = true;
        self.tree.push(h);
        self.tree_vertices.push(w);
        self.cost += self.edges[h].cost;
        if self.is_term[w] {
            self.terms_left -= 1;
        }
        self.rec(sink)?;
        if self.is_term[w] {
            self.terms_left += 1;
        }
        self.cost -= self.edges[h].cost;
        self.tree_vertices.pop();
        self.tree.pop();
        self.in_tree[w] = false;

        self.excluded[h] = true;
        self.rec(sink)?;
        self.excluded[h] = false;
        Ok(())
    }

    /// Returns the set of vertices the tree is forced to reach, or `None`
    /// when the branch cannot lead to a tree within budget.
    fn bound(&self) -> Option<Vec<bool>> {
        let n = self.in_tree.len();
        let mut required = vec![false; n];
        if self.terms_left == 0 {
            return match self.budget {
                Some(k) if self.cost > k => None,
                _ => Some(required),
            };
        }
        for v in 0..n {
            if self.is_term[v] && !self.in_tree[v] {
                required[v] = true;
            }
        }
        self.mark_cut_vertices(&mut required);
        // Every vertex outside the tree gets a distinct parent edge. Required
        // vertices pay at least their cheapest usable edge; on top of that the
        // path to any single required vertex pays full price for the vertices
        // it passes that are not required.
        let mut min_inc = vec![0i64; n];
        let mut lb_req = 0i64;
        for v in 0..n {
            if required[v] && !self.in_tree[v] {
                min_inc[v] = self.inc[v]
                    .iter()
                    .filter(|&&h| !self.excluded[h])
                    .map(|&h| self.edges[h].cost)
                    .min()?;
                lb_req += min_inc[v];
            }
        }
        let mut dist = vec![i64::MAX; n];
        let mut heap = BinaryHeap::new();
        for &v in &self.tree_vertices {
            dist[v] = 0;
            heap.push(Reverse((0i64, v)));
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &h in &self.inc[v] {
                if self.excluded[h] {
                    continue;
                }
                let w = self.other(h, v);
                let nd = d + self.edges[h].cost - min_inc[w];
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        let mut lb_path = 0;
        for v in 0..n {
            if required[v] && !self.in_tree[v] {
                if dist[v] == i64::MAX {
                    return None;
                }
                lb_path = lb_path.max(dist[v]);
            }
        }
        if let Some(k) = self.budget {
            if self.cost + lb_req + lb_path > k {
                return None;
            }
        }
        Some(required)
    }

    /// Lowpoint search on the graph of non-excluded edges with the current
    /// tree shrunk to one node; marks cut vertices that separate a remaining
    /// terminal from the tree.
    fn mark_cut_vertices(&self, required: &mut [bool]) {
        let n = self.in_tree.len();
        let rep = |v: usize| if self.in_tree[v] { self.root } else { v };
        let root_edges: Vec<usize> = self
            .tree_vertices
            .iter()
            .flat_map(|&v| self.inc[v].iter().copied())
            .filter(|&h| !self.excluded[h])
            .collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut terms_below = vec![0usize; n];
        let mut time = 0;
        // Frame: (node, edge used to enter, next adjacency position).
        let mut stack: Vec<(usize, usize, usize)> = vec![(self.root, usize::MAX, 0)];
        disc[self.root] = time;
        low[self.root] = time;
        time += 1;
        while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
            let adj: &[usize] = if v == self.root { &root_edges } else { &self.inc[v] };
            if *pos < adj.len() {
                let h = adj[*pos];
                *pos += 1;
                if h == via || self.excluded[h] {
                    continue;
                }
                let (a, b) = (rep(self.edges[h].a), rep(self.edges[h].b));
                if a == b {
                    continue;
                }
                let w = if a == v { b } else { a };
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    terms_below[w] = (self.is_term[w] && !self.in_tree[w]) as usize;
                    stack.push((w, h, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    terms_below[p] += terms_below[v];
                    if p != self.root && low[v] >= disc[p] && terms_below[v] > 0 {
                        required[p] = true;
                    }
                }
            }
        }
    }

    fn emit(&self, sink: &mut Sink) -> Result<()> {
        // Runs that touch the tree without being part of it can carry a
        // dangling prefix from each tree end.
        let mut in_tree_edge = vec![false; self.edges.len()];
        for &h in &self.tree {
            in_tree_edge[h] = true;
        }
        let mut runs: Vec<(usize, bool, bool)> = Vec::new();
        for (h, e) in self.edges.iter().enumerate() {
            if e.orig.len() < 2 || in_tree_edge[h] {
                continue;
            }
            let (ta, tb) = (self.in_tree[e.a], self.in_tree[e.b]);
            if ta || tb {
                runs.push((h, ta, tb));
            }
        }
        let mut chosen: Vec<usize> =
            self.tree.iter().flat_map(|&h| self.edges[h].orig.iter().copied()).collect();
        self.attach(&runs, 0, self.cost, &mut chosen, sink)
    }

    fn attach(
        &self,
        runs: &[(usize, bool, bool)],
        i: usize,
        cost: i64,
        chosen: &mut Vec<usize>,
        sink: &mut Sink,
    ) -> Result<()> {
        if self.budget.is_some_and(|k| cost > k) {
            return Ok(());
        }
        if i == runs.len() {
            if self.skip_empty && chosen.is_empty() {
                return Ok(());
            }
            return sink.push_indices(chosen.iter().copied());
        }
        let (h, ta, tb) = runs[i];
        let orig = &self.edges[h].orig;
        let m = orig.len() - 1;
        let c = |e: usize| self.st.cost[e];
        let max_p = if ta { m } else { 0 };
        let mut cost_p = 0;
        for p in 0..=max_p {
            if p > 0 {
                cost_p += c(orig[p - 1]);
                chosen.push(orig[p - 1]);
            }
            let max_q = if tb { m - p } else { 0 };
            let mut cost_q = 0;
            let mark = chosen.len();
            for q in 0..=max_q {
                if q > 0 {
                    let e = orig[orig.len() - q];
                    cost_q += c(e);
                    chosen.push(e);
                }
                self.attach(runs, i + 1, cost + cost_p + cost_q, chosen, sink)?;
            }
            chosen.truncate(mark);
        }
        chosen.truncate(chosen.len() - max_p);
        Ok(())
    }
}
