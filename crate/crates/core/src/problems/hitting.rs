//! Exact enumeration of hitting sets with a cardinality budget.
//!
//! Elements that occur in exactly one constraint ("private") are not
//! branched on; they are distributed at the leaves. Constraints that share
//! the same non-private part are grouped, which keeps the lower bound cheap
//! on gadgets with many parallel subdivision vertices.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::enumerate::{Mode, Sink};
use super::*;

pub(super) type Flow = ControlFlow<()>;

struct Group {
    shared: Vec<usize>,
    privs: Vec<Vec<usize>>,
    all_have_priv: bool,
}

struct Search<'a> {
    budget: usize,
    order: Vec<usize>,
    groups: Vec<Group>,
    /// Groups sorted by shared size, for the packing bound.
    pack_order: Vec<usize>,
    /// Triangles of hard pair constraints, as (vertices, groups); any cover
    /// takes two of the three vertices.
    triangles: Vec<([usize; 3], [usize; 3])>,
    groups_of: Vec<Vec<usize>>,
    free: Vec<usize>,
    state: Vec<u8>,
    hit: Vec<u32>,
    undecided: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
    chosen: Vec<usize>,
    emit: &'a mut dyn FnMut(&[usize]) -> Result<Flow>,
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Calls `emit` with every `X ⊆ 0..n`, `|X| <= budget`, meeting all constraints.
pub(super) fn search(
    n: usize,
    mut cons: Vec<Vec<usize>>,
    budget: usize,
    emit: &mut dyn FnMut(&[usize]) -> Result<Flow>,
) -> Result<()> {
    for c in cons.iter_mut() {
        c.sort_unstable();
        c.dedup();
    }
    if cons.iter().any(Vec::is_empty) {
        return Ok(());
    }
    cons.sort();
    cons.dedup();
    let cons = drop_supersets(n, cons);

    let mut occ = vec![0usize; n];
    for c in &cons {
        for &x in c {
            occ[x] += 1;
        }
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut groups: Vec<Group> = Vec::new();
    for c in &cons {
        let shared: Vec<usize> = c.iter().copied().filter(|&x| occ[x] >= 2).collect();
        let privs: Vec<usize> = c.iter().copied().filter(|&x| occ[x] == 1).collect();
        let gi = *index.entry(shared.clone()).or_insert_with(|| {
            groups.push(Group { shared, privs: Vec::new(), all_have_priv: true });
            groups.len() - 1
        });
        groups[gi].all_have_priv &= !privs.is_empty();
        groups[gi].privs.push(privs);
    }
    let mut groups_of = vec![Vec::new(); n];
    for (gi, g) in groups.iter().enumerate() {
        for &x in &g.shared {
            groups_of[x].push(gi);
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&x| occ[x] >= 2).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(groups_of[x].len()), x));
    let mut pack_order: Vec<usize> = (0..groups.len()).collect();
    pack_order.sort_by_key(|&g| (groups[g].shared.len(), g));
    let undecided = groups.iter().map(|g| g.shared.len() as u32).collect();
    let triangles = triangles(n, &groups);
    let mut s = Search {
        triangles,
        budget,
        order,
        hit: vec![0; groups.len()],
        undecided,
        groups,
        pack_order,
        groups_of,
        free: (0..n).filter(|&x| occ[x] == 0).collect(),
        state: vec![UNDECIDED; n],
        mark: vec![0; n],
        stamp: 0,
        chosen: Vec::new(),
        emit,
    };
    let _ = s.rec(0)?;
    Ok(())
}

/// A bounded list of triangles among the pair groups that some constraint
/// forces on their own.
fn triangles(n: usize, groups: &[Group]) -> Vec<([usize; 3], [usize; 3])> {
    let mut pair: HashMap<(usize, usize), usize> = HashMap::new();
    let mut adj = vec![Vec::new(); n];
    for (gi, g) in groups.iter().enumerate() {
        if let [a, b] = g.shared[..] {
            if !g.all_have_priv {
                pair.insert((a, b), gi);
                adj[a].push(b);
            }
        }
    }
    let cap = 4 * n;
    let mut out = Vec::new();
    for a in 0..n {
        for (i, &b) in adj[a].iter().enumerate() {
            for &c in &adj[a][i + 1..] {
                let (lo, hi) = (b.min(c), b.max(c));
                if let Some(&bc) = pair.get(&(lo, hi)) {
                    out.push(([a, b, c], [pair[&(a, b)], pair[&(a, c)], bc]));
                    if out.len() == cap {
                        return out;
                    }
                }
            }
        }
    }
    out
}

fn drop_supersets(n: usize, cons: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut occ = vec![0usize; n];
    for c in &cons {
        for &x in c {
            occ[x] += 1;
        }
    }
    let mut by_rarest = vec![Vec::new(); n];
    for (ci, c) in cons.iter().enumerate() {
        let r = *c.iter().min_by_key(|&&x| (occ[x], x)).expect("non-empty");
        by_rarest[r].push(ci);
    }
    let mut mark = vec![false; n];
    let mut keep = vec![true; cons.len()];
    for (ci, c) in cons.iter().enumerate() {
        for &x in c {
            mark[x] = true;
        }
        'outer: for &x in c {
            for &cj in &by_rarest[x] {
                if cj != ci && cons[cj].len() < c.len() && cons[cj].iter().all(|&y| mark[y]) {
                    keep[ci] = false;
                    break 'outer;
                }
            }
        }
        for &x in c {
            mark[x] = false;
        }
    }
    cons.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
}

impl Search<'_> {
    /// `None` when some constraint can no longer be met.
    fn lower_bound(&mut self) -> Option<usize> {
        self.stamp += 1;
        let stamp = self.stamp;
        let mut lb = 0usize;
        for &(vs, gs) in &self.triangles {
            if gs.iter().all(|&g| self.hit[g] == 0)
                && vs.iter().all(|&x| self.state[x] == UNDECIDED && self.mark[x] != stamp)
            {
                for x in vs {
                    self.mark[x] = stamp;
                }
                lb += 2;
            }
        }
        for &gi in &self.pack_order {
            if self.hit[gi] > 0 {
                continue;
            }
            let g = &self.groups[gi];
            if self.undecided[gi] == 0 {
                if !g.all_have_priv {
                    return None;
                }
                lb += g.privs.len();
                continue;
            }
            let open = g.shared.iter().filter(|&&x| self.state[x] == UNDECIDED);
            if open.clone().all(|&x| self.mark[x] != stamp) {
                for &x in open {
                    self.mark[x] = stamp;
                }
                lb += 1;
            }
        }
        Some(lb)
    }

    fn set(&mut self, x: usize, v: u8) {
        self.state[x] = v;
        for &gi in &self.groups_of[x] {
            self.undecided[gi] -= 1;
            if v == IN {
                self.hit[gi] += 1;
            }
        }
        if v == IN {
            self.chosen.push(x);
        }
    }

    fn unset(&mut self, x: usize) {
        let v = self.state[x];
        self.state[x] = UNDECIDED;
        for &gi in &self.groups_of[x] {
            self.undecided[gi] += 1;
            if v == IN {
                self.hit[gi] -= 1;
            }
        }
        if v == IN {
            self.chosen.pop();
        }
    }

    /// After `x` is excluded, forces the last open element of every group that
    /// has no private fallback. Forced elements are appended to `trail`.
    fn propagate(&mut self, x: usize, trail: &mut Vec<usize>) -> bool {
        // forcing only includes, so exclusions never cascade
        for k in 0..self.groups_of[x].len() {
            let gi = self.groups_of[x][k];
            if self.hit[gi] > 0 || self.groups[gi].all_have_priv {
                continue;
            }
            if self.undecided[gi] == 0 {
                return false;
            }
            if self.undecided[gi] == 1 {
                let z = *self.groups[gi].shared.iter().find(|&&z| self.state[z] == UNDECIDED).expect("one open");
                if self.chosen.len() >= self.budget {
                    return false;
                }
                self.set(z, IN);
                trail.push(z);
            }
        }
        true
    }

    fn rec(&mut self, depth: usize) -> Result<Flow> {
        let lb = match self.lower_bound() {
            Some(lb) => lb,
            None => return Ok(Flow::Continue(())),
        };
        if self.chosen.len().saturating_add(lb) > self.budget {
            return Ok(Flow::Continue(()));
        }
        let mut depth = depth;
        while depth < self.order.len() && self.state[self.order[depth]] != UNDECIDED {
            depth += 1;
        }
        if depth == self.order.len() {
            return self.leaf();
        }
        let x = self.order[depth];
        if self.chosen.len() < self.budget {
            self.set(x, IN);
            let f = self.rec(depth + 1)?;
            self.unset(x);
            if f.is_break() {
                return Ok(f);
            }
        }
        self.set(x, OUT);
        let mut trail = Vec::new();
        let f = if self.propagate(x, &mut trail) { self.rec(depth + 1)? } else { Flow::Continue(()) };
        for &z in trail.iter().rev() {
            self.unset(z);
        }
        self.unset(x);
        Ok(f)
    }

    fn leaf(&mut self) -> Result<Flow> {
        let mut blocks: Vec<(&[usize], bool)> = Vec::new();
        for (gi, g) in self.groups.iter().enumerate() {
            let need = self.hit[gi] == 0;
            for p in &g.privs {
                if !p.is_empty() || need {
                    blocks.push((p.as_slice(), need));
                }
            }
        }
        if !self.free.is_empty() {
            blocks.push((self.free.as_slice(), false));
        }
        // Required blocks first keeps the budget check tight.
        blocks.sort_by_key(|b| !b.1);
        let mut need_after = vec![0usize; blocks.len() + 1];
        for b in (0..blocks.len()).rev() {
            need_after[b] = need_after[b + 1] + blocks[b].1 as usize;
        }
        let room = self.budget - self.chosen.len();
        if need_after[0] > room {
            return Ok(Flow::Continue(()));
        }
        let mut cur = self.chosen.clone();
        distribute(&blocks, &need_after, 0, 0, false, room, &mut cur, self.emit)
    }
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    blocks: &[(&[usize], bool)],
    need_after: &[usize],
    b: usize,
    j: usize,
    took: bool,
    room: usize,
    cur: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> Result<Flow>,
) -> Result<Flow> {
    if b == blocks.len() {
        return emit(cur);
    }
    let (elems, required) = blocks[b];
    if j == elems.len() {
        if required && !took {
            return Ok(Flow::Continue(()));
        }
        return distribute(blocks, need_after, b + 1, 0, false, room, cur, emit);
    }
    // Elements still owed after this block.
    let owed = need_after[b + 1];
    if room > owed {
        cur.push(elems[j]);
        let f = distribute(blocks, need_after, b, j + 1, true, room - 1, cur, emit)?;
        cur.pop();
        if f.is_break() {
            return Ok(f);
        }
    }
    let still_needed = required && !took;
    if !(still_needed && j + 1 == elems.len()) && room >= owed + still_needed as usize {
        return distribute(blocks, need_after, b, j + 1, took, room, cur, emit);
    }
    Ok(Flow::Continue(()))
}

fn into_sink(sink: &mut Sink) -> impl FnMut(&[usize]) -> Result<Flow> + '_ {
    move |xs| {
        sink.push_indices(xs.iter().copied())?;
        Ok(Flow::Continue(()))
    }
}

fn edge_constraints(g: &Graph) -> Vec<Vec<usize>> {
    g.edges.iter().map(|&(a, b)| vec![a, b]).collect()
}

pub(super) fn vertex_cover(g: &Graph, budget: usize, sink: &mut Sink) -> Result<()> {
    search(g.n, edge_constraints(g), budget, &mut into_sink(sink))?;
    Ok(())
}

fn complement_of_covers(n: usize, cons: Vec<Vec<usize>>, budget: usize, sink: &mut Sink) -> Result<()> {
    search(n, cons, budget, &mut |xs: &[usize]| {
        let mut inside = vec![true; n];
        for &x in xs {
            inside[x] = false;
        }
        sink.push_indices((0..n).filter(|&v| inside[v]))?;
        Ok(Flow::Continue(()))
    })?;
    Ok(())
}

pub(super) fn independent_set(g: &Graph, k: usize, mode: Mode, sink: &mut Sink) -> Result<()> {
    let budget = match mode {
        Mode::Feasible => usize::MAX,
        Mode::Solutions => match g.n.checked_sub(k) {
            Some(b) => b,
            None => return Ok(()),
        },
    };
    complement_of_covers(g.n, edge_constraints(g), budget, sink)
}

pub(super) fn clique(g: &Graph, k: usize, mode: Mode, sink: &mut Sink) -> Result<()> {
    let budget = match mode {
        Mode::Feasible => usize::MAX,
        Mode::Solutions => match g.n.checked_sub(k) {
            Some(b) => b,
            None => return Ok(()),
        },
    };
    let adj = g.adjacency();
    let mut cons = Vec::new();
    for a in 0..g.n {
        for b in a + 1..g.n {
            if !adj[a][b] {
                cons.push(vec![a, b]);
            }
        }
    }
    complement_of_covers(g.n, cons, budget, sink)
}

pub(super) fn dominating_set(g: &Graph, budget: usize, sink: &mut Sink) -> Result<()> {
    let mut cons: Vec<Vec<usize>> = (0..g.n).map(|v| vec![v]).collect();
    for &(a, b) in &g.edges {
        cons[a].push(b);
        cons[b].push(a);
    }
    search(g.n, cons, budget, &mut into_sink(sink))?;
    Ok(())
}

pub(super) fn set_cover(sys: &SetSystem, budget: usize, sink: &mut Sink) -> Result<()> {
    let mut cons = vec![Vec::new(); sys.ground];
    for (i, s) in sys.sets.iter().enumerate() {
        for &x in s {
            cons[x].push(i);
        }
    }
    search(sys.sets.len(), cons, budget, &mut into_sink(sink))?;
    Ok(())
}

pub(super) fn hitting_set(sys: &SetSystem, budget: usize, sink: &mut Sink) -> Result<()> {
    search(sys.ground, sys.sets.clone(), budget, &mut into_sink(sink))?;
    Ok(())
}

pub(super) fn p_center(f: &Facility, sink: &mut Sink) -> Result<()> {
    let cons = (0..f.clients)
        .map(|j| (0..f.facilities()).filter(|&i| f.cost[i][j] <= f.k).collect())
        .collect();
    search(f.facilities(), cons, f.p, &mut into_sink(sink))?;
    Ok(())
}
