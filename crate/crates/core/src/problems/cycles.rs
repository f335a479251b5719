//! Feedback sets via lazily generated cycle constraints: enumerate hitting
//! sets of the cycles known so far, and whenever a candidate leaves a cycle
//! behind, add that cycle and start over.

use std::collections::{BTreeSet, VecDeque};

use super::enumerate::Sink;
use super::hitting::{search, Flow};
use super::*;

const NEW_CYCLES_PER_ROUND: usize = 32;

pub(super) fn feedback_vertex_set(g: &Digraph, budget: usize, sink: &mut Sink) -> Result<()> {
    let mut cons: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &(a, b) in &g.arcs {
        let mut c = vec![a, b];
        c.sort_unstable();
        c.dedup();
        if a == b || g.arcs.contains(&(b, a)) {
            cons.insert(c);
        }
    }
    lazy(g.n, cons, budget, sink, |removed| {
        let keep: Vec<usize> =
            (0..g.arcs.len()).filter(|&i| !removed[g.arcs[i].0] && !removed[g.arcs[i].1]).collect();
        shortest_cycle(g, &keep).map(|arcs| {
            let mut vs: Vec<usize> = arcs.iter().map(|&i| g.arcs[i].0).collect();
            vs.sort_unstable();
            vs
        })
    })
}

pub(super) fn feedback_arc_set(g: &Digraph, budget: usize, sink: &mut Sink) -> Result<()> {
    let mut cons: BTreeSet<Vec<usize>> = BTreeSet::new();
    let all: Vec<usize> = (0..g.arcs.len()).collect();
    // Seed with a shortest cycle through every arc.
    for i in 0..g.arcs.len() {
        if let Some(c) = shortest_cycle_through(g, &all, i) {
            cons.insert(c);
        }
    }
    lazy(g.arcs.len(), cons, budget, sink, |removed| {
        let keep: Vec<usize> = (0..g.arcs.len()).filter(|&i| !removed[i]).collect();
        shortest_cycle(g, &keep)
    })
}

fn lazy(
    n: usize,
    mut cons: BTreeSet<Vec<usize>>,
    budget: usize,
    sink: &mut Sink,
    residual_cycle: impl Fn(&[bool]) -> Option<Vec<usize>>,
) -> Result<()> {
    loop {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut round = Sink::new(sink.universe(), usize::MAX);
        let mut count = 0usize;
        let cap = sink.remaining();
        search(n, cons.iter().cloned().collect(), budget, &mut |xs: &[usize]| {
            let mut removed = vec![false; n];
            for &x in xs {
                removed[x] = true;
            }
            match residual_cycle(&removed) {
                Some(c) => {
                    if !cons.contains(&c) {
                        found.insert(c);
                    }
                    if found.len() >= NEW_CYCLES_PER_ROUND {
                        return Ok(Flow::Break(()));
                    }
                }
                None if found.is_empty() => {
                    count += 1;
                    if count > cap {
                        bail!(Capacity, "more than {cap} solutions");
                    }
                    round.push_indices(xs.iter().copied())?;
                }
                None => {}
            }
            Ok(Flow::Continue(()))
        })?;
        if found.is_empty() {
            for s in round.finish() {
                sink.push(s)?;
            }
            return Ok(());
        }
        cons.extend(found);
    }
}

/// Arc ids of a shortest cycle using only `keep`.
fn shortest_cycle(g: &Digraph, keep: &[usize]) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for &i in keep {
        if let Some(c) = shortest_cycle_through(g, keep, i) {
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                best = Some(c);
                if best.as_ref().unwrap().len() == 1 {
                    break;
                }
            }
        }
    }
    best
}

/// Sorted arc ids of a shortest cycle through arc `first`.
fn shortest_cycle_through(g: &Digraph, keep: &[usize], first: usize) -> Option<Vec<usize>> {
    let (a, b) = g.arcs[first];
    if a == b {
        return Some(vec![first]);
    }
    let mut out = vec![Vec::new(); g.n];
    for &i in keep {
        out[g.arcs[i].0].push(i);
    }
    let mut via = vec![usize::MAX; g.n];
    let mut seen = vec![false; g.n];
    seen[b] = true;
    let mut q = VecDeque::from([b]);
    while let Some(v) = q.pop_front() {
        if v == a {
            let mut cyc = vec![first];
            let mut w = a;
            while w != b {
                let arc = via[w];
                cyc.push(arc);
                w = g.arcs[arc].0;
            }
            cyc.sort_unstable();
            return Some(cyc);
        }
        for &i in &out[v] {
            let w = g.arcs[i].1;
            if !seen[w] {
                seen[w] = true;
                via[w] = i;
                q.push_back(w);
            }
        }
    }
    None
}
