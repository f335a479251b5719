//! Builders for the reductions out of SAT and 3SAT that carry a blow-up gadget.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::{ddp, lb_mask, ArtifactKind, BetaChoice, BetaTable, BlowupEdge, ReductionArtifact};
use crate::error::{bail, Result};
use crate::problems::{Cnf, DHamPath, Digraph, Graph, GraphK, Lit, ProblemInstance, Steiner, SubsetSum};
use crate::ssp::DistanceMeasure;

/// Counts the builders and beta formulas depend on.
pub(super) struct Shape {
    pub vars: u64,
    pub clauses: u64,
    pub unblown: u64,
    pub helpers: u64,
}

impl Shape {
    fn of(f: &Cnf, mask: &[bool]) -> Shape {
        Shape {
            vars: f.num_vars as u64,
            clauses: f.clauses.len() as u64,
            unblown: mask.iter().filter(|&&b| !b).count() as u64,
            helpers: f.clauses.iter().map(|c| c.len().saturating_sub(3) as u64).sum(),
        }
    }
}

/// Closed-form blow-up factors as published.
pub fn beta_table(edge: BlowupEdge, f: &Cnf, lb: &[Lit]) -> Result<BetaTable> {
    let mask = lb_mask(f, lb)?;
    Ok(table(edge, &Shape::of(f, &mask)))
}

/// Closed-form factors with the corrections needed for the exact biconditional.
pub fn beta_adjusted(edge: BlowupEdge, f: &Cnf, lb: &[Lit]) -> Result<BetaTable> {
    let mask = lb_mask(f, lb)?;
    Ok(adjusted(edge, &Shape::of(f, &mask)))
}

fn table(edge: BlowupEdge, s: &Shape) -> BetaTable {
    let (c, u) = (s.clauses, s.unblown);
    match edge {
        BlowupEdge::SatTo3Sat => BetaTable::one_sided(u),
        BlowupEdge::ThreeSatToVc => BetaTable::uniform(2 * s.vars + 3 * c),
        BlowupEdge::ThreeSatToIs | BlowupEdge::ThreeSatToSubsetSum => BetaTable::one_sided(c + u),
        BlowupEdge::ThreeSatToDHamPath => BetaTable::one_sided(2 * c + (4 * c + 2) * u),
        BlowupEdge::ThreeSatTo2Ddp => BetaTable::one_sided(17 * c + 21 * c * u),
        BlowupEdge::ThreeSatToSteiner => BetaTable::one_sided(c * (2 * s.vars + 1) + 4 * u),
    }
}

fn adjusted(edge: BlowupEdge, s: &Shape) -> BetaTable {
    let (c, u) = (s.clauses, s.unblown);
    match edge {
        // helper variables may flip between agreeing solutions
        BlowupEdge::SatTo3Sat => BetaTable::one_sided(u + s.helpers),
        // each clause detour adds two arcs and can restore a path arc the other
        // solution skipped; a reversed path adds its 4|C|+1 arcs and two connectors
        BlowupEdge::ThreeSatToDHamPath => BetaTable::one_sided(3 * c + (4 * c + 3) * u),
        // a clause may route through a different switch even when every variable is
        // blown: two switches change (at most 22 arcs each) plus the two clause arcs
        BlowupEdge::ThreeSatTo2Ddp => {
            BetaTable::one_sided((17 * c + 21 * c * u).max(46 * c + (4 * c + 2) * u))
        }
        _ => table(edge, s),
    }
}

pub fn build_blowup(
    edge: BlowupEdge,
    source: &Cnf,
    lb: &[Lit],
    measure: DistanceMeasure,
    choice: BetaChoice,
) -> Result<ReductionArtifact> {
    if edge == BlowupEdge::SatTo3Sat {
        source.validate()?;
    } else {
        source.validate_3cnf()?;
    }
    let mask = lb_mask(source, lb)?;
    let shape = Shape::of(source, &mask);
    let beta = match choice {
        BetaChoice::Table => table(edge, &shape),
        BetaChoice::Adjusted => adjusted(edge, &shape),
        BetaChoice::Fixed(b) => BetaTable::uniform(b),
    };
    let b = usize::try_from(beta.get(measure)).unwrap_or(usize::MAX);
    if b > 1 << 16 {
        bail!(Capacity, "blow-up factor {b} is too large to materialize");
    }
    let (target, f) = match edge {
        BlowupEdge::SatTo3Sat => sat_to_3sat(source, &mask, b),
        BlowupEdge::ThreeSatToVc => literal_graph(source, &mask, b, false),
        BlowupEdge::ThreeSatToIs => literal_graph(source, &mask, b, true),
        BlowupEdge::ThreeSatToSubsetSum => subset_sum(source, &mask, b),
        BlowupEdge::ThreeSatToDHamPath => dham_path(source, &mask, b)?,
        BlowupEdge::ThreeSatTo2Ddp => ddp::two_ddp(source, &mask, b)?,
        BlowupEdge::ThreeSatToSteiner => steiner(source, &mask, b)?,
    };
    let mut lb_sorted: Vec<Lit> = lb.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    lb_sorted.sort_by_key(|l| l.index());
    let src = if edge == BlowupEdge::SatTo3Sat {
        ProblemInstance::Sat(source.clone())
    } else {
        ProblemInstance::ThreeSat(source.clone())
    };
    Ok(ReductionArtifact {
        edge: edge.to_string(),
        kind: ArtifactKind::Blowup,
        source: src,
        target,
        f,
        lb: Some(lb_sorted),
        measure: Some(measure),
        beta: Some(beta),
        u_on: Vec::new(),
        u_off: Vec::new(),
    })
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn need_vars_and_clauses(f: &Cnf, what: &str) -> Result<()> {
    if f.num_vars == 0 || f.clauses.is_empty() {
        bail!(Precondition, "the {what} construction needs at least one variable and one clause");
    }
    Ok(())
}

/// Distinct literals of a clause, first occurrence order.
pub(super) fn distinct(c: &[Lit]) -> Vec<Lit> {
    let mut out: Vec<Lit> = Vec::new();
    for &l in c {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

fn sat_to_3sat(f: &Cnf, mask: &[bool], beta: usize) -> (ProblemInstance, Vec<usize>) {
    let mut names: Vec<String> = (0..f.num_vars).map(|v| f.var_name(v)).collect();
    let mut clauses = Vec::new();
    for (j, c) in f.clauses.iter().enumerate() {
        let mut rest: Vec<Lit> = c.clone();
        let mut depth = 0;
        while rest.len() > 3 {
            depth += 1;
            let h = names.len();
            names.push(format!("_h{}.{}", j + 1, depth));
            clauses.push(vec![rest[0], rest[1], Lit::pos(h)]);
            let mut next = vec![Lit::neg(h)];
            next.extend_from_slice(&rest[2..]);
            rest = next;
        }
        while rest.len() < 3 {
            rest.push(*rest.last().expect("clauses are nonempty"));
        }
        clauses.push(rest);
    }
    for v in (0..f.num_vars).filter(|&v| mask[v]) {
        for i in 1..=beta {
            let copy = names.len();
            names.push(format!("{}^{i}", f.var_name(v)));
            clauses.push(vec![Lit::pos(v), Lit::neg(copy), Lit::neg(copy)]);
            clauses.push(vec![Lit::neg(v), Lit::pos(copy), Lit::pos(copy)]);
        }
    }
    let target = Cnf { num_vars: names.len(), clauses, var_names: names };
    (ProblemInstance::ThreeSat(target), identity(2 * f.num_vars))
}

/// Shared layout of the vertex cover and independent set targets: literal vertices
/// (index = literal index), three vertices per clause, then the gadget copies.
fn literal_graph(f: &Cnf, mask: &[bool], beta: usize, independent: bool) -> (ProblemInstance, Vec<usize>) {
    let n = f.num_vars;
    let mut names = Vec::new();
    for v in 0..n {
        names.push(f.var_name(v));
        names.push(format!("~{}", f.var_name(v)));
    }
    let mut edges = Vec::new();
    for v in 0..n {
        edges.push((2 * v, 2 * v + 1));
    }
    let mut connectors = Vec::new();
    for (j, c) in f.clauses.iter().enumerate() {
        let base = names.len();
        for p in 0..3 {
            names.push(format!("c{}.{}", j + 1, p + 1));
        }
        edges.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)]);
        for (p, &l) in c.iter().enumerate() {
            let lit = if independent { l.negate() } else { l };
            connectors.push((lit.index(), base + p));
        }
    }
    edges.extend(connectors);
    let mut blown = 0;
    for v in (0..n).filter(|&v| mask[v]) {
        blown += 1;
        let mut pos = vec![2 * v];
        let mut neg = vec![2 * v + 1];
        for i in 1..=beta {
            pos.push(names.len());
            names.push(format!("{}^{i}", f.var_name(v)));
            neg.push(names.len());
            names.push(format!("~{}^{i}", f.var_name(v)));
        }
        for &a in &pos {
            for &b in &neg {
                if (a, b) != (2 * v, 2 * v + 1) {
                    edges.push((a, b));
                }
            }
        }
    }
    let per_clause = if independent { 1 } else { 2 };
    let k = (beta + 1) * blown + (n - blown) + per_clause * f.clauses.len();
    let graph = Graph { n: names.len(), edges, names };
    let g = GraphK { graph, k };
    let target = if independent { ProblemInstance::IndependentSet(g) } else { ProblemInstance::VertexCover(g) };
    (target, identity(2 * n))
}

fn subset_sum(f: &Cnf, mask: &[bool], beta: usize) -> (ProblemInstance, Vec<usize>) {
    let n = f.num_vars;
    // column layout, most significant first
    let mut var_col = vec![0; n];
    let mut copy_cols: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut cols = 0;
    for v in 0..n {
        var_col[v] = cols;
        cols += 1;
        if mask[v] {
            copy_cols[v] = Some((cols, cols + beta));
            cols += 2 * beta;
        }
    }
    let clause_col: Vec<usize> = (0..f.clauses.len()).map(|j| cols + j).collect();
    cols += f.clauses.len();
    let number = |digits: &[(usize, u32)]| -> BigUint {
        let mut x = BigUint::from(0u32);
        for &(col, d) in digits {
            x += BigUint::from(d) * BigUint::from(10u32).pow((cols - 1 - col) as u32);
        }
        x
    };
    let mut items = Vec::new();
    for v in 0..n {
        for neg in [false, true] {
            let l = Lit { var: v, neg };
            let mut d = vec![(var_col[v], 1)];
            if let Some((pos_start, neg_start)) = copy_cols[v] {
                let other = if neg { pos_start } else { neg_start };
                d.extend((0..beta).map(|i| (other + i, 1)));
            }
            for (j, c) in f.clauses.iter().enumerate() {
                if c.contains(&l) {
                    d.push((clause_col[j], 1));
                }
            }
            items.push(number(&d));
        }
        if let Some((pos_start, neg_start)) = copy_cols[v] {
            for start in [pos_start, neg_start] {
                for i in 0..beta {
                    items.push(number(&[(start + i, 1)]));
                }
            }
        }
    }
    for &col in &clause_col {
        items.push(number(&[(col, 1)]));
        items.push(number(&[(col, 2)]));
    }
    let mut digits: Vec<(usize, u32)> = (0..cols).map(|c| (c, 1)).collect();
    for &col in &clause_col {
        digits[col].1 = 4;
    }
    let target = number(&digits);
    // literal numbers sit at the head of each variable block
    let mut f_map = Vec::with_capacity(2 * n);
    let mut at = 0;
    for v in 0..n {
        f_map.push(at);
        f_map.push(at + 1);
        at += 2 + if mask[v] { 2 * beta } else { 0 };
    }
    (ProblemInstance::SubsetSum(SubsetSum { items, target }), f_map)
}

fn dham_path(f: &Cnf, mask: &[bool], beta: usize) -> Result<(ProblemInstance, Vec<usize>)> {
    need_vars_and_clauses(f, "Hamiltonian path")?;
    let n = f.num_vars;
    let m = f.clauses.len();
    let mut names = vec!["s".to_string()];
    // path vertices v^0, v^1..v^{4m-1}, gadget vertices, v^{4m}, v^{4m+1};
    // the two outer vertices keep an end of the path from being visited on its own
    // while the rest of the path is entered through a clause vertex
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let x = f.var_name(v);
        let mut p = Vec::new();
        for k in 0..4 * m {
            p.push(names.len());
            names.push(format!("{x}.{k}"));
        }
        if mask[v] {
            for i in 1..=beta {
                p.push(names.len());
                names.push(format!("{x}.b{i}"));
            }
        }
        for k in [4 * m, 4 * m + 1] {
            p.push(names.len());
            names.push(format!("{x}.{k}"));
        }
        paths.push(p);
    }
    let clause_v: Vec<usize> = (0..m)
        .map(|j| {
            names.push(format!("c{}", j + 1));
            names.len() - 1
        })
        .collect();
    let t = names.len();
    names.push("t".to_string());
    let s = 0;
    let mut arcs = Vec::new();
    let mut f_map = vec![0; 2 * n];
    for (v, p) in paths.iter().enumerate() {
        for w in p.windows(2) {
            if w[0] == p[1] {
                f_map[2 * v] = arcs.len();
                f_map[2 * v + 1] = arcs.len() + 1;
            }
            arcs.push((w[0], w[1]));
            arcs.push((w[1], w[0]));
        }
    }
    let ends = |p: &Vec<usize>| [p[0], *p.last().expect("paths are nonempty")];
    for e in ends(&paths[0]) {
        arcs.push((s, e));
    }
    for i in 0..n - 1 {
        for a in ends(&paths[i]) {
            for b in ends(&paths[i + 1]) {
                arcs.push((a, b));
            }
        }
    }
    for e in ends(&paths[n - 1]) {
        arcs.push((e, t));
    }
    for (j, c) in f.clauses.iter().enumerate() {
        let jj = j + 1;
        for l in distinct(c) {
            let p = &paths[l.var];
            let lo = p[4 * jj - 2];
            let hi = p[4 * jj - 1];
            if l.neg {
                arcs.push((hi, clause_v[j]));
                arcs.push((clause_v[j], lo));
            } else {
                arcs.push((lo, clause_v[j]));
                arcs.push((clause_v[j], hi));
            }
        }
    }
    let graph = Digraph { n: names.len(), arcs, names };
    Ok((ProblemInstance::DHamPath(DHamPath { graph, s, t }), f_map))
}

fn steiner(f: &Cnf, mask: &[bool], beta: usize) -> Result<(ProblemInstance, Vec<usize>)> {
    if f.num_vars == 0 {
        bail!(Precondition, "the Steiner tree construction needs at least one variable");
    }
    let n = f.num_vars;
    let lits = 2 * n;
    let mut names = vec!["s".to_string()];
    let mut lit_v = vec![0; lits];
    let mut joints = vec![0usize];
    for v in 0..n {
        lit_v[2 * v] = names.len();
        names.push(f.var_name(v));
        lit_v[2 * v + 1] = names.len();
        names.push(format!("~{}", f.var_name(v)));
        joints.push(names.len());
        names.push(if v + 1 == n { "t".to_string() } else { format!("j{}", v + 1) });
    }
    let mut edges = Vec::new();
    let mut f_map = vec![0; lits];
    for v in 0..n {
        for neg in [0, 1] {
            f_map[2 * v + neg] = edges.len();
            edges.push((joints[v], lit_v[2 * v + neg]));
        }
        for neg in [0, 1] {
            edges.push((lit_v[2 * v + neg], joints[v + 1]));
        }
    }
    let mut terminals = vec![0, joints[n]];
    for (j, c) in f.clauses.iter().enumerate() {
        let cv = names.len();
        names.push(format!("c{}", j + 1));
        terminals.push(cv);
        for l in distinct(c) {
            let mut prev = lit_v[l.index()];
            for k in 1..=lits {
                let w = names.len();
                names.push(format!("c{}.{}.{k}", j + 1, l));
                edges.push((prev, w));
                prev = w;
            }
            edges.push((prev, cv));
        }
    }
    let mut blown = 0;
    for v in (0..n).filter(|&v| mask[v]) {
        blown += 1;
        let x = f.var_name(v);
        for i in 1..=beta {
            let a = names.len();
            names.push(format!("{x}^{i}"));
            let b = names.len();
            names.push(format!("~{x}^{i}"));
            let tv = names.len();
            names.push(format!("t.{x}.{i}"));
            terminals.push(tv);
            edges.push((lit_v[2 * v], a));
            edges.push((lit_v[2 * v + 1], b));
            edges.push((a, tv));
            edges.push((tv, b));
        }
    }
    let k = lits + f.clauses.len() * (lits + 1) + 2 * beta * blown;
    let cost = vec![1; edges.len()];
    let graph = Graph { n: names.len(), edges, names };
    Ok((ProblemInstance::SteinerTree(Steiner { graph, terminals, cost, k: k as i64 }), f_map))
}
