//! 3SAT to two directed vertex-disjoint paths, built from stacked switch gadgets.

use super::blowup::distinct;
use crate::error::{bail, Result};
use crate::problems::{Cnf, Ddp, Digraph, ProblemInstance};

struct Net {
    names: Vec<String>,
    arcs: Vec<(usize, usize)>,
}

impl Net {
    fn vertex(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }
    fn arc(&mut self, a: usize, b: usize) -> usize {
        self.arcs.push((a, b));
        self.arcs.len() - 1
    }
}

/// Port vertices of one switch. Inputs are entered by an external arc into the
/// port vertex; outputs leave through an external arc out of the port vertex.
struct Switch {
    b: usize,
    c: usize,
    w: usize,
    y: usize,
    a: usize,
    d: usize,
    x: usize,
    z: usize,
}

/// 22 vertices, 26 internal arcs.
fn switch(net: &mut Net, tag: &str) -> Switch {
    let mut v = |s: &str| net.vertex(format!("{tag}.{s}"));
    let (c, a, b, d) = (v("C"), v("A"), v("B"), v("D"));
    let left: Vec<usize> = (1..=5).map(|i| v(&format!("L{i}"))).collect();
    let right: Vec<usize> = (1..=5).map(|i| v(&format!("R{i}"))).collect();
    let wv: Vec<usize> = (1..=3).map(|i| v(&format!("W{i}"))).collect();
    let yv: Vec<usize> = (1..=3).map(|i| v(&format!("Y{i}"))).collect();
    let (x, z) = (v("X"), v("Z"));
    for col in [&left, &right] {
        net.arc(c, col[0]);
        for i in 0..4 {
            net.arc(col[i], col[i + 1]);
        }
        net.arc(col[4], a);
    }
    net.arc(wv[0], wv[1]);
    net.arc(wv[1], wv[2]);
    net.arc(wv[2], left[0]);
    net.arc(right[4], wv[1]);
    net.arc(yv[0], yv[1]);
    net.arc(yv[1], yv[2]);
    net.arc(yv[2], right[0]);
    net.arc(left[4], yv[1]);
    net.arc(b, left[3]);
    net.arc(b, right[3]);
    net.arc(wv[2], d);
    net.arc(yv[2], d);
    net.arc(left[1], x);
    net.arc(right[1], z);
    Switch { b, c, w: wv[0], y: yv[0], a, d, x, z }
}

pub(super) fn two_ddp(f: &Cnf, mask: &[bool], beta: usize) -> Result<(ProblemInstance, Vec<usize>)> {
    if f.num_vars == 0 || f.clauses.is_empty() {
        bail!(Precondition, "the disjoint paths construction needs at least one variable and one clause");
    }
    let n = f.num_vars;
    let m = f.clauses.len();
    let mut net = Net { names: Vec::new(), arcs: Vec::new() };
    let s1 = net.vertex("s1".into());
    let t1 = net.vertex("t1".into());
    let s2 = net.vertex("s2".into());
    let t2 = net.vertex("t2".into());

    // literal paths: l^1..l^{4m-1}, gadget vertices, l^{4m}
    let mut xs = Vec::new();
    let mut xt = Vec::new();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let x = f.var_name(v);
        xs.push(net.vertex(format!("{x}.s")));
        xt.push(net.vertex(format!("{x}.t")));
        for neg in [false, true] {
            let l = if neg { format!("~{x}") } else { x.clone() };
            let mut p = Vec::new();
            for k in 1..4 * m {
                p.push(net.vertex(format!("{l}.{k}")));
            }
            if mask[v] {
                for i in 1..=beta {
                    p.push(net.vertex(format!("{l}.b{i}")));
                }
            }
            p.push(net.vertex(format!("{l}.{}", 4 * m)));
            paths.push(p);
        }
    }
    let c1: Vec<usize> = (1..=m).map(|j| net.vertex(format!("c{j}.1"))).collect();
    let c2: Vec<usize> = (1..=m).map(|j| net.vertex(format!("c{j}.2"))).collect();

    // one switch per distinct literal occurrence; it cuts arc (4j-2, 4j-1) on the
    // complementary literal's path and offers the clause a Y..Z route
    let mut cut = vec![Vec::new(); 2 * n];
    let mut switches = Vec::new();
    for (j, c) in f.clauses.iter().enumerate() {
        for l in distinct(c) {
            let sw = switch(&mut net, &format!("k{}", switches.len() + 1));
            cut[l.negate().index()].push((4 * (j + 1) - 2, switches.len()));
            net.arc(c1[j], sw.y);
            net.arc(sw.z, c2[j]);
            switches.push(sw);
        }
    }

    let mut f_map = vec![0; 2 * n];
    for v in 0..n {
        for neg in 0..2 {
            let li = 2 * v + neg;
            let p = &paths[li];
            f_map[li] = net.arc(xs[v], p[0]);
            for k in 0..p.len() - 1 {
                // p[k] is l^{k+1}
                match cut[li].iter().find(|&&(at, _)| at == k + 1) {
                    Some(&(_, si)) => {
                        let (w, x) = (switches[si].w, switches[si].x);
                        net.arc(p[k], w);
                        net.arc(x, p[k + 1]);
                    }
                    None => {
                        net.arc(p[k], p[k + 1]);
                    }
                }
            }
            net.arc(*p.last().expect("paths are nonempty"), xt[v]);
        }
        if v + 1 < n {
            net.arc(xt[v], xs[v + 1]);
        }
    }
    net.arc(xt[n - 1], c1[0]);
    for j in 0..m - 1 {
        net.arc(c2[j], c1[j + 1]);
    }
    net.arc(c2[m - 1], t1);

    // the stack: path 1 runs B->D upward, path 2 runs C->A downward
    let last = switches.len() - 1;
    net.arc(s1, switches[0].b);
    for k in 0..last {
        net.arc(switches[k].d, switches[k + 1].b);
        net.arc(switches[k + 1].a, switches[k].c);
    }
    net.arc(switches[last].d, xs[0]);
    net.arc(s2, switches[last].c);
    net.arc(switches[0].a, t2);

    let graph = Digraph { n: net.names.len(), arcs: net.arcs, names: net.names };
    Ok((ProblemInstance::TwoDdp(Ddp { graph, pairs: vec![(s1, t1), (s2, t2)] }), f_map))
}
