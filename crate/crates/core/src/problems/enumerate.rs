use super::*;

/// Collects solutions and enforces the solution cap.
pub(super) struct Sink {
    n: usize,
    cap: usize,
    out: Vec<ElementSet>,
}

impl Sink {
    pub(super) fn new(n: usize, cap: usize) -> Self {
        Sink { n, cap, out: Vec::new() }
    }

    pub(super) fn universe(&self) -> usize {
        self.n
    }

    pub(super) fn remaining(&self) -> usize {
        self.cap - self.out.len()
    }

    pub(super) fn push(&mut self, s: ElementSet) -> Result<()> {
        if self.out.len() >= self.cap {
            bail!(Capacity, "more than {} solutions", self.cap);
        }
        self.out.push(s);
        Ok(())
    }

    pub(super) fn push_indices(&mut self, items: impl IntoIterator<Item = usize>) -> Result<()> {
        let mut s = ElementSet::empty(self.n);
        for i in items {
            s.insert(i);
        }
        self.push(s)
    }

    pub(super) fn finish(mut self) -> Vec<ElementSet> {
        self.out.sort();
        self.out.dedup();
        self.out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Mode {
    Solutions,
    Feasible,
}

/// All solutions in canonical order.
pub fn enumerate_solutions(inst: &ProblemInstance, limits: &Limits) -> Result<Vec<ElementSet>> {
    run(inst, limits, Mode::Solutions)
}

/// All feasible sets of a LOP kind, ignoring the cost threshold.
pub fn enumerate_feasible(inst: &ProblemInstance, limits: &Limits) -> Result<Vec<ElementSet>> {
    if !inst.kind().is_lop() {
        bail!(Unsupported, "{} has no feasible-set envelope", inst.kind());
    }
    run(inst, limits, Mode::Feasible)
}

fn run(inst: &ProblemInstance, limits: &Limits, mode: Mode) -> Result<Vec<ElementSet>> {
    inst.validate()?;
    let n = inst.universe_size();
    limits.check_universe(n)?;
    let mut sink = Sink::new(n, limits.max_solutions);
    if n <= DEEP_UNIVERSE {
        dispatch(inst, mode, &mut sink)?;
    } else {
        // the searches recurse once per element
        std::thread::scope(|scope| {
            std::thread::Builder::new()
                .stack_size(DEEP_STACK)
                .spawn_scoped(scope, || dispatch(inst, mode, &mut sink))
                .map_err(|e| SspError::Capacity(format!("cannot start search thread: {e}")))?
                .join()
                .unwrap_or_else(|p| std::panic::resume_unwind(p))
        })?;
    }
    Ok(sink.finish())
}

const DEEP_UNIVERSE: usize = 1024;
const DEEP_STACK: usize = 1 << 30;

fn dispatch(inst: &ProblemInstance, mode: Mode, sink: &mut Sink) -> Result<()> {
    use ProblemInstance as P;
    let budget = |k: usize| if mode == Mode::Solutions { k } else { usize::MAX };
    match inst {
        P::Sat(f) | P::ThreeSat(f) => sat::enumerate(f, sink),
        P::VertexCover(g) => hitting::vertex_cover(&g.graph, budget(g.k), sink),
        P::IndependentSet(g) => hitting::independent_set(&g.graph, g.k, mode, sink),
        P::Clique(g) => hitting::clique(&g.graph, g.k, mode, sink),
        P::DominatingSet(g) => hitting::dominating_set(&g.graph, budget(g.k), sink),
        P::SetCover(s) => hitting::set_cover(s, budget(s.k), sink),
        P::HittingSet(s) => hitting::hitting_set(s, budget(s.k), sink),
        P::PCenter(f) => hitting::p_center(f, sink),
        P::FeedbackVertexSet(g) => cycles::feedback_vertex_set(&g.graph, budget(g.k), sink),
        P::FeedbackArcSet(g) => cycles::feedback_arc_set(&g.graph, budget(g.k), sink),
        P::Ufl(f) => facility::ufl(f, sink),
        P::PMedian(f) => facility::p_median(f, sink),
        P::SubsetSum(s) => numbers::subset_sum(s, sink),
        P::Knapsack(k) => numbers::knapsack(k, mode, sink),
        P::Partition(p) => numbers::partition(p, sink),
        P::Scheduling(s) => numbers::scheduling(s, mode, sink),
        P::DHamPath(p) => paths::ham_path(&p.graph, p.s, p.t, sink),
        P::DHamCycle(g) => paths::directed_ham_cycle(g, sink),
        P::UHamCycle(g) => paths::undirected_ham_cycle(g, sink),
        P::Tsp(t) => paths::tsp(t, mode, sink),
        P::TwoDdp(d) | P::KDdp(d) => paths::disjoint_paths(d, sink),
        P::SteinerTree(s) => steiner::enumerate(s, mode, sink),
    }
}

/// Reference enumerator: scans all `2^n` subsets through `verify`.
/// Only meant for cross-checking on tiny universes.
pub fn brute_force_solutions(inst: &ProblemInstance, limits: &Limits) -> Result<Vec<ElementSet>> {
    scan(inst, limits, |s| inst.verify(s))
}

pub fn brute_force_feasible(inst: &ProblemInstance, limits: &Limits) -> Result<Vec<ElementSet>> {
    if !inst.kind().is_lop() {
        bail!(Unsupported, "{} has no feasible-set envelope", inst.kind());
    }
    scan(inst, limits, |s| inst.verify_feasible(s))
}

fn scan(
    inst: &ProblemInstance,
    limits: &Limits,
    test: impl Fn(&ElementSet) -> Result<bool>,
) -> Result<Vec<ElementSet>> {
    inst.validate()?;
    let n = inst.universe_size();
    limits.check_universe(n)?;
    if n > 30 {
        bail!(Capacity, "subset scan over {n} elements refused");
    }
    let mut sink = Sink::new(n, limits.max_solutions);
    for mask in 0u64..(1u64 << n) {
        let s = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))?;
        if test(&s)? {
            sink.push(s)?;
        }
    }
    Ok(sink.finish())
}
