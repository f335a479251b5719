use num_bigint::BigUint;
use sspforge::gen;
use sspforge::problems::*;
use sspforge::reductions::*;
use sspforge::{DistanceMeasure, Limits, SspError};

fn phi() -> Cnf {
    Cnf::from_ints(3, &[&[-1, -2, 3]]).unwrap()
}

fn big(xs: &[u32]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn vc_phi() -> ReductionArtifact {
    build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &[], DistanceMeasure::Hamming, BetaChoice::Table).unwrap()
}

fn graph_k(n: usize, edges: &[(usize, usize)], k: usize) -> GraphK {
    GraphK { graph: Graph::new(n, edges.to_vec()), k }
}

#[test]
fn classic_vertex_cover_gadget() {
    let a = vc_phi();
    let ProblemInstance::VertexCover(g) = &a.target else { panic!() };
    assert_eq!((g.graph.n, g.graph.edges.len(), g.k), (9, 9, 5));
    assert_eq!(a.beta, Some(BetaTable::uniform(9)));
    assert!(check_ssp(&a, &Limits::wide()).unwrap().pass);
}

#[test]
fn independent_set_gadget() {
    let a = build_blowup(BlowupEdge::ThreeSatToIs, &phi(), &[], DistanceMeasure::Hamming, BetaChoice::Table).unwrap();
    let ProblemInstance::IndependentSet(g) = &a.target else { panic!() };
    assert_eq!(g.k, 4);
    assert!(check_ssp(&a, &Limits::wide()).unwrap().pass);
}

#[test]
fn lowered_threshold_is_caught_and_replayed() {
    let mut a = vc_phi();
    if let ProblemInstance::VertexCover(g) = &mut a.target {
        g.k = 4;
    }
    let limits = Limits::wide();
    let v = check_ssp(&a, &limits).unwrap();
    assert!(!v.pass);
    assert_eq!(v.stats.target_solutions, 0);
    let cx = v.counterexample.unwrap();
    assert!(matches!(cx, Counterexample::SourceOnly { .. }));
    assert!(cx.replay(&a, &limits).unwrap());
    // the counterexample no longer applies to the intact artifact
    assert!(!cx.replay(&vc_phi(), &limits).unwrap());
}

#[test]
fn scrambled_embedding_is_caught() {
    let mut a = build_blowup(BlowupEdge::ThreeSatToIs, &phi(), &[], DistanceMeasure::Hamming, BetaChoice::Table).unwrap();
    a.f.swap(0, 1);
    let limits = Limits::wide();
    let v = check_ssp(&a, &limits).unwrap();
    assert!(!v.pass);
    assert!(v.counterexample.unwrap().replay(&a, &limits).unwrap());
}

#[test]
fn identity_artifact_passes() {
    let inst = ProblemInstance::VertexCover(graph_k(4, &[(0, 1), (1, 2), (2, 3)], 2));
    let a = ReductionArtifact {
        edge: "id".into(),
        kind: ArtifactKind::Ssp,
        source: inst.clone(),
        target: inst,
        f: (0..4).collect(),
        lb: None,
        measure: None,
        beta: None,
        u_on: vec![],
        u_off: vec![],
    };
    assert!(check_ssp(&a, &Limits::default()).unwrap().pass);
}

#[test]
fn zero_beta_breaks_the_biconditional() {
    let lb = lb_from_vars(&[2]);
    let limits = Limits::wide();
    let a = build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &lb, DistanceMeasure::Hamming, BetaChoice::Fixed(0)).unwrap();
    let v = check_blowup(&a, DistanceMeasure::Hamming, &limits).unwrap();
    assert!(!v.pass);
    let cx = v.counterexample.unwrap();
    assert!(matches!(cx, Counterexample::Pair { agree: true, .. }));
    assert!(cx.replay(&a, &limits).unwrap());
    for m in DistanceMeasure::ALL {
        let a = build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &lb, m, BetaChoice::Table).unwrap();
        assert!(check_blowup(&a, m, &limits).unwrap().pass, "{m}");
    }
}

#[test]
fn empty_lb_means_beta_bounds_the_diameter() {
    let limits = Limits::wide();
    for m in DistanceMeasure::ALL {
        let a = build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &[], m, BetaChoice::Table).unwrap();
        let sols = enumerate_solutions(&a.target, &limits).unwrap();
        let diameter = sols
            .iter()
            .flat_map(|s| sols.iter().map(move |t| sspforge::distance(m, s, t).unwrap()))
            .max()
            .unwrap();
        let pass = check_blowup(&a, m, &limits).unwrap().pass;
        assert_eq!(pass, diameter as u64 <= a.beta.unwrap().get(m));
    }
}

#[test]
fn builder_errors() {
    let e = build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &[Lit::pos(2)], DistanceMeasure::Hamming, BetaChoice::Table);
    assert!(matches!(e, Err(SspError::Precondition(_))));
    let wide = Cnf::from_ints(2, &[&[1, 2]]).unwrap();
    let e = build_blowup(BlowupEdge::ThreeSatToIs, &wide, &[], DistanceMeasure::Hamming, BetaChoice::Table);
    assert!(matches!(e, Err(SspError::Format(_))));
    let ddp = ProblemInstance::TwoDdp(Ddp { graph: Digraph::new(4, vec![(0, 1), (2, 3)]), pairs: vec![(0, 1), (2, 3)] });
    let e = build_preserving(PreservingEdge::TwoDdpToKDdp, &ddp, &PreservingParams { ddp_pairs: 1 });
    assert!(matches!(e, Err(SspError::Precondition(_))));
    let e = build_preserving(PreservingEdge::VcToDs, &ddp, &PreservingParams::default());
    assert!(matches!(e, Err(SspError::Composition(_))));
}

#[test]
fn blown_literal_set_must_be_known() {
    let e = build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &lb_from_vars(&[7]), DistanceMeasure::Hamming, BetaChoice::Table);
    assert!(matches!(e, Err(SspError::Precondition(_))));
}

fn subset_sum_123() -> ProblemInstance {
    ProblemInstance::SubsetSum(SubsetSum { items: big(&[1, 2, 3]), target: BigUint::from(3u32) })
}

#[test]
fn subset_sum_to_partition_example() {
    let a = build_preserving(PreservingEdge::SubsetSumToPartition, &subset_sum_123(), &PreservingParams::default()).unwrap();
    let ProblemInstance::Partition(p) = &a.target else { panic!() };
    let mut values = p.items.clone();
    values.sort();
    assert_eq!(values, big(&[1, 2, 3, 4, 4]));
    assert_eq!(a.u_on.len(), 1);
    assert_eq!(a.u_off.len(), 1);
    assert_eq!(p.items[a.u_on[0]], BigUint::from(4u32));
    assert_eq!(p.items[a.u_off[0]], BigUint::from(4u32));
    assert_ne!(a.u_on[0], a.u_off[0]);
    let v = check_preserving(&a, &Limits::default()).unwrap();
    assert!(v.pass, "{}", v.reason);
    assert_eq!(v.stats.source_solutions, 2);
}

#[test]
fn closing_a_hamiltonian_path() {
    let src = ProblemInstance::DHamPath(DHamPath { graph: Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]), s: 0, t: 2 });
    let a = build_preserving(PreservingEdge::DHamPathToDHamCycle, &src, &PreservingParams::default()).unwrap();
    let ProblemInstance::DHamCycle(g) = &a.target else { panic!() };
    assert_eq!(g.arcs.len(), 4);
    assert_eq!(a.u_on.len(), 1);
    assert_eq!(g.arcs[a.u_on[0]], (2, 0));
    assert!(a.u_off.is_empty());
    assert!(check_preserving(&a, &Limits::default()).unwrap().pass);
}

#[test]
fn clique_of_the_complement() {
    let src = ProblemInstance::IndependentSet(graph_k(3, &[(0, 1), (1, 2)], 2));
    let a = build_preserving(PreservingEdge::IsToClique, &src, &PreservingParams::default()).unwrap();
    let ProblemInstance::Clique(g) = &a.target else { panic!() };
    assert_eq!(g.k, 2);
    assert_eq!(g.graph.edges, vec![(0, 2)]);
    assert!(a.u_on.is_empty() && a.u_off.is_empty());
    assert!(check_preserving(&a, &Limits::default()).unwrap().pass);
}

#[test]
fn dominating_set_midpoints() {
    let src = ProblemInstance::VertexCover(graph_k(3, &[(0, 1), (1, 2), (0, 2)], 2));
    let mut a = build_preserving(PreservingEdge::VcToDs, &src, &PreservingParams::default()).unwrap();
    assert_eq!(a.u_off.len(), 3 * 4);
    let limits = Limits::wide();
    assert!(check_preserving(&a, &limits).unwrap().pass);
    let m = a.u_off.pop().unwrap();
    a.u_on.push(m);
    let v = check_preserving(&a, &limits).unwrap();
    assert!(!v.pass);
    assert!(matches!(v.counterexample, Some(Counterexample::OnViolated { .. })));
    assert!(v.counterexample.unwrap().replay(&a, &limits).unwrap());
}

#[test]
fn broken_partition_witness() {
    let mut a = build_preserving(PreservingEdge::SubsetSumToPartition, &subset_sum_123(), &PreservingParams::default()).unwrap();
    a.u_off.clear();
    let v = check_preserving(&a, &Limits::default()).unwrap();
    assert!(matches!(v.counterexample, Some(Counterexample::Partition { hits: 0, .. })));
}

#[test]
fn composing_preserving_after_blowup_keeps_beta() {
    let lb = lb_from_vars(&[0]);
    let limits = Limits::wide();
    for m in DistanceMeasure::ALL {
        let inner = build_blowup(BlowupEdge::ThreeSatToVc, &phi(), &lb, m, BetaChoice::Adjusted).unwrap();
        let outer = build_preserving(PreservingEdge::VcToDs, &inner.target, &PreservingParams::default()).unwrap();
        let a = compose(&outer, &inner).unwrap();
        assert_eq!(a.kind, ArtifactKind::Blowup);
        assert_eq!(a.beta, inner.beta);
        assert_eq!(a.edge, "3sat-vc,vc-ds");
        assert!(check_ssp(&a, &limits).unwrap().pass);
        assert!(check_blowup(&a, m, &limits).unwrap().pass, "{m}");
    }
}

#[test]
fn composing_preserving_chain() {
    let p = PreservingParams::default();
    let inner = build_preserving(PreservingEdge::SubsetSumToPartition, &subset_sum_123(), &p).unwrap();
    let outer = build_preserving(PreservingEdge::PartitionToScheduling, &inner.target, &p).unwrap();
    assert!(matches!(compose(&inner, &outer), Err(SspError::Composition(_))));
    let a = compose(&outer, &inner).unwrap();
    assert_eq!(a.kind, ArtifactKind::Preserving);
    assert_eq!(a.u_on, vec![outer.f[inner.u_on[0]]]);
    assert!(check_preserving(&a, &Limits::default()).unwrap().pass);
    let chained = build_chain(
        &parse_chain("subsetsum-partition,partition-scheduling").unwrap(),
        &subset_sum_123(),
        &ChainOptions::default(),
    )
    .unwrap();
    assert_eq!(chained, a);
}

#[test]
fn blowups_do_not_compose() {
    let f = Cnf::from_ints(4, &[&[1, 2, 3, 4]]).unwrap();
    let inner = build_blowup(BlowupEdge::SatTo3Sat, &f, &[], DistanceMeasure::Hamming, BetaChoice::Table).unwrap();
    let ProblemInstance::ThreeSat(g) = &inner.target else { panic!() };
    let outer = build_blowup(BlowupEdge::ThreeSatToVc, g, &[], DistanceMeasure::Hamming, BetaChoice::Table).unwrap();
    assert!(matches!(compose(&outer, &inner), Err(SspError::Unsupported(_))));
}

#[test]
fn chain_parsing() {
    assert_eq!(parse_chain("3sat-vc, vc-ds").unwrap().len(), 2);
    assert!(matches!(parse_chain("3sat-vc,is-clique"), Err(SspError::Composition(_))));
    assert!(matches!(parse_chain("3sat-xx"), Err(SspError::Format(_))));
    assert!(matches!(parse_chain(""), Err(SspError::Format(_))));
    for e in Edge::all() {
        assert_eq!(e.name().parse::<Edge>().unwrap(), e);
    }
    assert_eq!(Edge::all().count(), 23);
}

#[test]
fn artifacts_round_trip_through_json() {
    let a = build_blowup(BlowupEdge::ThreeSatToSubsetSum, &phi(), &lb_from_vars(&[1]), DistanceMeasure::KappaAddition, BetaChoice::Adjusted)
        .unwrap();
    let text = serde_json::to_string(&a).unwrap();
    let back: ReductionArtifact = serde_json::from_str(&text).unwrap();
    assert_eq!(back, a);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["edge", "source", "target", "f", "beta", "u_on", "u_off"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn small_random_sources_pass_every_blowup_edge() {
    let limits = Limits::wide();
    let mut r = gen::rng(3);
    for edge in BlowupEdge::ALL {
        for _ in 0..8 {
            let (f, lb) = gen::blowup_source(&mut r, edge);
            for m in DistanceMeasure::ALL {
                let a = build_blowup(edge, &f, &lb, m, BetaChoice::Adjusted).unwrap();
                assert!(check_ssp(&a, &limits).unwrap().pass, "{edge} {f:?}");
                assert!(check_blowup(&a, m, &limits).unwrap().pass, "{edge} {m} {f:?} {lb:?}");
            }
        }
    }
}

#[test]
fn small_random_sources_pass_every_preserving_edge() {
    let limits = Limits::wide();
    let mut r = gen::rng(4);
    for edge in PreservingEdge::ALL {
        for _ in 0..8 {
            let src = gen::preserving_source(&mut r, edge, 8);
            let a = build_preserving(edge, &src, &PreservingParams::default()).unwrap();
            let v = check_preserving(&a, &limits).unwrap();
            assert!(v.pass, "{edge}: {}", v.reason);
        }
    }
}
