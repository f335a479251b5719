use proptest::prelude::*;
use sspforge::gen;
use sspforge::problems::*;
use sspforge::reductions::{parse_chain, BetaChoice};
use sspforge::rr::*;
use sspforge::{DistanceMeasure, ElementSet, Limits, SspError};

fn k3_cover(k: usize) -> ProblemInstance {
    ProblemInstance::VertexCover(GraphK { graph: Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]), k })
}

fn comb(instance: ProblemInstance, blockable: Vec<usize>, gamma: usize, kappa: u64) -> CombRrInstance {
    CombRrInstance { instance, blockable, gamma, kappa, measure: DistanceMeasure::Hamming }
}

fn triangle_cycle(c1: Vec<i64>, c_high: Vec<i64>, gamma: usize) -> CostRrInstance {
    CostRrInstance {
        instance: ProblemInstance::DHamCycle(Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)])),
        c_low: c1.clone(),
        c1,
        c_high,
        t_rr: 21,
        gamma,
        kappa: 0,
        measure: DistanceMeasure::Hamming,
    }
}

/// Every recovery avoids its blocker, is a solution and stays within kappa.
fn assert_witness(inst: &CombRrInstance, w: &RrWitness) {
    assert!(inst.instance.verify(&w.s1).unwrap());
    for r in &w.recoveries {
        assert!(r.adversary.iter().all(|&u| !r.s2.contains(u)));
        assert!(inst.instance.verify(&r.s2).unwrap());
        assert!(sspforge::distance(inst.measure, &w.s1, &r.s2).unwrap() as u64 <= inst.kappa);
    }
}

#[test]
fn scenario_enumeration() {
    let limits = Limits::default();
    let inst = triangle_cycle(vec![1, 2, 3], vec![5, 5, 5], 0);
    assert_eq!(enumerate_scenarios(&inst, &limits).unwrap(), vec![vec![1, 2, 3]]);
    let inst = triangle_cycle(vec![1, 2, 3], vec![1, 2, 3], 3);
    assert_eq!(enumerate_scenarios(&inst, &limits).unwrap().len(), 1);
    let inst = triangle_cycle(vec![1, 2, 3], vec![1, 7, 9], 2);
    let s = enumerate_scenarios(&inst, &limits).unwrap();
    assert_eq!(s, vec![vec![1, 2, 3], vec![1, 7, 3], vec![1, 2, 9], vec![1, 7, 9]]);
    let bad = triangle_cycle(vec![1, 2, 3], vec![0, 2, 3], 1);
    assert!(matches!(enumerate_scenarios(&bad, &limits), Err(SspError::Domain(_))));
}

#[test]
fn cost_rr_on_a_single_cycle() {
    let out = eval_cost_rr(&triangle_cycle(vec![1, 2, 3], vec![5, 5, 5], 3), &Limits::default()).unwrap();
    assert_eq!(out.value, Some(6 + 15));
    assert!(out.yes);
    let w = out.witness.unwrap();
    assert_eq!(w.objective, Some(21));
    assert_eq!(w.recoveries.len(), 8);
    let mut tight = triangle_cycle(vec![1, 2, 3], vec![5, 5, 5], 3);
    tight.t_rr = 20;
    assert!(!eval_cost_rr(&tight, &Limits::default()).unwrap().yes);
}

#[test]
fn cost_rr_without_feasible_sets_is_infinite() {
    let mut inst = triangle_cycle(vec![1, 2, 3], vec![1, 2, 3], 0);
    inst.instance = ProblemInstance::DHamCycle(Digraph::new(3, vec![(0, 1), (1, 2), (2, 1)]));
    let out = eval_cost_rr(&inst, &Limits::default()).unwrap();
    assert_eq!(out.value, None);
    assert!(!out.yes);
}

#[test]
fn comb_rr_on_a_triangle() {
    let limits = Limits::default();
    // staying put cannot dodge a blocked vertex
    assert!(!eval_comb_rr(&comb(k3_cover(2), vec![0, 1, 2], 1, 0), &limits).unwrap().yes);
    let inst = comb(k3_cover(2), vec![0, 1, 2], 1, 2);
    let out = eval_comb_rr(&inst, &limits).unwrap();
    assert!(out.yes);
    let w = out.witness.unwrap();
    assert_eq!(w.recoveries.len(), 4);
    assert_witness(&inst, &w);
    // two blocked vertices leave no cover of size 2
    assert!(!eval_comb_rr(&comb(k3_cover(2), vec![0, 1, 2], 2, 2), &limits).unwrap().yes);
}

#[test]
fn comb_rr_without_adversary_is_the_nominal_question() {
    let limits = Limits::default();
    assert!(eval_comb_rr(&comb(k3_cover(2), vec![0, 1, 2], 0, 0), &limits).unwrap().yes);
    assert!(!eval_comb_rr(&comb(k3_cover(1), vec![], 0, 5), &limits).unwrap().yes);
    let unsat = Cnf::from_ints(1, &[&[1, 1, 1], &[-1, -1, -1]]).unwrap();
    assert!(!eval_comb_rr(&comb(ProblemInstance::ThreeSat(unsat), vec![], 0, 2), &limits).unwrap().yes);
}

#[test]
fn comb_rr_rejects_foreign_elements() {
    let e = eval_comb_rr(&comb(k3_cover(2), vec![3], 1, 0), &Limits::default());
    assert!(matches!(e, Err(SspError::Domain(_))));
}

#[test]
fn penalty_construction() {
    let inst = comb(k3_cover(2), vec![0, 2], 1, 2);
    let cost = comb_to_cost_rr(&inst).unwrap();
    assert_eq!(cost.c1, vec![1, 1, 1]);
    assert_eq!(cost.c_low, vec![1, 1, 1]);
    assert_eq!(cost.c_high, vec![5, 1, 5]);
    assert_eq!(cost.t_rr, 4);
    let limits = Limits::default();
    assert_eq!(eval_cost_rr(&cost, &limits).unwrap().yes, eval_comb_rr(&inst, &limits).unwrap().yes);

    let none = comb_to_cost_rr(&comb(k3_cover(2), vec![], 1, 2)).unwrap();
    assert_eq!(none.c_high, none.c_low);

    let is = ProblemInstance::IndependentSet(GraphK { graph: Graph::new(2, vec![]), k: 1 });
    assert!(matches!(comb_to_cost_rr(&comb(is, vec![0], 1, 0)), Err(SspError::Unsupported(_))));
}

fn radj(clauses: &[&[i64]], x: &[usize], y: &[usize], z: &[usize], gamma: usize) -> RAdjSatInstance {
    let n = x.len() + y.len() + z.len();
    RAdjSatInstance::padded(Cnf::from_ints(n, clauses).unwrap(), x.to_vec(), y.to_vec(), z.to_vec(), gamma).unwrap()
}

#[test]
fn adjustable_sat_examples() {
    let limits = Limits::default();
    // only y can satisfy the clause
    let only_y = radj(&[&[2, 2, 2]], &[0], &[1], &[2], 1);
    assert!(!solve_radjsat(&only_y, &limits).unwrap().yes);
    let relaxed = radj(&[&[2, 2, 2]], &[0], &[1], &[2], 0);
    assert!(solve_radjsat(&relaxed, &limits).unwrap().yes);
    // x1 must be committed to true
    let commit = radj(&[&[1, 2, 2], &[-2, -2, 3]], &[0], &[1], &[2], 1);
    let out = solve_radjsat(&commit, &limits).unwrap();
    assert!(out.yes);
    assert_eq!(out.a_x, Some(vec![0]));
}

#[test]
fn padding_equalizes_blocks() {
    let inst = radj(&[&[1, 2, 3]], &[0, 1], &[2], &[], 1);
    assert_eq!((inst.x.len(), inst.y.len(), inst.z.len()), (2, 2, 2));
    assert_eq!(inst.dummies.len(), 3);
    assert_eq!(inst.blockable_vars(), vec![2]);
    assert!(solve_radjsat(&inst, &Limits::default()).unwrap().yes);
    let e = RAdjSatInstance::padded(Cnf::from_ints(2, &[&[1, 2, 2]]).unwrap(), vec![0], vec![0], vec![1], 0);
    assert!(matches!(e, Err(SspError::Domain(_))));
}

#[test]
fn adjustable_sat_into_comb_rr() {
    let limits = Limits::wide();
    let inst = radj(&[&[1, 2, 2], &[-2, -2, 3]], &[0], &[1], &[2], 1);
    let chain = parse_chain("3sat-vc").unwrap();
    for m in DistanceMeasure::ALL {
        let c = radjsat_to_comb_rr(&inst, &chain, m).unwrap();
        let a = radjsat_artifact(&inst, &chain, m, BetaChoice::default()).unwrap();
        assert_eq!(c.kappa, a.beta.unwrap().get(m));
        assert_eq!(c.blockable, vec![a.f[Lit::pos(1).index()]]);
        assert_eq!(c.gamma, 1);
        assert_eq!(c.instance, a.target);
        assert_eq!(eval_comb_rr(&c, &limits).unwrap().yes, solve_radjsat(&inst, &limits).unwrap().yes, "{m}");
    }
    let bad = parse_chain("vc-ds").unwrap();
    assert!(matches!(radjsat_to_comb_rr(&inst, &bad, DistanceMeasure::Hamming), Err(SspError::Composition(_))));
}

#[test]
fn exists_forall_exists() {
    let limits = Limits::default();
    let f = Cnf::from_ints(3, &[&[1, -2, 3], &[-3, 2]]).unwrap();
    assert!(solve_eae_sat(&f, &[0], &[1], &[2], &limits).unwrap());
    let f = Cnf::from_ints(3, &[&[2, 2, 2]]).unwrap();
    assert!(!solve_eae_sat(&f, &[0], &[1], &[2], &limits).unwrap());
    // z copies y
    let f = Cnf::from_ints(3, &[&[-2, 3], &[2, -3]]).unwrap();
    assert!(solve_eae_sat(&f, &[0], &[1], &[2], &limits).unwrap());
    let f = Cnf::from_ints(2, &[&[1, 2]]).unwrap();
    let tiny = Limits { max_universe: 1, ..Limits::default() };
    assert!(matches!(solve_eae_sat(&f, &[0], &[1], &[], &tiny), Err(SspError::Capacity(_))));
}

fn brute_sat(f: &Cnf) -> bool {
    (0u32..1 << f.num_vars).any(|a| f.clauses.iter().all(|c| c.iter().any(|l| (a >> l.var & 1 == 1) != l.neg)))
}

fn random_comb(seed: u64) -> CombRrInstance {
    let mut r = gen::rng(seed);
    let inst = gen::instance(&mut r, ProblemKind::VertexCover, 7);
    let n = inst.universe_size();
    let blockable = (0..n).filter(|u| (seed >> (u % 60)) & 1 == 1).collect();
    CombRrInstance { instance: inst, blockable, gamma: (seed % 3) as usize, kappa: seed % 5, measure: DistanceMeasure::ALL[(seed % 3) as usize] }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn comb_rr_is_monotone(seed in any::<u64>()) {
        let limits = Limits::default();
        let inst = random_comb(seed);
        prop_assume!(inst.instance.validate().is_ok());
        let yes = eval_comb_rr(&inst, &limits).unwrap().yes;
        let looser = CombRrInstance { kappa: inst.kappa + 1, ..inst.clone() };
        prop_assert!(!yes || eval_comb_rr(&looser, &limits).unwrap().yes);
        let harsher = CombRrInstance { gamma: inst.gamma + 1, ..inst.clone() };
        prop_assert!(eval_comb_rr(&harsher, &limits).unwrap().yes <= yes);
        let calm = CombRrInstance { gamma: 0, ..inst.clone() };
        let nominal = !enumerate_solutions(&inst.instance, &limits).unwrap().is_empty();
        prop_assert_eq!(eval_comb_rr(&calm, &limits).unwrap().yes, nominal);
    }

    #[test]
    fn calm_cost_rr_is_a_pair_minimum(seed in any::<u64>(), kappa in 0u64..4) {
        let limits = Limits::default();
        let mut r = gen::rng(seed);
        let inst = gen::instance(&mut r, ProblemKind::VertexCover, 6);
        prop_assume!(inst.validate().is_ok());
        let n = inst.universe_size();
        let c1: Vec<i64> = (0..n).map(|u| ((seed >> u) & 3) as i64).collect();
        let c_low: Vec<i64> = (0..n).map(|u| ((seed >> (u + 20)) & 3) as i64).collect();
        let c_high = c_low.iter().map(|c| c + 4).collect();
        let cost = CostRrInstance {
            instance: inst.clone(), c1: c1.clone(), c_low: c_low.clone(), c_high, t_rr: 0, gamma: 0, kappa,
            measure: DistanceMeasure::Hamming,
        };
        let feas = enumerate_feasible(&inst, &limits).unwrap();
        let sum = |c: &[i64], s: &ElementSet| s.iter().map(|u| c[u]).sum::<i64>();
        let oracle = feas
            .iter()
            .flat_map(|a| feas.iter().map(move |b| (a, b)))
            .filter(|(a, b)| sspforge::distance(DistanceMeasure::Hamming, a, b).unwrap() as u64 <= kappa)
            .map(|(a, b)| sum(&c1, a) + sum(&c_low, b))
            .min();
        prop_assert_eq!(eval_cost_rr(&cost, &limits).unwrap().value, oracle);
    }

    #[test]
    fn calm_adjustable_sat_is_sat(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f = gen::cnf(&mut r, 5, 1 + (seed % 8) as usize, 3..=3);
        let mut blocks = [Vec::new(), Vec::new(), Vec::new()];
        for v in 0..f.num_vars {
            blocks[((seed >> (2 * v)) % 3) as usize].push(v);
        }
        let [x, y, z] = blocks;
        let inst = RAdjSatInstance::padded(f.clone(), x, y, z, 0).unwrap();
        prop_assert_eq!(solve_radjsat(&inst, &Limits::default()).unwrap().yes, brute_sat(&f));
    }
}
