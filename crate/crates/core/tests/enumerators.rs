use sspforge::gen;
use sspforge::problems::*;
use sspforge::{ElementSet, Limits};

fn check_kind(kind: ProblemKind, rounds: u64, max_u: usize) {
    let limits = Limits::default();
    for seed in 0..rounds {
        let mut rng = gen::rng(seed * 7919 + kind as u64);
        let inst = gen::instance(&mut rng, kind, max_u);
        if inst.validate().is_err() {
            continue;
        }
        let fast = enumerate_solutions(&inst, &limits).unwrap();
        let slow = brute_force_solutions(&inst, &limits).unwrap();
        assert_eq!(fast, slow, "{kind:?} seed {seed}: {}", serde_json::to_string(&inst).unwrap());
        if kind.is_lop() {
            let ff = enumerate_feasible(&inst, &limits).unwrap();
            let sf = brute_force_feasible(&inst, &limits).unwrap();
            assert_eq!(ff, sf, "{kind:?} feasible seed {seed}");
            let env = inst.lop().unwrap();
            let via_lop: Vec<ElementSet> = ff
                .into_iter()
                .filter(|f| env.cost_of(f) <= env.threshold)
                .collect();
            assert_eq!(via_lop, slow, "{kind:?} lop seed {seed}");
        }
    }
}

#[test]
fn enumerators_match_brute_force() {
    for kind in ProblemKind::ALL {
        check_kind(kind, 150, 11);
    }
}

#[test]
fn random_instances_are_mostly_valid_and_nontrivial() {
    let limits = Limits::default();
    for kind in ProblemKind::ALL {
        let (mut valid, mut nonempty) = (0, 0);
        for seed in 0..60u64 {
            let mut rng = gen::rng(seed + 1000);
            let inst = gen::instance(&mut rng, kind, 11);
            if inst.validate().is_ok() {
                valid += 1;
                if !enumerate_solutions(&inst, &limits).unwrap().is_empty() {
                    nonempty += 1;
                }
            }
        }
        assert!(valid >= 30, "{kind:?}: only {valid} valid");
        assert!(nonempty >= 3, "{kind:?}: only {nonempty} with solutions");
    }
}
