use proptest::prelude::*;
use sspforge::{distance, relabel, DistanceMeasure, ElementSet, InjectiveMap, SspError, Universe};

fn set(n: usize, xs: &[usize]) -> ElementSet {
    ElementSet::from_indices(n, xs.iter().copied()).unwrap()
}

#[test]
fn distance_examples() {
    // a=0, b=1, c=2
    assert_eq!(distance(DistanceMeasure::Hamming, &set(3, &[0, 1]), &set(3, &[1, 2])).unwrap(), 2);
    let a = set(3, &[0, 2]);
    assert_eq!(distance(DistanceMeasure::KappaAddition, &a, &a).unwrap(), 0);
    assert_eq!(distance(DistanceMeasure::KappaDeletion, &set(3, &[0, 1, 2]), &set(3, &[0])).unwrap(), 2);
    assert_eq!(distance(DistanceMeasure::KappaAddition, &set(3, &[0, 1, 2]), &set(3, &[0])).unwrap(), 0);
}

#[test]
fn distance_rejects_mixed_universes() {
    let e = distance(DistanceMeasure::Hamming, &set(3, &[0]), &set(4, &[0])).unwrap_err();
    assert!(matches!(e, SspError::Domain(_)));
}

#[test]
fn relabel_examples() {
    let s = set(2, &[0, 1]);
    assert_eq!(relabel(&InjectiveMap::identity(2), &s).unwrap(), s);
    let f = InjectiveMap::total(vec![5, 3], 6).unwrap();
    assert_eq!(relabel(&f, &s).unwrap(), set(6, &[3, 5]));
    let partial = InjectiveMap::new(vec![Some(0), None], 2).unwrap();
    assert!(matches!(relabel(&partial, &s), Err(SspError::Domain(_))));
}

#[test]
fn maps_must_be_injective() {
    assert!(InjectiveMap::total(vec![1, 1], 3).is_err());
    assert!(InjectiveMap::total(vec![0, 3], 3).is_err());
}

#[test]
fn universes_reject_duplicates() {
    assert!(Universe::new(vec!["a".into(), "a".into()]).is_err());
    let u = Universe::new(vec!["a".into(), "b".into()]).unwrap();
    assert_eq!(u.index_of("b"), Some(1));
}

#[test]
fn serde_round_trip() {
    let s = set(70, &[0, 3, 64, 69]);
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<ElementSet>(&text).unwrap(), s);
    let m: DistanceMeasure = serde_json::from_str("\"kappa-addition\"").unwrap();
    assert_eq!(m, DistanceMeasure::KappaAddition);
}

fn arb_case() -> impl Strategy<Value = (usize, Vec<bool>, Vec<bool>, Vec<usize>, usize)> {
    (1usize..=16).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
            // image of an injective map into a codomain of up to 2n elements
            (n..=2 * n).prop_flat_map(move |m| Just((0..m).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..n].to_vec())),
            0..n,
        )
    })
}

fn from_mask(m: &[bool]) -> ElementSet {
    ElementSet::from_indices(m.len(), (0..m.len()).filter(|&i| m[i])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn axioms_hold((n, a, b, image, x) in arb_case()) {
        let (a1, a2) = (from_mask(&a), from_mask(&b));
        let m = *image.iter().max().unwrap() + 1;
        let f = InjectiveMap::total(image, m).unwrap();
        for measure in DistanceMeasure::ALL {
            let d = distance(measure, &a1, &a2).unwrap();
            prop_assert_eq!(d, distance(measure, &relabel(&f, &a1).unwrap(), &relabel(&f, &a2).unwrap()).unwrap());
            prop_assert_eq!(distance(measure, &a1, &a1).unwrap(), 0);
            if !a[x] && !b[x] {
                let (mut u1, mut u2) = (a1.clone(), a2.clone());
                u1.insert(x);
                u2.insert(x);
                prop_assert_eq!(d, distance(measure, &u1, &u2).unwrap());
            }
        }
        let add = distance(DistanceMeasure::KappaAddition, &a1, &a2).unwrap();
        let del = distance(DistanceMeasure::KappaDeletion, &a1, &a2).unwrap();
        prop_assert_eq!(distance(DistanceMeasure::Hamming, &a1, &a2).unwrap(), add + del);
        prop_assert_eq!(add, (0..n).filter(|&i| b[i] && !a[i]).count());
    }
}
