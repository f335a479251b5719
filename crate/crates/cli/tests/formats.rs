use sspforge::gen;
use sspforge::problems::{Cnf, Lit, ProblemInstance, ProblemKind};
use sspforge_cli::doc::{emit_dimacs, parse_dimacs};
use sspforge_cli::InstanceDocument;

#[test]
fn documents_round_trip_for_every_kind() {
    let mut r = gen::rng(11);
    for kind in ProblemKind::ALL {
        for _ in 0..20 {
            let inst = gen::instance(&mut r, kind, 8);
            if inst.validate().is_err() {
                continue;
            }
            let doc = InstanceDocument::new(inst);
            let text = doc.to_json();
            let back = InstanceDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }
}

#[test]
fn document_field_order_and_labels() {
    let f = Cnf::from_ints(2, &[&[1, -2, 2]]).unwrap();
    let text = InstanceDocument::new(ProblemInstance::ThreeSat(f)).to_json();
    let keys: Vec<usize> = ["schema_version", "kind", "payload", "universe_labels"].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert!(text.contains("\"~x2\""));
}

#[test]
fn missing_labels_are_filled_and_wrong_counts_rejected() {
    let bare = r#"{"schema_version":1,"kind":"3sat","payload":{"num_vars":1,"clauses":[[1,1,-1]]}}"#;
    let doc = InstanceDocument::from_json(bare).unwrap();
    assert_eq!(doc.universe_labels, ["x1", "~x1"]);
    let short = r#"{"schema_version":1,"kind":"3sat","payload":{"num_vars":1,"clauses":[[1,1,-1]]},"universe_labels":["a"]}"#;
    assert!(InstanceDocument::from_json(short).is_err());
    let future = r#"{"schema_version":2,"kind":"3sat","payload":{"num_vars":1,"clauses":[[1,1,-1]]}}"#;
    assert!(InstanceDocument::from_json(future).is_err());
}

#[test]
fn dimacs_round_trips() {
    let mut r = gen::rng(5);
    for _ in 0..200 {
        let mut f = gen::cnf(&mut r, 4, 5, 1..=4);
        assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
        f.var_names = (0..f.num_vars).map(|v| format!("v{v}")).collect();
        assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
    }
}

#[test]
fn dimacs_import_matches_json_import() {
    let text = "c a comment\np cnf 3 2\n-1 -2\n 3 0 1 2 3 0\n";
    let f = parse_dimacs(text).unwrap();
    let json = r#"{"schema_version":1,"kind":"3sat","payload":{"num_vars":3,"clauses":[[-1,-2,3],[1,2,3]]}}"#;
    let doc = InstanceDocument::from_json(json).unwrap();
    assert_eq!(doc.instance, ProblemInstance::ThreeSat(f.clone()));
    assert_eq!(f.clauses[0], vec![Lit::neg(0), Lit::neg(1), Lit::pos(2)]);
}

#[test]
fn dimacs_errors() {
    for bad in [
        "1 2 0\n",
        "p cnf 2 1\n1 3 0\n",
        "p cnf 2 2\n1 2 0\n",
        "p cnf 2 1\np cnf 2 1\n1 0\n",
        "p dnf 2 1\n1 0\n",
        "p cnf 2 1\n1 a 0\n",
    ] {
        assert!(parse_dimacs(bad).is_err(), "{bad:?}");
    }
    // the final 0 and a `%` trailer are optional
    assert_eq!(parse_dimacs("p cnf 2 1\n1 -2\n").unwrap().clauses.len(), 1);
    assert_eq!(parse_dimacs("p cnf 2 1\n1 -2 0\n%\n0\n").unwrap().clauses.len(), 1);
}
