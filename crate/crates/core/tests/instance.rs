mod common;

use listcast::instance::{to_dot, InstanceFile, Metadata};
use listcast::schemes::{binomial_forest, hypercube_lists, subcube_union};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip((g, l) in common::instance(12), with_lists: bool, p in 0u64..100) {
        let meta = Metadata::new("random", [("p", p)]);
        let file = InstanceFile::new(&g, with_lists.then_some(&l), Some(meta));
        let text = file.to_json();
        let back = InstanceFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.graph().unwrap(), g);
        prop_assert_eq!(back.list_assignment().unwrap(), with_lists.then_some(l));
    }
}

#[test]
fn constructions_round_trip_with_labels() {
    for s in [subcube_union(11).unwrap(), hypercube_lists(4).unwrap(), binomial_forest(13).unwrap().into_scheme()] {
        let file = InstanceFile::new(&s.graph, Some(&s.lists), None);
        let back = InstanceFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.graph().unwrap(), s.graph);
        assert_eq!(back.list_assignment().unwrap().unwrap(), s.lists);
    }
}

#[test]
fn keys_are_sorted() {
    let s = subcube_union(6).unwrap();
    let text = InstanceFile::new(&s.graph, Some(&s.lists), Some(Metadata::new("subcube-union", [("n", 6)]))).to_json();
    let keys: Vec<usize> = ["\"edges\"", "\"labels\"", "\"lists\"", "\"metadata\"", "\"n\"", "\"version\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn rejects_bad_files() {
    let bad = [
        r#"{"edges": [[0, 1]], "n": 2, "version": 2}"#,
        r#"{"edges": [[1, 0]], "n": 2, "version": 1}"#,
        r#"{"edges": [[0, 2], [0, 1]], "n": 3, "version": 1}"#,
        r#"{"edges": [[0, 1], [0, 1]], "n": 2, "version": 1}"#,
        r#"{"edges": [[0, 5]], "n": 2, "version": 1}"#,
        r#"{"edges": [[0, 1]], "n": 2, "version": 1, "extra": 0}"#,
        r#"{"edges": [[0, 1]], "lists": [[1]], "n": 2, "version": 1}"#,
        r#"{"edges": [[0, 1], [1, 2]], "lists": [[2], [0, 2], [1]], "n": 3, "version": 1}"#,
        r#"{"edges": [[0, 1]], "lists": [[1, 1], [0]], "n": 2, "version": 1}"#,
        r#"{"edges": [[0, 1]], "labels": ["0", "10"], "n": 2, "version": 1}"#,
        r#"{"edges": [[0, 1]], "n": 2"#,
    ];
    for text in bad {
        assert!(InstanceFile::parse(text).is_err(), "accepted {text}");
    }
}

#[test]
fn dot_is_stable() {
    let s = subcube_union(5).unwrap();
    let dot = to_dot(&s.graph);
    assert_eq!(dot, to_dot(&InstanceFile::new(&s.graph, None, None).graph().unwrap()));
    assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), s.graph.edge_count());
    assert!(dot.contains("label=\"110\""));
}
