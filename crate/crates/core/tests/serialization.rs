use bihole::conditions::check_dirac;
use bihole::generators::{named, Family};
use bihole::oracle::Oracle;
use bihole::sweep::{run_sweep, PropertyRegistry, Source};
use bihole::{bipartite_hole_number, VertexSet};

#[test]
fn certificate_json_shape() {
    let g = named(&Family::Cycle(5)).unwrap();
    let text = serde_json::to_string(&bipartite_hole_number(&g)).unwrap();
    assert_eq!(
        text,
        r#"{"value":3,"holefree_pair":{"s":1,"t":3},"level_witnesses":[{"s":1,"t":2,"S":[0],"T":[2,3]},{"s":2,"t":1,"S":[2,3],"T":[0]}]}"#
    );
}

#[test]
fn vertex_sets_serialize_sorted() {
    let s: VertexSet = [9, 2, 5].into_iter().collect();
    assert_eq!(serde_json::to_string(&s).unwrap(), "[2,5,9]");
}

#[test]
fn report_field_order() {
    let g = named(&Family::Complete(4)).unwrap();
    let text = serde_json::to_string(&check_dirac(&g)).unwrap();
    assert!(text.starts_with(r#"{"condition":"dirac","holds":true"#), "{text}");
}

#[test]
fn summary_json_shape() {
    let reg = PropertyRegistry::default();
    let props = reg.select(&["graph6"]).unwrap();
    let summary = run_sweep(&Source::Enumerate { n: 3, allow_large: false }, &props, Oracle::new(14), 1).unwrap();
    assert_eq!(
        serde_json::to_string(&summary).unwrap(),
        r#"{"schema":1,"graphs":8,"properties":[{"property":"graph6","passed":8,"skipped":0,"failed":0}],"failures":0,"counterexamples":[]}"#
    );
}
