mod common;

use std::collections::BTreeMap;

use common::*;
use shexd::matching::Sign::{Neg, Pos};
use shexd::matching::{Sign, Typing};
use shexd::rdf::Graph;
use shexd::validation::{witness_json, Budget, GlobalTypingWitness, Options, Validator};

const IS: &str = "http://example.org/issues/";

fn roots(g: &Graph) -> Typing {
    typing(&[(ex(g, "issue1"), "IssueShape", Pos), (ex(g, "issue2"), "IssueShape", Pos)])
}

fn big() -> Budget {
    Budget {
        max_nodes: 64,
        ..Budget::default()
    }
}

/// Consumer per (opposite node, directed property) in a witness of `node`.
fn consumers(g: &Graph, w: &GlobalTypingWitness, node: &str, shape: &str) -> BTreeMap<(String, String), String> {
    w.lw[&(ex(g, node), label(shape))]
        .iter()
        .map(|(e, c)| {
            let edge = g.edge(*e);
            let target = g.node_key(edge.target);
            let target = target.trim_matches(['<', '>']).trim_start_matches(EX).to_string();
            let prop = edge.prop.to_string().replace(IS, "is:");
            ((target, prop), c.to_string().replace(IS, "is:"))
        })
        .collect()
}

#[test]
fn certain_typing_of_running_example() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example.shex");
    let v = Validator::new(&g, &s).unwrap();
    let c = &v.cert.typing;
    assert!(c.contains(ex(&g, "ren"), &label("TesterShape"), Pos));
    assert!(c.contains(ex(&g, "noa"), &label("ProgrammerShape"), Pos));
    assert!(c.contains(ex(&g, "shristi"), &label("ProgrammerShape"), Pos));
    assert!(c.contains(ex(&g, "fatima"), &label("ClientShape"), Pos));
    assert!(c.contains(ex(&g, "emin"), &label("ClientShape"), Pos));
    assert!(c.contains(ex(&g, "emin"), &label("TesterShape"), Neg));
    assert!(c.contains(ex(&g, "emin"), &label("ProgrammerShape"), Neg));
    assert!(c.contains(ex(&g, "ren"), &label("ProgrammerShape"), Neg));
    assert!(c.contains(ex(&g, "noa"), &label("TesterShape"), Neg));
}

#[test]
fn flooding_witness_of_running_example() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example.shex");
    let v = Validator::new(&g, &s).unwrap();
    let out = v.flooding(&roots(&g)).unwrap();
    v.verify(&out.witness).unwrap();
    let mut positives: Vec<(String, String)> = readable(&g, &out.witness.typing)
        .into_iter()
        .filter(|e| e.2 == Pos)
        .map(|e| (e.0, e.1))
        .collect();
    positives.sort();
    let expected: Vec<(String, String)> = [
        ("emin", "ClientShape"),
        ("emin", "UserShape"),
        ("fatima", "ClientShape"),
        ("fatima", "UserShape"),
        ("issue1", "IssueShape"),
        ("issue2", "IssueShape"),
        ("noa", "ProgrammerShape"),
        ("ren", "TesterShape"),
        ("ren", "UserShape"),
        ("shristi", "ProgrammerShape"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(positives, expected);

    let c = consumers(&g, &out.witness, "issue1", "IssueShape");
    let get = |t: &str, p: &str| c[&(t.to_string(), p.to_string())].clone();
    assert_eq!(get("emin", "is:reproducedBy"), "extra:is:reproducedBy");
    assert_eq!(get("noa", "is:reproducedBy"), "C3");
    assert_eq!(get("ren", "is:reproducedBy"), "C2");
    assert_eq!(get("fatima", "is:reportedBy"), "C1");
    let due: Vec<&String> = c.iter().filter(|(k, _)| k.1 == "is:dueDate").map(|(_, v)| v).collect();
    assert_eq!(due, ["open"]);
    assert_eq!(get("emin", "^is:affectedBy"), "C4");
}

#[test]
fn due_date_literal_key() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example.shex");
    let v = Validator::new(&g, &s).unwrap();
    let out = v.flooding(&roots(&g)).unwrap();
    let json = witness_json::to_json(&out.witness, &g);
    let text = serde_json::to_string(&json).unwrap();
    assert!(text.contains("\"open\""));
    let back = witness_json::from_json(&text, &g, &s.schema).unwrap();
    assert_eq!(back, out.witness);
}

#[test]
fn shristi_variant_uses_c3_for_shristi() {
    let g = graph("running_example_shristi.ttl");
    let s = compiled("running_example.shex");
    let v = Validator::new(&g, &s).unwrap();
    let out = v.flooding(&roots(&g)).unwrap();
    v.verify(&out.witness).unwrap();
    let c = consumers(&g, &out.witness, "issue2", "IssueShape");
    assert_eq!(c[&("ren".into(), "is:reproducedBy".into())], "C2");
    assert_eq!(c[&("shristi".into(), "is:reproducedBy".into())], "C3");
}

#[test]
fn reference_agrees_on_running_example() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example.shex");
    let v = Validator::new(&g, &s).unwrap();
    let out = v.reference(&roots(&g), big()).unwrap();
    v.verify(&out.witness).unwrap();
}

#[test]
fn lookahead_reduces_candidates() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example.shex");
    let issue1 = ex(&g, "issue1");
    assert_eq!(s.candidates(&g, issue1, &label("IssueShape"), false).size(), 27);
    assert_eq!(s.candidates(&g, issue1, &label("IssueShape"), true).size(), 4);
    let v = Validator::new(&g, &s).unwrap().with_options(Options { lookahead: true });
    let a = v.flooding(&roots(&g)).unwrap();
    let b = Validator::new(&g, &s).unwrap().flooding(&roots(&g)).unwrap();
    assert_eq!(a.witness.typing, b.witness.typing);
}

#[test]
fn without_extra_issue1_fails() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example_no_extra.shex");
    let v = Validator::new(&g, &s).unwrap();
    let t0 = typing(&[(ex(&g, "issue1"), "IssueShape", Pos)]);
    let err = v.flooding(&t0).unwrap_err();
    assert!(matches!(err, shexd::validation::ValidateError::Invalid(_)), "{err:?}");
    assert!(v.reference(&t0, big()).is_err());
}

#[test]
fn negative_query_on_certain_label() {
    let g = graph("running_example.ttl");
    let s = compiled("running_example.shex");
    let t0 = typing(&[(ex(&g, "emin"), "TesterShape", Sign::Neg)]);
    let v = Validator::with_negative_queries(&g, &s, &t0).unwrap();
    let out = v.flooding(&t0).unwrap();
    v.verify(&out.witness).unwrap();
    let bad = typing(&[(ex(&g, "ren"), "TesterShape", Sign::Neg)]);
    assert!(matches!(
        v.flooding(&bad),
        Err(shexd::validation::ValidateError::IncompatibleInitialTyping { .. })
    ));
}
