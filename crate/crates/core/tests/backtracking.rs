mod common;

use common::*;
use shexd::matching::Sign::Pos;
use shexd::matching::CompiledSchema;
use shexd::rdf::{parse_data, DataFormat, Graph};
use shexd::schema::parse_schema;
use shexd::validation::{Budget, ValidateError, Validator};

const PRE: &str = "PREFIX ex: <http://example.org/>\n";
const DPRE: &str = "@prefix ex: <http://example.org/> .\n";

fn setup(schema: &str, data: &str) -> (CompiledSchema, Graph) {
    let s = CompiledSchema::new(parse_schema(&format!("{PRE}{schema}")).unwrap());
    let g = Graph::build(&parse_data(&format!("{DPRE}{data}"), DataFormat::TurtleLite).unwrap().triples);
    (s, g)
}

#[test]
fn failed_requirement_moves_requirer_to_next_candidate() {
    let (s, g) = setup(
        "<A> { ex:p @<B> | ex:p @<C> } <B> { ex:q . } <C> { ex:r . }",
        "ex:a ex:p ex:b . ex:b ex:r ex:c .",
    );
    let v = Validator::new(&g, &s).unwrap();
    let t0 = typing(&[(ex(&g, "a"), "A", Pos)]);
    let out = v.flooding(&t0).unwrap();
    assert!(out.stats.invalidations >= 1);
    assert!(out.witness.typing.contains(ex(&g, "b"), &label("C"), Pos));
    assert!(!out.witness.typing.contains(ex(&g, "b"), &label("B"), Pos));
    v.verify(&out.witness).unwrap();
    v.reference(&t0, Budget::default()).unwrap();
}

#[test]
fn failure_report_points_at_the_leaf() {
    let (s, g) = setup(
        "<A> { ex:p @<B> } <B> { ex:p @<C> } <C> { ex:q . }",
        "ex:a ex:p ex:b . ex:b ex:p ex:c . ex:c ex:r ex:d .",
    );
    let v = Validator::new(&g, &s).unwrap();
    let t0 = typing(&[(ex(&g, "a"), "A", Pos)]);
    let Err(ValidateError::Invalid(report)) = v.flooding(&t0) else {
        panic!("expected a failure")
    };
    assert_eq!(report.failed.len(), 1);
    assert_eq!(report.failed[0].node, ex(&g, "a"));
    assert_eq!(report.failed[0].leaves, vec![(ex(&g, "c"), label("C"))]);
    assert!(report.render(&g).contains("caused by: <http://example.org/c> does not satisfy <C>"));
    assert!(v.reference(&t0, Budget::default()).is_err());
}

#[test]
fn cyclic_positive_references_are_satisfiable() {
    let (s, g) = setup(
        "<A> { ex:p @<A> * , ex:q . }",
        "ex:a ex:p ex:b ; ex:q ex:x . ex:b ex:p ex:a ; ex:q ex:y .",
    );
    let v = Validator::new(&g, &s).unwrap();
    let t0 = typing(&[(ex(&g, "a"), "A", Pos)]);
    let out = v.flooding(&t0).unwrap();
    assert!(out.witness.typing.contains(ex(&g, "b"), &label("A"), Pos));
    v.reference(&t0, Budget::default()).unwrap();
}

#[test]
fn shared_requirement_failure_invalidates_every_requirer() {
    let (s, g) = setup(
        "<A> { ex:p @<B> | ex:p . } <B> { ex:q . } <R> { ex:r @<A> + }",
        "ex:r ex:r ex:a1, ex:a2 . ex:a1 ex:p ex:b . ex:a2 ex:p ex:b .",
    );
    let v = Validator::new(&g, &s).unwrap();
    let t0 = typing(&[(ex(&g, "r"), "R", Pos)]);
    let out = v.flooding(&t0).unwrap();
    assert!(out.stats.invalidations >= 2, "{:?}", out.stats);
    v.verify(&out.witness).unwrap();
}
