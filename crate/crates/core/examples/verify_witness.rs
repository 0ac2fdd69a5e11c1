//! Check a witness independently, then show that a tampered one is rejected.

use shexd::matching::{CompiledSchema, Sign, Typing};
use shexd::rdf::{parse_data, DataFormat, Graph, Term};
use shexd::schema::{parse_schema, ShapeLabel, TripleConsumer};
use shexd::validation::{witness_json, Validator};

fn main() {
    let schema = CompiledSchema::new(parse_schema(include_str!("../corpus/running_example.shex")).expect("schema parses"));
    let data = parse_data(include_str!("../corpus/running_example.ttl"), DataFormat::TurtleLite).expect("data parses");
    let graph = Graph::build(&data.triples);
    let issue1 = graph.node(&Term::iri("http://example.org/issue1")).expect("issue1 in graph");
    let typing0: Typing = [(issue1, ShapeLabel::new("IssueShape"), Sign::Pos)].into_iter().collect();
    let validator = Validator::new(&graph, &schema).expect("well-defined");
    let witness = validator.flooding(&typing0).expect("issue1 is valid").witness;

    // Round trip through JSON, as a consumer of the witness file would.
    let text = witness_json::to_json(&witness, &graph).to_string();
    let read = witness_json::from_json(&text, &graph, &schema.schema).expect("witness JSON reads back");
    println!("round trip verifies: {:?}", validator.verify(&read));

    let mut tampered = read.clone();
    let lw = tampered.lw.get_mut(&(issue1, ShapeLabel::new("IssueShape"))).expect("issue1 witness");
    for (_, c) in lw.0.iter_mut() {
        if matches!(c, TripleConsumer::Extra(_)) {
            *c = TripleConsumer::Open;
        }
    }
    println!("tampered: {:?}", validator.verify(&tampered));
}
