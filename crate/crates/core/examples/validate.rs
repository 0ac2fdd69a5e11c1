//! Validate the running example and print the global typing witness as JSON.

use shexd::matching::{CompiledSchema, Sign, Typing};
use shexd::rdf::{parse_data, DataFormat, Graph, Term};
use shexd::schema::{parse_schema, ShapeLabel};
use shexd::validation::{witness_json, Validator};

fn main() {
    let schema = CompiledSchema::new(parse_schema(include_str!("../corpus/running_example.shex")).expect("schema parses"));
    let data = parse_data(include_str!("../corpus/running_example.ttl"), DataFormat::TurtleLite).expect("data parses");
    let graph = Graph::build(&data.triples);
    let node = |l: &str| graph.node(&Term::iri(format!("http://example.org/{l}"))).expect("node in graph");
    let typing0: Typing = ["issue1", "issue2"]
        .iter()
        .map(|n| (node(n), ShapeLabel::new("IssueShape"), Sign::Pos))
        .collect();
    let validator = Validator::new(&graph, &schema).expect("well-defined");
    match validator.flooding(&typing0) {
        Ok(out) => {
            validator.verify(&out.witness).expect("witness verifies");
            println!("{}", serde_json::to_string_pretty(&witness_json::to_json(&out.witness, &graph)).unwrap());
            eprintln!("{:?}", out.stats);
        }
        Err(e) => println!("invalid: {e}"),
    }
    let query: Typing = [(node("emin"), ShapeLabel::new("ProgrammerShape"), Sign::Pos)].into_iter().collect();
    if let Err(shexd::validation::ValidateError::Invalid(report)) = validator.flooding(&query) {
        print!("{}", report.render(&graph));
    }
}
