//! Depth-1 look-ahead shrinks the candidate space of a hypothesis.

use shexd::matching::CompiledSchema;
use shexd::rdf::{parse_data, DataFormat, Graph, Term};
use shexd::schema::{parse_schema, ShapeLabel};

fn main() {
    let schema = CompiledSchema::new(parse_schema(include_str!("../corpus/running_example.shex")).expect("schema parses"));
    let data = parse_data(include_str!("../corpus/running_example.ttl"), DataFormat::TurtleLite).expect("data parses");
    let graph = Graph::build(&data.triples);
    let issue1 = graph.node(&Term::iri("http://example.org/issue1")).expect("issue1 in graph");
    let shape = ShapeLabel::new("IssueShape");
    for lookahead in [false, true] {
        let c = schema.candidates(&graph, issue1, &shape, lookahead);
        println!("lookahead {lookahead}: {} candidates", c.size());
        for (e, list) in graph.neighbourhood(issue1).iter().zip(c.lists()) {
            let names: Vec<String> = list.iter().map(|c| c.to_string()).collect();
            println!("  {} -> {names:?}", graph.edge(*e).id);
        }
    }
}
