//! Cross-check flooding against the exhaustive reference search.

use shexd::matching::{CompiledSchema, Sign, Typing};
use shexd::rdf::{parse_data, DataFormat, Graph};
use shexd::schema::parse_schema;
use shexd::validation::{Budget, Validator};

fn main() {
    let schema = CompiledSchema::new(parse_schema(include_str!("../corpus/running_example.shex")).expect("schema parses"));
    let data = parse_data(include_str!("../corpus/running_example.ttl"), DataFormat::TurtleLite).expect("data parses");
    let graph = Graph::build(&data.triples);
    let validator = Validator::new(&graph, &schema).expect("well-defined");
    let budget = Budget {
        max_nodes: 64,
        ..Budget::default()
    };
    for node in graph.nodes().filter(|n| !graph.term(*n).is_literal()) {
        for shape in schema.schema.labels() {
            let t0: Typing = [(node, shape.clone(), Sign::Pos)].into_iter().collect();
            let fast = validator.flooding(&t0).is_ok();
            let slow = validator.reference(&t0, budget).is_ok();
            assert_eq!(fast, slow);
            if fast {
                println!("{} <{shape}>", graph.node_key(node));
            }
        }
    }
}
