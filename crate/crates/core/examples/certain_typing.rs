//! Compute the certain typing eagerly and on demand.

use shexd::matching::CompiledSchema;
use shexd::rdf::{parse_data, DataFormat, Graph, Term};
use shexd::schema::{parse_schema, ShapeLabel};
use shexd::validation::{CertainOracle, CertainTyping};

fn main() {
    let schema = CompiledSchema::new(parse_schema(include_str!("../corpus/running_example.shex")).expect("schema parses"));
    let data = parse_data(include_str!("../corpus/running_example.ttl"), DataFormat::TurtleLite).expect("data parses");
    let graph = Graph::build(&data.triples);
    let roots = schema.schema.all_negated_shapes();
    let cert = CertainTyping::compute(&graph, &schema, &roots).expect("well-defined");
    for (n, s, sign) in cert.typing.iter() {
        if !graph.term(*n).is_literal() {
            println!("{sign} {} <{s}>", graph.node_key(*n));
        }
    }
    let oracle = CertainOracle::new(&graph, &schema, &roots).expect("well-defined");
    let emin = graph.node(&Term::iri("http://example.org/emin")).expect("emin is in the graph");
    let sign = oracle.decide(emin, &ShapeLabel::new("ProgrammerShape")).expect("small bags");
    println!("on demand: emin ProgrammerShape {sign} ({} facts decided)", oracle.memo_len());
}
