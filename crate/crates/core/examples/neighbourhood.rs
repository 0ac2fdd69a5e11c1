//! Build the node/edge view of a Turtle document and list a neighbourhood.

use shexd::rdf::{parse_data, DataFormat, Graph, Term};

fn main() {
    let data = parse_data(include_str!("../corpus/running_example.ttl"), DataFormat::TurtleLite).expect("data parses");
    let graph = Graph::build(&data.triples);
    println!("{} triples, {} nodes, {} edges", data.len(), graph.node_count(), graph.edge_count());
    let issue1 = Term::iri("http://example.org/issue1");
    for &e in graph.neighbourhood_of(&issue1).expect("issue1 is in the graph") {
        println!("{}", graph.edge(e).id);
    }
}
