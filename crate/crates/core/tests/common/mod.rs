#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;

use shexd::matching::{CompiledSchema, Sign, Typing};
use shexd::rdf::{parse_data, DataFormat, Graph, NodeId, Term};
use shexd::schema::{parse_schema, Schema, ShapeLabel};

pub const EX: &str = "http://example.org/";

pub fn corpus(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn schema(name: &str) -> Schema {
    parse_schema(&corpus(name)).unwrap()
}

pub fn compiled(name: &str) -> CompiledSchema {
    CompiledSchema::new(schema(name))
}

pub fn graph(name: &str) -> Graph {
    Graph::build(&parse_data(&corpus(name), DataFormat::TurtleLite).unwrap().triples)
}

pub fn ex(g: &Graph, local: &str) -> NodeId {
    g.node(&Term::iri(format!("{EX}{local}")))
        .unwrap_or_else(|| panic!("no node ex:{local}"))
}

pub fn label(s: &str) -> ShapeLabel {
    ShapeLabel::new(s)
}

pub fn typing(entries: &[(NodeId, &str, Sign)]) -> Typing {
    entries.iter().map(|(n, s, g)| (*n, label(s), *g)).collect()
}

/// Readable form of a typing: `(local name, shape, sign)`.
pub fn readable(g: &Graph, t: &Typing) -> Vec<(String, String, Sign)> {
    t.iter()
        .map(|(n, s, sign)| {
            let key = g.node_key(*n);
            let key = key.trim_start_matches('<').trim_end_matches('>').trim_start_matches(EX).to_string();
            (key, s.to_string(), *sign)
        })
        .collect()
}
