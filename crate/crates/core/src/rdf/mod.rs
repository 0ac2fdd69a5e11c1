//! RDF terms, the N-Triples / Turtle-subset readers and the graph abstraction.

pub mod graph;
pub mod lexer;
pub mod parse;
pub mod term;

pub use graph::{Edge, EdgeIdx, Graph, GraphError, NodeId};
pub use parse::{parse_data, to_ntriples, DataError, DataFormat, PrefixMap, TripleSet};
pub use term::{DirectedProperty, Iri, Literal, Term, Triple, Value, RDF_LANG_STRING, XSD, XSD_INTEGER, XSD_STRING};
