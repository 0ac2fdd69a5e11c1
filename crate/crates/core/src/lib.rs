//! Shape Expressions validation over RDF graphs.
//!
//! The crate parses ShExC schemas and RDF data, decides whether nodes satisfy
//! shapes, emits a global typing witness that an independent checker can
//! verify, and explores minimal repairs of small invalid graphs.

pub mod rdf;
pub mod schema;
pub mod matching;
pub mod validation;
pub mod repair;
pub mod cli;
