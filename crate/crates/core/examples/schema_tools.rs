//! Parse a ShExC schema, check well-definedness, and print it back as ShExC and JSON.

use shexd::schema::{parse_schema, schema_to_json, to_shexc};

fn main() {
    let schema = parse_schema(include_str!("../corpus/running_example.shex")).expect("schema parses");
    schema.check_well_defined().expect("running example is well-defined");
    for label in schema.labels() {
        let negated: Vec<String> = schema.negated_shapes(label).iter().map(|l| l.to_string()).collect();
        println!("<{label}> negates {negated:?}");
    }
    for lint in schema.lints() {
        println!("{lint}");
    }
    println!("{}", to_shexc(&schema));
    println!("{}", schema_to_json(&schema));

    let bad = parse_schema(include_str!("../corpus/negated_cycle.shex")).expect("schema parses");
    match bad.check_well_defined() {
        Ok(()) => println!("unexpectedly well-defined"),
        Err(e) => println!("{e}"),
    }
}
