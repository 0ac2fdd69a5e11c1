//! Minimal repairs of the two small invalid graphs.

use shexd::matching::{CompiledSchema, Sign};
use shexd::rdf::{parse_data, DataFormat, Term};
use shexd::repair::{enumerate_repairs, RepairBudget, TermTyping};
use shexd::schema::{parse_schema, ShapeLabel};

fn run(schema: &str, data: &str, typing0: &[(&str, &str)]) {
    let schema = CompiledSchema::new(parse_schema(schema).expect("schema parses"));
    let triples = parse_data(data, DataFormat::TurtleLite).expect("data parses").triples;
    let typing0: TermTyping = typing0
        .iter()
        .map(|(n, s)| (Term::iri(format!("http://example.org/{n}")), ShapeLabel::new(*s), Sign::Pos))
        .collect();
    let budget = RepairBudget {
        max_edits: 2,
        ..RepairBudget::default()
    };
    let report = enumerate_repairs(&triples, &schema, &typing0, budget).expect("within budget");
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
}

fn main() {
    let issues = include_str!("../corpus/running_example.shex");
    run(issues, include_str!("../corpus/repair_issue.ttl"), &[("issue", "IssueShape")]);
    let boolean = include_str!("../corpus/repair_boolean.shex");
    let data = include_str!("../corpus/repair_boolean.ttl");
    run(boolean, data, &[("term", "Term"), ("vars", "Vars")]);
}
