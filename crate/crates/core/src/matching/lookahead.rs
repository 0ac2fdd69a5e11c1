//! Depth-1 look-ahead: a constraint is dropped from an edge's matching list when
//! one of its positive shape references needs a property the opposite node lacks.

use std::collections::BTreeSet;

use super::local::{CompiledSchema, CompiledShape};
use crate::rdf::{DirectedProperty, Edge, Graph};
use crate::schema::{ShapeExpr, TripleConsumer};

/// Directed properties present in every bag of the expression's language.
pub fn required_properties(expr: &ShapeExpr) -> BTreeSet<DirectedProperty> {
    match expr {
        ShapeExpr::Empty => BTreeSet::new(),
        ShapeExpr::Tc(tc) => BTreeSet::from([tc.prop.clone()]),
        ShapeExpr::Group(es) => es.iter().flat_map(required_properties).collect(),
        ShapeExpr::SomeOf(es) => es
            .iter()
            .map(required_properties)
            .reduce(|a, b| a.intersection(&b).cloned().collect())
            .unwrap_or_default(),
        ShapeExpr::Repeat { expr, min, .. } => {
            if *min >= 1 {
                required_properties(expr)
            } else {
                BTreeSet::new()
            }
        }
    }
}

pub(crate) fn prune(
    list: Vec<TripleConsumer>,
    edge: &Edge,
    shape: &CompiledShape,
    schema: &CompiledSchema,
    graph: &Graph,
) -> Vec<TripleConsumer> {
    list.into_iter()
        .filter(|c| {
            let TripleConsumer::ByConstraint(id) = c else { return true };
            let Some(tc) = shape.tc(*id) else { return true };
            tc.shape_refs().filter(|(_, neg)| !neg).all(|(t, _)| {
                schema.shape(t).is_none_or(|s| {
                    s.required
                        .iter()
                        .all(|p| graph.has_directed_property(edge.target, p))
                })
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::parse_schema;

    #[test]
    fn required_sets() {
        let s = parse_schema(
            "<U> { ((<g> ., <l> .) | <n> .), <a> . * } <T> { <n> ., ^<r> . + } <O> { (<x> . , <y> .)? }",
        )
        .unwrap();
        let req = |l: &str| required_properties(&s.shapes[&l.into()].expr);
        assert!(req("U").is_empty());
        assert_eq!(
            req("T"),
            BTreeSet::from([DirectedProperty::forward("n"), DirectedProperty::inverse("r")])
        );
        assert!(req("O").is_empty());
    }
}
