use std::collections::{BTreeMap, BTreeSet};

use super::brute::{brute_match, BagTooLarge, DEFAULT_BAG_BOUND};
use super::interval::{check_interval_form, interval_matches};
use super::lookahead::{prune, required_properties};
use super::unfold::unfold_repetitions;
use super::{Bag, Candidates, Sign, Typing};
use crate::rdf::{DirectedProperty, Edge, EdgeIdx, Graph, NodeId, Value};
use crate::schema::{Schema, ShapeDef, ShapeExpr, ShapeLabel, TcId, TripleConstraint, TripleConsumer, ValueSet};

/// A total map from the neighbourhood of a node to triple consumers, stored in
/// the canonical edge order of the neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalWitness(pub Vec<(EdgeIdx, TripleConsumer)>);

impl LocalWitness {
    pub fn get(&self, e: EdgeIdx) -> Option<&TripleConsumer> {
        self.0.iter().find(|(x, _)| *x == e).map(|(_, c)| c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(EdgeIdx, TripleConsumer)> {
        self.0.iter()
    }

    /// Counts of edges per triple constraint.
    pub fn bag(&self) -> Bag {
        let mut bag = Bag::new();
        for (_, c) in &self.0 {
            if let TripleConsumer::ByConstraint(id) = c {
                *bag.entry(*id).or_insert(0) += 1;
            }
        }
        bag
    }
}

pub fn value_satisfies(value: &Value, vs: &ValueSet) -> bool {
    vs.contains(value)
}

/// How the expression part of a local witness is decided.
#[derive(Clone, Debug)]
pub enum Strategy {
    /// The unfolded expression is single-occurrence: interval algorithm.
    Interval(ShapeExpr),
    /// Exhaustive matching on the original expression.
    Brute,
}

#[derive(Clone, Debug)]
pub struct CompiledShape {
    pub label: ShapeLabel,
    pub def: ShapeDef,
    tcs: BTreeMap<TcId, TripleConstraint>,
    mentioned: BTreeSet<DirectedProperty>,
    pub strategy: Strategy,
    /// Directed properties every satisfying node must carry.
    pub required: BTreeSet<DirectedProperty>,
}

impl CompiledShape {
    pub fn new(label: ShapeLabel, def: ShapeDef) -> Self {
        let tcs = def.tcs().into_iter().map(|tc| (tc.id, tc.clone())).collect();
        let unfolded = unfold_repetitions(&def.expr);
        let strategy = match check_interval_form(&unfolded) {
            Ok(()) => Strategy::Interval(unfolded),
            Err(_) => Strategy::Brute,
        };
        CompiledShape {
            mentioned: def.mentioned_properties(),
            required: required_properties(&def.expr),
            label,
            tcs,
            strategy,
            def,
        }
    }

    pub fn tc(&self, id: TcId) -> Option<&TripleConstraint> {
        self.tcs.get(&id)
    }

    pub fn tcs(&self) -> impl Iterator<Item = &TripleConstraint> {
        self.tcs.values()
    }

    pub fn mentions(&self, q: &DirectedProperty) -> bool {
        self.mentioned.contains(q)
    }
}

fn tc_matches(tc: &TripleConstraint, edge: &Edge, graph: &Graph) -> bool {
    tc.prop == edge.prop && {
        let v = graph.val(edge.target);
        tc.value_sets().all(|vs| vs.contains(&v))
    }
}

/// Whether `edge` matches an Extra or ByConstraint consumer. Shape conjuncts are
/// not checked here; they are handled by propagation.
pub fn edge_matches(edge: &Edge, consumer: &TripleConsumer, shape: &CompiledShape, graph: &Graph) -> bool {
    match consumer {
        TripleConsumer::Extra(q) => shape.def.extra.contains(q) && *q == edge.prop,
        TripleConsumer::ByConstraint(id) => shape.tc(*id).is_some_and(|tc| tc_matches(tc, edge, graph)),
        TripleConsumer::Open => false,
    }
}

/// `[Open]` for properties the shape never mentions, otherwise the matching
/// constraints in id order followed by the extra consumer.
pub fn matching_consumers(edge: &Edge, shape: &CompiledShape, graph: &Graph) -> Vec<TripleConsumer> {
    if !shape.mentions(&edge.prop) {
        return vec![TripleConsumer::Open];
    }
    let mut out: Vec<TripleConsumer> = shape
        .tcs()
        .filter(|tc| tc_matches(tc, edge, graph))
        .map(|tc| TripleConsumer::ByConstraint(tc.id))
        .collect();
    if shape.def.extra.contains(&edge.prop) {
        out.push(TripleConsumer::Extra(edge.prop.clone()));
    }
    out
}

/// A schema prepared for matching: every shape compiled once.
#[derive(Clone, Debug)]
pub struct CompiledSchema {
    pub schema: Schema,
    shapes: BTreeMap<ShapeLabel, CompiledShape>,
    pub bag_bound: usize,
}

impl CompiledSchema {
    pub fn new(schema: Schema) -> Self {
        let shapes = schema
            .shapes
            .iter()
            .map(|(l, d)| (l.clone(), CompiledShape::new(l.clone(), d.clone())))
            .collect();
        CompiledSchema {
            schema,
            shapes,
            bag_bound: DEFAULT_BAG_BOUND,
        }
    }

    pub fn with_bag_bound(mut self, bound: usize) -> Self {
        self.bag_bound = bound;
        self
    }

    pub fn shape(&self, label: &ShapeLabel) -> Option<&CompiledShape> {
        self.shapes.get(label)
    }

    pub fn shapes(&self) -> impl Iterator<Item = &CompiledShape> {
        self.shapes.values()
    }

    fn expect(&self, label: &ShapeLabel) -> &CompiledShape {
        self.shapes
            .get(label)
            .unwrap_or_else(|| panic!("shape <{label}> is not in the schema"))
    }

    /// Matching consumer lists for the neighbourhood of `node`, optionally
    /// pruned by depth-1 look-ahead.
    pub fn consumer_lists(&self, graph: &Graph, node: NodeId, label: &ShapeLabel, lookahead: bool) -> Vec<Vec<TripleConsumer>> {
        let shape = self.expect(label);
        graph
            .neighbourhood(node)
            .iter()
            .map(|&e| {
                let edge = graph.edge(e);
                let list = matching_consumers(edge, shape, graph);
                if lookahead {
                    prune(list, edge, shape, self, graph)
                } else {
                    list
                }
            })
            .collect()
    }

    pub fn candidates(&self, graph: &Graph, node: NodeId, label: &ShapeLabel, lookahead: bool) -> Candidates {
        Candidates::new(
            graph.neighbourhood(node).to_vec(),
            self.consumer_lists(graph, node, label, lookahead),
        )
    }

    /// The local witness definition: consumer matching, the extra restriction,
    /// open only for unmentioned properties, closedness, and the expression.
    pub fn check_local_witness(
        &self,
        graph: &Graph,
        node: NodeId,
        label: &ShapeLabel,
        w: &LocalWitness,
    ) -> Result<bool, BagTooLarge> {
        let shape = self.expect(label);
        let neigh = graph.neighbourhood(node);
        if neigh.len() != w.0.len() || neigh.iter().zip(&w.0).any(|(e, (x, _))| e != x) {
            return Ok(false);
        }
        for (e, c) in &w.0 {
            let edge = graph.edge(*e);
            let ok = match c {
                TripleConsumer::ByConstraint(_) => edge_matches(edge, c, shape, graph),
                TripleConsumer::Extra(_) => {
                    edge_matches(edge, c, shape, graph)
                        && !shape
                            .tcs()
                            .any(|tc| tc.only_value_sets() && tc_matches(tc, edge, graph))
                }
                TripleConsumer::Open => {
                    !shape.mentions(&edge.prop)
                        && !(edge.prop.inverse && shape.def.closed_inv)
                        && !(!edge.prop.inverse && shape.def.closed)
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        let bag = w.bag();
        match &shape.strategy {
            Strategy::Interval(unfolded) => {
                Ok(interval_matches(unfolded, &bag).expect("interval form checked at compile time"))
            }
            Strategy::Brute => brute_match(&shape.def.expr, &bag, self.bag_bound),
        }
    }

    /// Shape requirements a witness imposes on the opposite nodes of its
    /// constraint-consumed edges.
    pub fn propagation(&self, graph: &Graph, label: &ShapeLabel, w: &LocalWitness) -> Typing {
        let shape = self.expect(label);
        let mut out = Typing::new();
        for (e, c) in &w.0 {
            if let TripleConsumer::ByConstraint(id) = c {
                let Some(tc) = shape.tc(*id) else { continue };
                let target = graph.edge(*e).target;
                for (t, negated) in tc.shape_refs() {
                    out.insert(target, t.clone(), if negated { Sign::Neg } else { Sign::Pos });
                }
            }
        }
        out
    }
}
