//! Abstract syntax of shape expression schemas and the analyses defined on it:
//! dependency graph, negated shapes, well-definedness and triple consumers.

mod analysis;
pub mod json;
pub mod parser;
pub mod writer;

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::rdf::{DirectedProperty, Iri, PrefixMap, Value};

pub use analysis::{Lint, WellDefinednessError};
pub use json::{json_to_schema, schema_to_json, SchemaJsonError};
pub use parser::{parse_schema, SchemaError};
pub use writer::to_shexc;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShapeLabel(Arc<str>);

impl ShapeLabel {
    pub fn new(s: impl AsRef<str>) -> Self {
        ShapeLabel(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ShapeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for ShapeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl From<&str> for ShapeLabel {
    fn from(s: &str) -> Self {
        ShapeLabel::new(s)
    }
}

/// Occurrence id of a triple constraint within its shape, displayed `C1`, `C2`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TcId(pub u32);

impl fmt::Display for TcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Iri,
    BNode,
    Literal,
    NonLiteral,
}

impl NodeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            NodeKind::Iri => "IRI",
            NodeKind::BNode => "BNode",
            NodeKind::Literal => "Literal",
            NodeKind::NonLiteral => "NonLiteral",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "IRI" => Some(NodeKind::Iri),
            "BNode" => Some(NodeKind::BNode),
            "Literal" => Some(NodeKind::Literal),
            "NonLiteral" => Some(NodeKind::NonLiteral),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValueSet {
    /// Explicit members; `Value::Blank` stands for every blank node.
    Values(Vec<Value>),
    Datatype(Iri),
    NodeKind(NodeKind),
}

impl ValueSet {
    pub fn contains(&self, v: &Value) -> bool {
        match self {
            ValueSet::Values(members) => members.contains(v),
            ValueSet::Datatype(dt) => matches!(v, Value::Literal(l) if &l.datatype == dt),
            ValueSet::NodeKind(k) => matches!(
                (k, v),
                (NodeKind::Iri, Value::Iri(_))
                    | (NodeKind::BNode, Value::Blank)
                    | (NodeKind::Literal, Value::Literal(_))
                    | (NodeKind::NonLiteral, Value::Iri(_) | Value::Blank)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomicConstr {
    ValueSet(ValueSet),
    Shape { label: ShapeLabel, negated: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleConstraint {
    pub id: TcId,
    pub prop: DirectedProperty,
    /// Conjuncts of the value class; empty means any value.
    pub value_class: Vec<AtomicConstr>,
}

impl TripleConstraint {
    pub fn shape_refs(&self) -> impl Iterator<Item = (&ShapeLabel, bool)> {
        self.value_class.iter().filter_map(|a| match a {
            AtomicConstr::Shape { label, negated } => Some((label, *negated)),
            AtomicConstr::ValueSet(_) => None,
        })
    }

    pub fn value_sets(&self) -> impl Iterator<Item = &ValueSet> {
        self.value_class.iter().filter_map(|a| match a {
            AtomicConstr::ValueSet(v) => Some(v),
            AtomicConstr::Shape { .. } => None,
        })
    }

    pub fn only_value_sets(&self) -> bool {
        self.shape_refs().next().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShapeExpr {
    Empty,
    Tc(TripleConstraint),
    SomeOf(Vec<ShapeExpr>),
    Group(Vec<ShapeExpr>),
    /// `max: None` is unbounded.
    Repeat {
        expr: Box<ShapeExpr>,
        min: u32,
        max: Option<u32>,
    },
}

impl ShapeExpr {
    pub fn repeat(expr: ShapeExpr, min: u32, max: Option<u32>) -> Self {
        ShapeExpr::Repeat {
            expr: Box::new(expr),
            min,
            max,
        }
    }

    /// Triple constraints in pre-order (source order for parsed schemas).
    pub fn tcs(&self) -> Vec<&TripleConstraint> {
        let mut out = Vec::new();
        self.collect_tcs(&mut out);
        out
    }

    fn collect_tcs<'a>(&'a self, out: &mut Vec<&'a TripleConstraint>) {
        match self {
            ShapeExpr::Empty => {}
            ShapeExpr::Tc(tc) => out.push(tc),
            ShapeExpr::SomeOf(es) | ShapeExpr::Group(es) => {
                es.iter().for_each(|e| e.collect_tcs(out))
            }
            ShapeExpr::Repeat { expr, .. } => expr.collect_tcs(out),
        }
    }

    /// Whether the empty bag belongs to the language of the expression.
    pub fn nullable(&self) -> bool {
        match self {
            ShapeExpr::Empty => true,
            ShapeExpr::Tc(_) => false,
            ShapeExpr::SomeOf(es) => es.iter().any(|e| e.nullable()),
            ShapeExpr::Group(es) => es.iter().all(|e| e.nullable()),
            ShapeExpr::Repeat { expr, min, .. } => *min == 0 || expr.nullable(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeDef {
    pub closed: bool,
    pub closed_inv: bool,
    pub extra: BTreeSet<DirectedProperty>,
    pub expr: ShapeExpr,
}

impl ShapeDef {
    pub fn new(expr: ShapeExpr) -> Self {
        ShapeDef {
            closed: false,
            closed_inv: false,
            extra: BTreeSet::new(),
            expr,
        }
    }

    pub fn tcs(&self) -> Vec<&TripleConstraint> {
        self.expr.tcs()
    }

    pub fn tc(&self, id: TcId) -> Option<&TripleConstraint> {
        self.tcs().into_iter().find(|tc| tc.id == id)
    }

    /// The alphabet of local witnesses: one consumer per triple constraint,
    /// one per extra property, and the open consumer.
    pub fn triple_consumers(&self) -> Vec<TripleConsumer> {
        let mut out: Vec<TripleConsumer> = self
            .tcs()
            .iter()
            .map(|tc| TripleConsumer::ByConstraint(tc.id))
            .collect();
        out.sort();
        out.extend(self.extra.iter().cloned().map(TripleConsumer::Extra));
        out.push(TripleConsumer::Open);
        out
    }

    /// Directed properties that some triple constraint or the extra set mentions.
    pub fn mentioned_properties(&self) -> BTreeSet<DirectedProperty> {
        let mut out: BTreeSet<DirectedProperty> =
            self.tcs().into_iter().map(|tc| tc.prop.clone()).collect();
        out.extend(self.extra.iter().cloned());
        out
    }
}

/// The role an edge plays in a local witness.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TripleConsumer {
    ByConstraint(TcId),
    Extra(DirectedProperty),
    Open,
}

impl fmt::Display for TripleConsumer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleConsumer::ByConstraint(id) => write!(f, "{id}"),
            TripleConsumer::Extra(q) => write!(f, "extra:{q}"),
            TripleConsumer::Open => f.write_str("open"),
        }
    }
}

impl TripleConsumer {
    /// Inverse of `Display`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "open" {
            return Some(TripleConsumer::Open);
        }
        if let Some(q) = s.strip_prefix("extra:") {
            return Some(TripleConsumer::Extra(DirectedProperty::parse_display(q)));
        }
        let n = s.strip_prefix('C')?.parse().ok()?;
        Some(TripleConsumer::ByConstraint(TcId(n)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schema {
    pub shapes: BTreeMap<ShapeLabel, ShapeDef>,
    /// Prefixes declared in the source, kept for output and CLI name resolution.
    pub prefixes: PrefixMap,
}

impl Schema {
    pub fn shape(&self, label: &ShapeLabel) -> Option<&ShapeDef> {
        self.shapes.get(label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &ShapeLabel> {
        self.shapes.keys()
    }

    /// Resolves a user-supplied label: `<L>`, a prefixed name or the bare text.
    pub fn resolve_label(&self, s: &str) -> Option<ShapeLabel> {
        let s = s.trim();
        let bare = s
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .unwrap_or(s);
        let direct = ShapeLabel::new(bare);
        if self.shapes.contains_key(&direct) {
            return Some(direct);
        }
        let (prefix, local) = bare.split_once(':')?;
        let ns = self.prefixes.get(prefix)?;
        let expanded = ShapeLabel::new(format!("{ns}{local}"));
        self.shapes.contains_key(&expanded).then_some(expanded)
    }
}
