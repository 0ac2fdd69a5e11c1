//! The node/edge abstraction of a triple set: every triple yields a forward
//! edge from its subject and an inverse edge from its object.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::term::{DirectedProperty, Term, Triple, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIdx(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: NodeId,
    pub prop: DirectedProperty,
    pub target: NodeId,
    /// `src|>|prop|tgt` for forward edges, `src|<|prop|tgt` for inverse ones.
    pub id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(String),
}

#[derive(Clone, Debug)]
pub struct Graph {
    terms: Vec<Term>,
    index: HashMap<Term, NodeId>,
    edges: Vec<Edge>,
    /// Outgoing edges of every node, sorted by edge id.
    adjacency: Vec<Vec<EdgeIdx>>,
    inverse: Vec<EdgeIdx>,
    triples: Vec<Triple>,
}

impl Graph {
    pub fn build(triples: &[Triple]) -> Graph {
        let mut g = Graph {
            terms: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            adjacency: Vec::new(),
            inverse: Vec::new(),
            triples: Vec::new(),
        };
        let mut seen = std::collections::HashSet::new();
        for t in triples {
            if !seen.insert(t) {
                continue;
            }
            g.triples.push(t.clone());
            let s = g.intern(&t.subject);
            let o = g.intern(&t.object);
            let fwd = EdgeIdx(g.edges.len());
            let inv = EdgeIdx(g.edges.len() + 1);
            let fwd_prop = DirectedProperty {
                iri: t.predicate.clone(),
                inverse: false,
            };
            let inv_prop = fwd_prop.flipped();
            let fwd_id = edge_key(&g.terms[s.0], &fwd_prop, &g.terms[o.0]);
            let inv_id = edge_key(&g.terms[o.0], &inv_prop, &g.terms[s.0]);
            g.edges.push(Edge {
                source: s,
                prop: fwd_prop,
                target: o,
                id: fwd_id,
            });
            g.edges.push(Edge {
                source: o,
                prop: inv_prop,
                target: s,
                id: inv_id,
            });
            g.inverse.push(inv);
            g.inverse.push(fwd);
            g.adjacency[s.0].push(fwd);
            g.adjacency[o.0].push(inv);
        }
        let edges = &g.edges;
        for adj in &mut g.adjacency {
            adj.sort_by(|a, b| edges[a.0].id.cmp(&edges[b.0].id));
        }
        g
    }

    fn intern(&mut self, term: &Term) -> NodeId {
        if let Some(&id) = self.index.get(term) {
            return id;
        }
        let id = NodeId(self.terms.len());
        self.terms.push(term.clone());
        self.index.insert(term.clone(), id);
        self.adjacency.push(Vec::new());
        id
    }

    pub fn node_count(&self) -> usize {
        self.terms.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.terms.len()).map(NodeId)
    }

    pub fn term(&self, n: NodeId) -> &Term {
        &self.terms[n.0]
    }

    pub fn val(&self, n: NodeId) -> Value {
        self.terms[n.0].value()
    }

    pub fn node(&self, term: &Term) -> Option<NodeId> {
        self.index.get(term).copied()
    }

    /// Canonical key of a node: its N-Triples form.
    pub fn node_key(&self, n: NodeId) -> String {
        self.terms[n.0].to_string()
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeIdx, &Edge)> {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeIdx(i), e))
    }

    pub fn inverse_of(&self, e: EdgeIdx) -> EdgeIdx {
        self.inverse[e.0]
    }

    /// `neigh(node)` in canonical (edge id) order.
    pub fn neighbourhood(&self, n: NodeId) -> &[EdgeIdx] {
        &self.adjacency[n.0]
    }

    pub fn neighbourhood_of(&self, term: &Term) -> Result<&[EdgeIdx], GraphError> {
        self.node(term)
            .map(|n| self.neighbourhood(n))
            .ok_or_else(|| GraphError::UnknownNode(term.to_string()))
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn has_directed_property(&self, n: NodeId, prop: &DirectedProperty) -> bool {
        self.adjacency[n.0]
            .iter()
            .any(|e| &self.edges[e.0].prop == prop)
    }
}

fn edge_key(src: &Term, prop: &DirectedProperty, tgt: &Term) -> String {
    let dir = if prop.inverse { "<" } else { ">" };
    format!("{src}|{dir}|{}|{tgt}", prop.iri)
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}
