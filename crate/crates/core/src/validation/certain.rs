//! The certain typing: every node decided against every negated shape (and the
//! shapes those depend on), leaves of the dependency order first.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

use super::{Hyp, ValidateError};
use crate::matching::{BagTooLarge, CompiledSchema, LocalWitness, Sign, Typing};
use crate::rdf::{Graph, NodeId};
use crate::schema::{AtomicConstr, ShapeLabel, TripleConsumer};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertainTyping {
    /// Labels decided for every node.
    pub labels: BTreeSet<ShapeLabel>,
    pub typing: Typing,
    pub lw: BTreeMap<Hyp, LocalWitness>,
}

impl CertainTyping {
    /// Decides all nodes against `roots` and everything they depend on. The
    /// reachable dependency graph must be acyclic.
    pub fn compute(
        graph: &Graph,
        schema: &CompiledSchema,
        roots: &BTreeSet<ShapeLabel>,
    ) -> Result<Self, ValidateError> {
        let labels = schema.schema.dependency_closure(roots);
        let order = schema.schema.leaves_first(&labels).map_err(|cycle| {
            ValidateError::NotWellDefined(crate::schema::WellDefinednessError {
                label: cycle[0].clone(),
                cycle,
            })
        })?;
        let mut cert = CertainTyping {
            labels,
            ..CertainTyping::default()
        };
        for label in &order {
            for node in graph.nodes() {
                let found = first_certain_witness(graph, schema, node, label, |m, t| cert.typing.sign_of(m, t))?;
                match found {
                    Some(w) => {
                        cert.typing.insert(node, label.clone(), Sign::Pos);
                        cert.lw.insert((node, label.clone()), w);
                    }
                    None => {
                        cert.typing.insert(node, label.clone(), Sign::Neg);
                    }
                }
            }
        }
        Ok(cert)
    }

    pub fn decides(&self, label: &ShapeLabel) -> bool {
        self.labels.contains(label)
    }

    pub fn sign_of(&self, node: NodeId, label: &ShapeLabel) -> Option<Sign> {
        self.typing.sign_of(node, label)
    }
}

/// First candidate (in canonical order) that is a local witness, satisfies the
/// extra condition and whose propagation agrees with `decided`.
fn first_certain_witness(
    graph: &Graph,
    schema: &CompiledSchema,
    node: NodeId,
    label: &ShapeLabel,
    decided: impl Fn(NodeId, &ShapeLabel) -> Option<Sign>,
) -> Result<Option<LocalWitness>, BagTooLarge> {
    for w in schema.candidates(graph, node, label, false) {
        if !schema.check_local_witness(graph, node, label, &w)? {
            continue;
        }
        if !gtw_extra_with(graph, schema, label, &w, &decided) {
            continue;
        }
        let prop = schema.propagation(graph, label, &w);
        if prop.iter().all(|(m, t, s)| decided(*m, t) == Some(*s)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The extra condition: an edge given to Extra(q) must violate some conjunct of
/// every constraint on q, a value set by membership, a shape reference by the
/// opposite sign in the certain typing.
pub fn check_gtw_extra(
    graph: &Graph,
    schema: &CompiledSchema,
    label: &ShapeLabel,
    w: &LocalWitness,
    cert: &CertainTyping,
) -> bool {
    gtw_extra_with(graph, schema, label, w, &|n, t| cert.sign_of(n, t))
}

fn gtw_extra_with(
    graph: &Graph,
    schema: &CompiledSchema,
    label: &ShapeLabel,
    w: &LocalWitness,
    decided: &dyn Fn(NodeId, &ShapeLabel) -> Option<Sign>,
) -> bool {
    let Some(shape) = schema.shape(label) else {
        return false;
    };
    w.iter().all(|(e, c)| {
        let TripleConsumer::Extra(q) = c else { return true };
        let edge = graph.edge(*e);
        let v = graph.val(edge.target);
        shape.tcs().filter(|tc| &tc.prop == q).all(|tc| {
            tc.value_class.iter().any(|a| match a {
                AtomicConstr::ValueSet(vs) => !vs.contains(&v),
                AtomicConstr::Shape { label: t, negated } => {
                    let violated = if *negated { Sign::Pos } else { Sign::Neg };
                    decided(edge.target, t) == Some(violated)
                }
            })
        })
    })
}

/// On-demand certain typing: decides single (node, label) queries recursively
/// and memoizes them. Safe to share between threads.
pub struct CertainOracle<'a> {
    graph: &'a Graph,
    schema: &'a CompiledSchema,
    labels: BTreeSet<ShapeLabel>,
    memo: RwLock<HashMap<Hyp, (Sign, Option<LocalWitness>)>>,
}

impl<'a> CertainOracle<'a> {
    /// `roots` and their dependencies must span an acyclic dependency graph.
    pub fn new(
        graph: &'a Graph,
        schema: &'a CompiledSchema,
        roots: &BTreeSet<ShapeLabel>,
    ) -> Result<Self, ValidateError> {
        let labels = schema.schema.dependency_closure(roots);
        if let Err(cycle) = schema.schema.leaves_first(&labels) {
            return Err(ValidateError::NotWellDefined(crate::schema::WellDefinednessError {
                label: cycle[0].clone(),
                cycle,
            }));
        }
        Ok(CertainOracle {
            graph,
            schema,
            labels,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn decide(&self, node: NodeId, label: &ShapeLabel) -> Result<Sign, BagTooLarge> {
        assert!(self.labels.contains(label), "<{label}> is not decided by the certain typing");
        let key = (node, label.clone());
        if let Some((s, _)) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(*s);
        }
        // Dependencies are acyclic, so the recursion below terminates; it runs
        // without holding the lock.
        let failure = std::cell::RefCell::new(None);
        let decided = |m: NodeId, t: &ShapeLabel| match self.decide(m, t) {
            Ok(s) => Some(s),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                None
            }
        };
        let w = first_certain_witness(self.graph, self.schema, node, label, decided)?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        let sign = if w.is_some() { Sign::Pos } else { Sign::Neg };
        self.memo.write().expect("memo lock").insert(key, (sign, w));
        Ok(sign)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// Decides every node against every label and returns the result in the
    /// eager form.
    pub fn materialize(&self) -> Result<CertainTyping, BagTooLarge> {
        let mut out = CertainTyping {
            labels: self.labels.clone(),
            ..CertainTyping::default()
        };
        for label in &self.labels {
            for node in self.graph.nodes() {
                out.typing.insert(node, label.clone(), self.decide(node, label)?);
            }
        }
        let memo = self.memo.read().expect("memo lock");
        for (k, (_, w)) in memo.iter() {
            if let Some(w) = w {
                out.lw.insert(k.clone(), w.clone());
            }
        }
        Ok(out)
    }
}
