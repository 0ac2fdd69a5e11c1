//! Certain typing, flooding validation with backtracking, the independent
//! witness checker, and an exhaustive reference validator used as an oracle.

mod certain;
mod flooding;
mod reference;
mod verify;
pub mod witness_json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::matching::{BagTooLarge, CompiledSchema, LocalWitness, Sign, Typing};
use crate::rdf::{Graph, NodeId};
use crate::schema::{ShapeLabel, WellDefinednessError};

pub use certain::{check_gtw_extra, CertainOracle, CertainTyping};
pub use flooding::{to_remove, Stats};
pub use reference::Budget;
pub use verify::VerifyError;

/// A (node, shape) hypothesis.
pub type Hyp = (NodeId, ShapeLabel);

/// A typing plus a local witness for every positive entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlobalTypingWitness {
    pub typing: Typing,
    pub lw: BTreeMap<Hyp, LocalWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedHypothesis {
    pub node: NodeId,
    pub shape: ShapeLabel,
    /// Size of the candidate space that was exhausted.
    pub candidates: u128,
    /// Hypotheses that failed on their own and caused this failure.
    pub leaves: Vec<Hyp>,
    /// Ruled out by the certain typing rather than by search.
    pub certain: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FailureReport {
    pub failed: Vec<FailedHypothesis>,
}

impl FailureReport {
    pub fn render(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for f in &self.failed {
            let why = if f.certain {
                "ruled out by the certain typing".to_string()
            } else {
                format!("{} candidate witnesses exhausted", f.candidates)
            };
            out.push_str(&format!("{} does not satisfy <{}> ({why})\n", graph.node_key(f.node), f.shape));
            for (n, s) in &f.leaves {
                out.push_str(&format!("  caused by: {} does not satisfy <{}>\n", graph.node_key(*n), s));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("validation failed for {} hypothesis(es)", .0.failed.len())]
    Invalid(FailureReport),
    #[error("initial typing conflicts with the certain typing on ({node:?}, <{shape}>)")]
    IncompatibleInitialTyping { node: NodeId, shape: ShapeLabel },
    #[error("negative query on <{0}> is not supported: its dependencies are cyclic")]
    UnsupportedNegativeQuery(ShapeLabel),
    #[error("unknown shape <{0}>")]
    UnknownShape(ShapeLabel),
    #[error(transparent)]
    NotWellDefined(#[from] WellDefinednessError),
    #[error(transparent)]
    BagTooLarge(#[from] BagTooLarge),
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
}

impl ValidateError {
    /// Resource bounds, as opposed to verdicts and input errors.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, ValidateError::BagTooLarge(_) | ValidateError::SearchBudgetExceeded(_))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub lookahead: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub witness: GlobalTypingWitness,
    pub stats: Stats,
}

/// Validation context over an immutable graph and schema with its certain typing.
pub struct Validator<'a> {
    pub graph: &'a Graph,
    pub schema: &'a CompiledSchema,
    pub cert: CertainTyping,
    pub options: Options,
}

impl fmt::Debug for Validator<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Validator")
            .field("options", &self.options)
            .field("cert", &self.cert.typing.len())
            .finish()
    }
}

impl<'a> Validator<'a> {
    /// Refuses schemas that are not well-defined, then computes the certain
    /// typing over every negated shape and its dependencies.
    pub fn new(graph: &'a Graph, schema: &'a CompiledSchema) -> Result<Self, ValidateError> {
        Self::with_negative_queries(graph, schema, &Typing::new())
    }

    /// Like [`Validator::new`], additionally deciding the labels of negative
    /// entries of `typing0` through the certain typing.
    pub fn with_negative_queries(
        graph: &'a Graph,
        schema: &'a CompiledSchema,
        typing0: &Typing,
    ) -> Result<Self, ValidateError> {
        schema.schema.check_well_defined()?;
        for (_, s, _) in typing0.iter() {
            if schema.shape(s).is_none() {
                return Err(ValidateError::UnknownShape(s.clone()));
            }
        }
        let mut roots = schema.schema.all_negated_shapes();
        let extra: BTreeSet<ShapeLabel> = typing0
            .iter()
            .filter(|e| e.2 == Sign::Neg)
            .map(|e| e.1.clone())
            .filter(|s| !roots.contains(s))
            .collect();
        for s in &extra {
            let reach = schema.schema.dependency_closure(&BTreeSet::from([s.clone()]));
            if schema.schema.leaves_first(&reach).is_err() {
                return Err(ValidateError::UnsupportedNegativeQuery(s.clone()));
            }
        }
        roots.extend(extra);
        let cert = CertainTyping::compute(graph, schema, &roots)?;
        Ok(Validator {
            graph,
            schema,
            cert,
            options: Options::default(),
        })
    }

    pub fn with_options(mut self, options: Options) -> Self {
        self.options = options;
        self
    }

    /// Closes the positive entries of `typing0` under propagation, taking each
    /// local witness from `pick` and copying certain proofs for certain facts.
    fn assemble(
        &self,
        typing0: &Typing,
        pick: impl Fn(&Hyp) -> Option<LocalWitness>,
    ) -> GlobalTypingWitness {
        let mut out = GlobalTypingWitness::default();
        let mut stack: Vec<Hyp> = Vec::new();
        for (n, s, sign) in typing0.iter() {
            match sign {
                Sign::Pos => stack.push((*n, s.clone())),
                Sign::Neg => {
                    out.typing.insert(*n, s.clone(), Sign::Neg);
                }
            }
        }
        stack.reverse();
        while let Some(h) = stack.pop() {
            if out.lw.contains_key(&h) {
                continue;
            }
            let w = if self.cert.typing.contains(h.0, &h.1, Sign::Pos) {
                self.cert.lw[&h].clone()
            } else {
                pick(&h).expect("every reached hypothesis has a witness")
            };
            out.typing.insert(h.0, h.1.clone(), Sign::Pos);
            for (m, t, sign) in self.schema.propagation(self.graph, &h.1, &w).iter() {
                match sign {
                    Sign::Pos => stack.push((*m, t.clone())),
                    Sign::Neg => {
                        out.typing.insert(*m, t.clone(), Sign::Neg);
                    }
                }
            }
            out.lw.insert(h, w);
        }
        out
    }

    /// Checks negative entries of `typing0` against the certain typing.
    /// Positive entries that are certainly false fail later as ordinary
    /// hypotheses, so they show up in the failure report.
    fn check_initial(&self, typing0: &Typing) -> Result<(), ValidateError> {
        for (n, s, sign) in typing0.iter() {
            if *sign == Sign::Pos {
                continue;
            }
            if !self.cert.decides(s) {
                return Err(ValidateError::UnsupportedNegativeQuery(s.clone()));
            }
            if self.cert.typing.contains(*n, s, Sign::Pos) {
                return Err(ValidateError::IncompatibleInitialTyping {
                    node: *n,
                    shape: s.clone(),
                });
            }
        }
        Ok(())
    }
}
